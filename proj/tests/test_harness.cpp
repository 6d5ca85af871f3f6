#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "ppsched/config_io.hpp"
#include "ppsched/experiment.hpp"
#include "ppsched/metrics.hpp"
#include "ppsched/online.hpp"
#include "ppsched/workload.hpp"

using namespace ppsched;
using ppsched::test::make_job;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentSpec small_spec() {
    ExperimentSpec s = ExperimentSpec::preset(ExperimentId::exp1);
    s.gen.T = 12;
    s.sweep_values = {2, 4};
    s.distributions = {ArrivalDist::normal, ArrivalDist::constant};
    s.repeats = 3;
    s.baselines = {BaselineKind::edf, BaselineKind::dynalloc};
    s.threads = 2;
    return s;
}

}  // namespace

TEST_CASE("revenue") {
    const auto cat = InstanceCatalog({{0, 5.0, 1.0}});
    Eigen::MatrixXi r = Eigen::MatrixXi::Zero(1, 4);
    r(0, 1) = 10;  // cost 50
    const std::vector<Money> pays{100, 80};
    CHECK(revenue(pays, r, cat) == 130.0);
    CHECK(revenue({}, Eigen::MatrixXi::Zero(1, 4), cat) == 0.0);
    r(0, 1) = 6;  // cost 30
    const std::vector<Money> one{10};
    CHECK(revenue(one, r, cat) == -20.0);
}

TEST_CASE("satisfaction") {
    CHECK(satisfaction(3, 10) == doctest::Approx(0.3));
    CHECK(satisfaction(10, 10) == 1.0);
    CHECK(satisfaction(0, 10) == 0.0);
    CHECK(satisfaction(0, 0) == 0.0);
}

TEST_CASE("aggregated objective") {
    CHECK(aggregated(130, 200, 0.3, 0.5) == doctest::Approx(0.475));
    CHECK(aggregated(130, 200, 0.3, 1.0) == doctest::Approx(130.0 / 200.0));
    CHECK(aggregated(130, 200, 0.3, 0.0) == doctest::Approx(0.3));
}

TEST_CASE("rho and delta") {
    const std::vector<Job> jobs{make_job(1, 1, 3, {1}, 1, {60, 20}), make_job(2, 1, 3, {1}, 1, {40, 30})};
    const RhoDelta rd = estimate_rho_delta(jobs, 10.0);
    CHECK(rd.rho == doctest::Approx(5.0));
    CHECK(rd.delta == doctest::Approx(10.0));
    CHECK(rd.delta >= rd.rho);

    const std::vector<Job> flat{make_job(1, 1, 2, {1}, 1, {7})};
    const RhoDelta one = estimate_rho_delta(flat, 7.0);
    CHECK(one.rho == doctest::Approx(1.0));
    CHECK(one.delta == doctest::Approx(1.0));
    CHECK_THROWS_AS(estimate_rho_delta(jobs, 0.0), UndefinedBoundError);
}

TEST_CASE("theoretical bounds") {
    const Bounds b = theoretical_bounds(5, 10, 0.7);
    CHECK(b.rev_bound == doctest::Approx(3.33).epsilon(0.002));
    REQUIRE(b.obj_bound);
    CHECK(*b.obj_bound == doctest::Approx(4.76).epsilon(0.002));
    const Bounds unit = theoretical_bounds(3, 1, 1);
    CHECK(unit.rev_bound == doctest::Approx(1.0));
    CHECK(*unit.obj_bound == doctest::Approx(1.0));
    CHECK_THROWS_AS(theoretical_bounds(2, 4, 0.5), UndefinedBoundError);
    CHECK_FALSE(theoretical_bounds(4, 4, 0.0).obj_bound);
}

TEST_CASE("decision log replays to the reported revenue") {
    GenSpec g;
    g.T = 30;
    g.users_per_slot = 5;
    g.seed = 4;
    const auto jobs = gen_synthetic(g);
    const Calibration cal = calibrate(g, SimConfig{}, 99);
    const SimConfig cfg = sim_config_for(g, SimConfig{}, cal);
    const auto run = run_online(jobs, cfg, g.catalog);
    std::stringstream log;
    write_decision_log(log, run.outcome);
    const auto records = read_decision_log(log);
    REQUIRE(records.size() == jobs.size());
    std::vector<Money> pays;
    for (const auto& r : records)
        if (r.accepted) pays.push_back(r.payment);
    CHECK(revenue(pays, run.schedule.purchases, g.catalog) == doctest::Approx(run.outcome.rev).epsilon(1e-12));
    CHECK(run.outcome.accepted_count + run.outcome.rejected_count == static_cast<int>(jobs.size()));

    std::stringstream sched;
    write_schedule(sched, run.schedule);
    const Schedule back = read_schedule(sched);
    CHECK(back.purchases == run.schedule.purchases);
    CHECK(back.allocations.size() == run.schedule.allocations.size());
    CHECK(back.total_payment() == doctest::Approx(run.schedule.total_payment()));
}

TEST_CASE("config files mirror the structs") {
    ExperimentSpec s = small_spec();
    const nlohmann::json j = s;
    const ExperimentSpec back = j.get<ExperimentSpec>();
    CHECK(nlohmann::json(back) == j);

    SimConfig c;
    c.T = 40;
    c.theta = 0.25;
    CHECK(nlohmann::json(c).get<SimConfig>().theta == 0.25);
    CHECK_THROWS_AS(nlohmann::json({{"T", 3}, {"bogus", 1}}).get<SimConfig>(), ValidationError);
    CHECK_THROWS_AS(nlohmann::json({{"theta", 2.0}}).get<SimConfig>(), ValidationError);
    CHECK_THROWS_AS(nlohmann::json({{"id", "exp9"}}).get<ExperimentSpec>(), ValidationError);
}

TEST_CASE("experiment spec validation") {
    ExperimentSpec s = small_spec();
    s.repeats = 0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_spec();
    s.sweep_values.clear();
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = ExperimentSpec::preset(ExperimentId::exp3);
    s.sweep_values = {1.5};
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("experiments are deterministic and write every table") {
    const ExperimentSpec s = small_spec();
    const auto dir_a = std::filesystem::temp_directory_path() / "ppsched_test_a";
    const auto dir_b = std::filesystem::temp_directory_path() / "ppsched_test_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
    const auto r1 = run_experiment(s);
    ExperimentSpec serial = s;
    serial.threads = 1;
    const auto r2 = run_experiment(serial);
    const auto files = write_experiment(r1, dir_a.string());
    write_experiment(r2, dir_b.string());
    REQUIRE(!files.empty());
    for (const auto& f : files) {
        const auto name = std::filesystem::path(f).filename();
        const std::string wall_panel = "_wall_";
        if (name.string().find(wall_panel) != std::string::npos) continue;  // wall times differ run to run
        const std::string a = slurp(dir_a / name), b = slurp(dir_b / name);
        if (name == "results.tsv") {
            // Wall-time columns aside, rows must match exactly.
            std::istringstream ia(a), ib(b);
            std::string la, lb;
            while (std::getline(ia, la) && std::getline(ib, lb)) {
                auto strip = [](std::string line) {
                    std::vector<std::string> cols;
                    std::istringstream in(line);
                    std::string c;
                    while (std::getline(in, c, '\t')) cols.push_back(c);
                    cols.erase(cols.begin() + 13, cols.begin() + 15);
                    return cols;
                };
                CHECK(strip(la) == strip(lb));
            }
        } else {
            CHECK(a == b);
        }
    }
    const std::string header = slurp(dir_a / "results.tsv").substr(0, slurp(dir_a / "results.tsv").find('\n'));
    std::string expected;
    for (const auto& h : results_header()) expected += (expected.empty() ? "" : "\t") + h;
    CHECK(header == expected);
    // 2 distributions x 2 sweep values x 3 algorithms
    CHECK(r1.cells.size() == 4);
    CHECK(r1.cells[0].algorithms.size() == 3);
    for (const auto& c : r1.cells)
        for (const auto& a : c.algorithms) CHECK(a.audit_failures == 0);
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("oracle timing marks oversized instances as refused") {
    ExperimentSpec s = ExperimentSpec::preset(ExperimentId::exp4);
    s.gen.T = 10;
    s.sweep_values = {2};
    s.repeats = 1;
    s.oracle_sizes = {2, 7};
    s.oracle_repeats = 1;
    const auto r = run_experiment(s);
    REQUIRE(r.oracle_timings.size() == 2);
    CHECK(r.oracle_timings[0].refused == 0);
    CHECK(r.oracle_timings[1].refused == 1);
}
