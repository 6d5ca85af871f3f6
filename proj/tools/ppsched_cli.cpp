// Command-line front end: gen, ingest, run, oracle, experiment, audit, bounds.
//
// Exit codes: 0 success, 2 validation error, 3 infeasible schedule or
// undefined bound, 1 anything else.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>

#include "ppsched/baselines.hpp"
#include "ppsched/config_io.hpp"
#include "ppsched/experiment.hpp"
#include "ppsched/metrics.hpp"
#include "ppsched/online.hpp"
#include "ppsched/oracle.hpp"
#include "ppsched/workload.hpp"

using namespace ppsched;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kInfeasible = 3;

std::vector<Job> load_workload(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot open workload {}", path));
    return read_workload(in);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError(fmt::format("cannot write {}", path));
    return out;
}

InstanceCatalog load_catalog(const std::string& path, int num_types) {
    InstanceCatalog catalog = path.empty() ? InstanceCatalog::default_catalog() : load_config<InstanceCatalog>(path);
    if (catalog.size() != num_types)
        throw ValidationError(
            fmt::format("catalog has {} types but the workload has {} demands per job", catalog.size(), num_types));
    return catalog;
}

Slot last_deadline(const std::vector<Job>& jobs) {
    Slot T = 1;
    for (const auto& j : jobs) T = std::max(T, j.deadline);
    return T;
}

/// SimConfig from file, or one calibrated on the workload itself.
SimConfig resolve_config(const std::string& path, const std::vector<Job>& jobs, const InstanceCatalog& catalog,
                         bool calibrate_missing, CostBasis basis = CostBasis::all_arrived) {
    SimConfig config;
    nlohmann::json raw;
    if (!path.empty()) {
        raw = read_json_file(path);
        config = raw.get<SimConfig>();
    }
    if (!raw.contains("T")) config.T = last_deadline(jobs);
    if (calibrate_missing) {
        if (!raw.contains("rev_star")) {
            SimConfig rc = config;
            rc.theta = 1.0;
            rc.rev_star = 1.0;
            const double b = lagrangian_upper_bound(jobs, rc, catalog);
            config.rev_star = b > 1e-9 ? b : 1.0;
        }
        if (!raw.contains("n_est")) config.n_est = std::max<double>(1.0, static_cast<double>(jobs.size()));
        if (!raw.contains("f_total_est")) {
            for (int round = 0; round < 2; ++round) {
                const bool accept_all = basis == CostBasis::all_arrived || round == 0;
                config.f_total_est = run_online(jobs, config, catalog, {basis, accept_all}).outcome.total_cost;
            }
        }
    }
    config.validate();
    validate_workload(jobs, config.T, catalog.size());
    return config;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ValidationError(fmt::format("bad integer '{}' in list", item));
        }
    }
    return out;
}

void print_outcome(const Outcome& o, std::ostream& out) { write_outcome_summary(out, o); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ppsched: online scheduling of pleasingly parallel jobs on purchased cloud instances"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic workload");
    std::string gen_config, gen_out, gen_dist;
    std::optional<std::uint64_t> gen_seed;
    std::optional<double> gen_users;
    std::optional<int> gen_T, gen_E;
    gen->add_option("-c,--config", gen_config, "GenSpec JSON");
    gen->add_option("--dist", gen_dist, "arrival distribution: normal, uniform, constant");
    gen->add_option("--users-per-slot", gen_users, "mean arrivals per slot");
    gen->add_option("--T", gen_T, "arrival slots");
    gen->add_option("--e-max", gen_E, "maximum execution time");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("-o,--out", gen_out, "workload file (default stdout)");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "convert a trace into a workload");
    std::string ing_trace, ing_mapping, ing_out;
    ingest->add_option("--trace", ing_trace, "trace file")->required();
    ingest->add_option("-m,--mapping", ing_mapping, "TraceMapping JSON");
    ingest->add_option("-o,--out", ing_out, "workload file (default stdout)");

    // run
    auto* run = app.add_subcommand("run", "run one algorithm on a workload");
    std::string run_workload, run_sim, run_catalog, run_alg = "online", run_log, run_schedule, run_basis = "all_arrived";
    std::string run_capacity;
    run->add_option("-w,--workload", run_workload, "workload file")->required();
    run->add_option("-s,--sim", run_sim, "SimConfig JSON (missing calibration fields are estimated)");
    run->add_option("--catalog", run_catalog, "catalog JSON");
    run->add_option("-a,--algorithm", run_alg, "online, pd_small, pd_large, edf, equal_opp, ontapra, dynalloc");
    run->add_option("--cost-basis", run_basis, "committed or all_arrived");
    run->add_option("--fixed-capacity", run_capacity, "per-type pool for fixed-capacity baselines, e.g. 3,2,1,1");
    run->add_option("--log", run_log, "decision log output");
    run->add_option("--schedule", run_schedule, "schedule output");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact optimum and LP bounds");
    std::string or_workload, or_sim, or_catalog, or_mode = "all", or_schedule;
    bool or_no_prune = false;
    oracle->add_option("-w,--workload", or_workload, "workload file")->required();
    oracle->add_option("-s,--sim", or_sim, "SimConfig JSON");
    oracle->add_option("--catalog", or_catalog, "catalog JSON");
    oracle->add_option("--mode", or_mode, "exact, lp, lagrangian or all");
    oracle->add_flag("--no-prune", or_no_prune, "disable branch-and-bound pruning");
    oracle->add_option("--schedule", or_schedule, "schedule output for the exact solution");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a sweep and write result tables");
    std::string exp_spec, exp_preset, exp_out = "results";
    std::optional<int> exp_repeats, exp_threads;
    exp->add_option("--spec", exp_spec, "ExperimentSpec JSON");
    exp->add_option("--preset", exp_preset, "exp1 .. exp5");
    exp->add_option("--repeats", exp_repeats, "override repeats");
    exp->add_option("--threads", exp_threads, "worker threads (0: all cores)");
    exp->add_option("-o,--out", exp_out, "output directory");

    // audit
    auto* audit = app.add_subcommand("audit", "check a schedule against every constraint");
    std::string au_schedule, au_workload, au_sim, au_capacity;
    audit->add_option("--schedule", au_schedule, "schedule file")->required();
    audit->add_option("-w,--workload", au_workload, "workload file")->required();
    audit->add_option("-s,--sim", au_sim, "SimConfig JSON (T and tau)");
    audit->add_option("--fixed-capacity", au_capacity, "audit in fixed-capacity mode with this pool");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "competitive-ratio bounds from rho, delta, theta");
    double b_rho = 0, b_delta = 0, b_theta = 0.5;
    bounds->add_option("--rho", b_rho)->required();
    bounds->add_option("--delta", b_delta)->required();
    bounds->add_option("--theta", b_theta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*gen) {
            GenSpec spec = gen_config.empty() ? GenSpec{} : load_config<GenSpec>(gen_config);
            if (!gen_dist.empty()) spec.arrival_dist = parse_arrival_dist(gen_dist);
            if (gen_users) spec.users_per_slot = *gen_users;
            if (gen_T) spec.T = *gen_T;
            if (gen_E) spec.e_max = *gen_E;
            if (gen_seed) spec.seed = *gen_seed;
            const auto jobs = gen_synthetic(spec);
            if (gen_out.empty()) {
                write_workload(std::cout, jobs);
            } else {
                auto out = open_out(gen_out);
                write_workload(out, jobs);
            }
            std::cerr << fmt::format("generated {} jobs, horizon {}\n", jobs.size(), spec.horizon());
            return kOk;
        }
        if (*ingest) {
            const TraceMapping mapping = ing_mapping.empty() ? TraceMapping{} : load_config<TraceMapping>(ing_mapping);
            const auto result = ingest_trace(ing_trace, mapping);
            if (ing_out.empty()) {
                write_workload(std::cout, result.jobs);
            } else {
                auto out = open_out(ing_out);
                write_workload(out, result.jobs);
            }
            std::cerr << fmt::format("ingested {} jobs, dropped {} rows past T\n", result.jobs.size(),
                                     result.dropped_rows);
            return kOk;
        }
        if (*run) {
            const auto jobs = load_workload(run_workload);
            if (jobs.empty()) throw ValidationError("workload is empty");
            const auto catalog = load_catalog(run_catalog, static_cast<int>(jobs.front().demands.size()));
            SchedulerOptions opts;
            if (run_basis == "committed")
                opts.cost_basis = CostBasis::committed;
            else if (run_basis != "all_arrived")
                throw ValidationError(fmt::format("unknown cost basis '{}'", run_basis));
            const SimConfig config = resolve_config(run_sim, jobs, catalog, true, opts.cost_basis);
            RunResult result;
            if (run_alg == "online") {
                result = run_online(jobs, config, catalog, opts);
            } else {
                BaselineSpec spec =
                    default_baseline_spec(parse_baseline_kind(run_alg), jobs, catalog, config.T, config.seed);
                if (!run_capacity.empty()) spec.fixed_capacity = parse_int_list(run_capacity);
                result = run_baseline(spec, jobs, config, catalog);
                if (!spec.fixed_capacity.empty())
                    std::cerr << fmt::format("fixed capacity: {}\n", fmt::join(spec.fixed_capacity, ","));
            }
            if (!run_log.empty()) {
                auto out = open_out(run_log);
                write_decision_log(out, result.outcome);
            }
            if (!run_schedule.empty()) {
                auto out = open_out(run_schedule);
                write_schedule(out, result.schedule);
            }
            print_outcome(result.outcome, std::cout);
            return kOk;
        }
        if (*oracle) {
            const auto jobs = load_workload(or_workload);
            const int m = jobs.empty() ? (or_catalog.empty() ? 4 : load_config<InstanceCatalog>(or_catalog).size())
                                       : static_cast<int>(jobs.front().demands.size());
            const auto catalog = load_catalog(or_catalog, m);
            const SimConfig config = resolve_config(or_sim, jobs, catalog, false);
            if (or_mode == "exact" || or_mode == "all") {
                const auto r = solve_exact(jobs, config, catalog, {}, !or_no_prune);
                std::cout << fmt::format("exact_obj\t{:.10g}\nexact_rev\t{:.10g}\nexact_sat\t{:.10g}\nnodes\t{}\n",
                                         r.outcome.obj, r.outcome.rev, r.outcome.sat, r.nodes);
                if (r.lower_bound_only) std::cout << "exact_is_lower_bound\t1\n";
                if (!or_schedule.empty()) {
                    auto out = open_out(or_schedule);
                    write_schedule(out, r.schedule);
                }
            }
            if (or_mode == "lp" || or_mode == "all")
                std::cout << fmt::format("lp_bound\t{:.10g}\n", lp_upper_bound(jobs, config, catalog));
            if (or_mode == "lagrangian" || or_mode == "all")
                std::cout << fmt::format("lagrangian_bound\t{:.10g}\n", lagrangian_upper_bound(jobs, config, catalog));
            if (or_mode != "exact" && or_mode != "lp" && or_mode != "lagrangian" && or_mode != "all")
                throw ValidationError(fmt::format("unknown oracle mode '{}'", or_mode));
            return kOk;
        }
        if (*exp) {
            ExperimentSpec spec;
            if (!exp_spec.empty())
                spec = load_config<ExperimentSpec>(exp_spec);
            else if (!exp_preset.empty())
                spec = ExperimentSpec::preset(parse_experiment_id(exp_preset));
            else
                throw ValidationError("experiment needs --spec or --preset");
            if (exp_repeats) spec.repeats = *exp_repeats;
            if (exp_threads) spec.threads = *exp_threads;
            const auto result = run_experiment(spec);
            for (const auto& p : write_experiment(result, exp_out)) std::cout << p << "\n";
            return kOk;
        }
        if (*audit) {
            const auto jobs = load_workload(au_workload);
            std::ifstream in(au_schedule);
            if (!in) throw ValidationError(fmt::format("cannot open schedule {}", au_schedule));
            const Schedule schedule = read_schedule(in);
            SimConfig config = au_sim.empty() ? SimConfig{} : load_config<SimConfig>(au_sim);
            if (au_sim.empty() || !read_json_file(au_sim).contains("T"))
                config.T = static_cast<Slot>(schedule.purchases.cols());
            AuditOptions opts;
            if (!au_capacity.empty()) opts = {AuditMode::fixed_capacity, parse_int_list(au_capacity)};
            const AuditReport report = audit_schedule(schedule, jobs, config, opts);
            for (const auto& line : report.lines()) std::cout << line << "\n";
            std::cout << (report.pass() ? "PASS" : fmt::format("FAIL ({} violations)", report.violation_count()))
                      << "\n";
            return report.pass() ? kOk : kInfeasible;
        }
        if (*bounds) {
            const Bounds b = theoretical_bounds(b_rho, b_delta, b_theta);
            std::cout << fmt::format("rev_bound\t{:.10g}\n", b.rev_bound);
            std::cout << "obj_bound\t" << (b.obj_bound ? fmt::format("{:.10g}", *b.obj_bound) : "undefined") << "\n";
            return kOk;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const StructuralError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const UndefinedBoundError& e) {
        std::cerr << "undefined: " << e.what() << "\n";
        return kInfeasible;
    } catch (const OracleRefusal& e) {
        std::cerr << "oracle refused: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kOk;
}
