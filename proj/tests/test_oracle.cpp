#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "helpers.hpp"
#include "ppsched/experiment.hpp"
#include "ppsched/online.hpp"
#include "ppsched/oracle.hpp"

using namespace ppsched;
using ppsched::test::config;
using ppsched::test::make_job;
using ppsched::test::one_type;

namespace {

Schedule single(const Job& job, int e, const std::vector<std::pair<Slot, int>>& alloc, Slot T,
                const std::vector<std::pair<Slot, int>>& buys) {
    Schedule s(1, T);
    s.accepted.push_back({job.id, e, evaluate_value(job, e)});
    for (auto [t, c] : alloc) s.allocations.push_back({job.id, 0, t, c});
    for (auto [t, c] : buys) s.purchases(0, t - 1) += c;
    return s;
}

// Independent brute force for one instance type: enumerate every choice
// profile and every purchase vector with entries up to Σ D; a profile is
// servable iff Hall's condition holds between jobs (demand D_i over window
// a_i+1..a_i+e_i) and slots (capacity from the tau-window sums).
double brute_force_obj(const std::vector<Job>& jobs, const SimConfig& cfg, Money price) {
    const int n = static_cast<int>(jobs.size());
    const Slot T = cfg.T;
    int rmax = 0;
    for (const auto& j : jobs) rmax += j.demands[0];
    double best = n == 0 ? 0.0 : -1e300;
    std::vector<int> choice(n, 0);
    std::vector<int> r(T, 0);

    std::function<void(int)> over_choices = [&](int i) {
        if (i == n) {
            Money pay = 0;
            int accepted = 0;
            for (int k = 0; k < n; ++k)
                if (choice[k] > 0) {
                    if (jobs[k].demands[0] > jobs[k].dop_cap) return;
                    pay += jobs[k].values[choice[k] - 1];
                    ++accepted;
                }
            long long best_units = -1;
            std::fill(r.begin(), r.end(), 0);
            while (true) {
                long long units = 0;
                for (int v : r) units += v;
                if (best_units < 0 || units < best_units) {
                    std::vector<int> cap(T + 1, 0);
                    for (Slot t = 1; t <= T; ++t)
                        for (Slot s = std::max(1, t - cfg.tau + 1); s <= t; ++s) cap[t] += r[s - 1];
                    bool ok = true;
                    for (int mask = 1; mask < (1 << n) && ok; ++mask) {
                        long long need = 0;
                        std::vector<bool> in(T + 1, false);
                        for (int k = 0; k < n; ++k)
                            if ((mask >> k & 1) && choice[k] > 0) {
                                need += jobs[k].demands[0];
                                for (Slot t = jobs[k].arrival + 1; t <= jobs[k].arrival + choice[k]; ++t) in[t] = true;
                            }
                        long long have = 0;
                        for (Slot t = 1; t <= T; ++t)
                            if (in[t]) have += cap[t];
                        ok = need <= have;
                    }
                    if (ok) best_units = units;
                }
                int pos = 0;
                while (pos < T && r[pos] == rmax) r[pos++] = 0;
                if (pos == T) break;
                ++r[pos];
            }
            if (best_units < 0) return;
            const double obj = cfg.theta * (pay - price * best_units) / cfg.rev_star +
                               (1.0 - cfg.theta) * static_cast<double>(accepted) / n;
            best = std::max(best, obj);
            return;
        }
        for (int c = 0; c <= jobs[i].max_exec_time(); ++c) {
            choice[i] = c;
            over_choices(i + 1);
        }
    };
    over_choices(0);
    return best;
}

}  // namespace

TEST_CASE("audit catches each violation family") {
    const Job job = make_job(1, 1, 4, {10}, 12, {9, 8, 7});
    const std::vector<Job> jobs{job};
    const SimConfig cfg = config(6, 6);

    SUBCASE("under-allocation") {
        const auto r = audit_schedule(single(job, 1, {{2, 9}}, 6, {{2, 9}}), jobs, cfg);
        CHECK(r.coverage.size() == 1);
        CHECK_FALSE(r.pass());
    }
    SUBCASE("over capacity") {
        const auto r = audit_schedule(single(job, 1, {{2, 10}}, 6, {{2, 9}}), jobs, cfg);
        CHECK(r.capacity_use.size() == 1);
    }
    SUBCASE("DoP cap") {
        Job tight = job;
        tight.dop_cap = 5;
        const auto r = audit_schedule(single(tight, 2, {{2, 5}, {3, 5}}, 6, {{2, 5}}), {tight}, cfg);
        CHECK(r.dop.size() == 1);
        CHECK(r.coverage.empty());
    }
    SUBCASE("allocation outside the window") {
        const auto r = audit_schedule(single(job, 1, {{2, 10}, {3, 1}}, 6, {{2, 10}}), jobs, cfg);
        CHECK(r.window.size() == 1);
    }
    SUBCASE("payment differs from the value") {
        Schedule s = single(job, 1, {{2, 10}}, 6, {{2, 10}});
        s.accepted[0].payment = 1.0;
        CHECK(audit_schedule(s, jobs, cfg).payment.size() == 1);
    }
    SUBCASE("double acceptance") {
        Schedule s = single(job, 1, {{2, 10}}, 6, {{2, 10}});
        s.accepted.push_back({1, 2, 8});
        CHECK(audit_schedule(s, jobs, cfg).single_choice.size() == 1);
    }
    SUBCASE("negative purchase") {
        Schedule s = single(job, 1, {{2, 10}}, 6, {{2, 10}});
        s.purchases(0, 4) = -1;
        CHECK(audit_schedule(s, jobs, cfg).integrality.size() == 1);
    }
    SUBCASE("fixed capacity mode replaces the purchase window") {
        const Schedule s = single(job, 1, {{2, 10}}, 6, {});
        CHECK_FALSE(audit_schedule(s, jobs, cfg).pass());
        CHECK(audit_schedule(s, jobs, cfg, {AuditMode::fixed_capacity, {10}}).pass());
        CHECK_FALSE(audit_schedule(s, jobs, cfg, {AuditMode::fixed_capacity, {9}}).pass());
    }
    SUBCASE("unknown job is structural") {
        Schedule s = single(job, 1, {{2, 10}}, 6, {{2, 10}});
        s.accepted[0].job_id = 99;
        CHECK_THROWS_AS(audit_schedule(s, jobs, cfg), StructuralError);
    }
    SUBCASE("lines are prefixed by family") {
        const auto r = audit_schedule(single(job, 1, {{2, 9}}, 6, {{2, 9}}), jobs, cfg);
        REQUIRE(r.lines().size() == 1);
        CHECK(r.lines()[0].rfind("coverage", 0) == 0);
    }
}

TEST_CASE("the even-spread example committed alone passes the audit") {
    const Job job = make_job(1, 1, 4, {6}, 10, {3, 2, 1});
    const auto cat = one_type(1.0);
    CapacityLedger l(1, 4, 6);
    std::vector<Allocation> allocs;
    const Plan p = plan_schedule(job, 3, l, cat);
    commit_plan(p, job.id, l, &allocs);
    const Schedule s = make_schedule(l, {{1, 3, 1.0}}, allocs);
    CHECK(audit_schedule(s, {job}, config(4, 6)).pass());
}

TEST_CASE("exact solver examples") {
    const auto cat = one_type(3.0);
    SUBCASE("empty instance") {
        const auto r = solve_exact({}, config(4, 6), cat);
        CHECK(r.outcome.obj == 0.0);
        CHECK(r.outcome.sat == 0.0);
        CHECK(r.schedule.accepted.empty());
        CHECK(lp_upper_bound({}, config(4, 6), cat) == 0.0);
    }
    SUBCASE("single job takes e=1") {
        const std::vector<Job> jobs{make_job(1, 1, 3, {2}, 5, {10, 6})};
        const SimConfig cfg = config(3, 6, 0.5, 20.0, 2.0);
        const auto r = solve_exact(jobs, cfg, cat);
        REQUIRE(r.schedule.accepted.size() == 1);
        CHECK(r.schedule.accepted[0].e == 1);
        CHECK(r.outcome.rev == doctest::Approx(4.0));
        CHECK(audit_schedule(r.schedule, jobs, cfg).pass());
        CHECK(lp_upper_bound(jobs, cfg, cat) >= r.outcome.obj - 1e-9);
        CHECK(r.outcome.obj == doctest::Approx(brute_force_obj(jobs, cfg, 3.0)));
    }
    SUBCASE("two overlapping copies share one purchase") {
        const std::vector<Job> jobs{make_job(1, 1, 3, {2}, 5, {10, 6}), make_job(2, 2, 4, {2}, 5, {10, 6})};
        const SimConfig cfg = config(4, 6, 0.5, 20.0, 2.0);
        const auto on = solve_exact(jobs, cfg, cat, {}, true);
        const auto off = solve_exact(jobs, cfg, cat, {}, false);
        // Both at e=1: two instances bought at slot 2 serve slots 2 and 3. REV = 20 - 6.
        CHECK(on.outcome.rev == doctest::Approx(14.0));
        CHECK(on.outcome.obj == doctest::Approx(0.5 * 14.0 / 20.0 + 0.5));
        CHECK(on.outcome.obj == off.outcome.obj);
        CHECK(on.outcome.obj == doctest::Approx(brute_force_obj(jobs, cfg, 3.0)));
        CHECK(audit_schedule(on.schedule, jobs, cfg).pass());
    }
}

TEST_CASE("oracle refuses oversized instances") {
    std::vector<Job> jobs;
    for (int i = 1; i <= 7; ++i) jobs.push_back(make_job(i, 1, 3, {1}, 5, {1, 1}));
    CHECK_THROWS_AS(solve_exact(jobs, config(4, 6), one_type(1.0)), OracleRefusal);
    CHECK_THROWS_AS(solve_exact({make_job(1, 1, 14, {1}, 5, std::vector<Money>(13, 1.0))}, config(14, 6),
                                one_type(1.0)),
                    OracleRefusal);
}

TEST_CASE("property: exact matches an independent brute force on single-type micro instances") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const Slot T = 2 + static_cast<Slot>(rng() % 3);
        const int tau = 1 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % 3);
        const Money price = 1.0 + static_cast<double>(rng() % 3);
        std::vector<Job> jobs;
        int demand_sum = 0;
        Slot a = 1;
        for (int i = 0; i < n; ++i) {
            a = std::min<Slot>(T - 1, a + static_cast<Slot>(rng() % 2));
            const int d = a + 1 + static_cast<int>(rng() % (T - a));
            const int D = 1 + static_cast<int>(rng() % 2);
            demand_sum += D;
            std::vector<Money> v;
            Money top = 2.0 + static_cast<double>(rng() % 8);
            for (int e = 1; e <= d - a; ++e) v.push_back(std::max(0.0, top - (e - 1)));
            jobs.push_back(make_job(i + 1, a, d, {D}, 1 + static_cast<int>(rng() % 3), v));
        }
        if (demand_sum > 4) continue;
        const double theta = std::vector<double>{0.0, 0.5, 1.0}[rng() % 3];
        const SimConfig cfg = config(T, tau, theta, 10.0, n);
        const auto cat = one_type(price);
        const auto on = solve_exact(jobs, cfg, cat, {}, true);
        const auto off = solve_exact(jobs, cfg, cat, {}, false);
        const double brute = brute_force_obj(jobs, cfg, price);
        REQUIRE(on.outcome.obj == doctest::Approx(brute).epsilon(1e-12));
        REQUIRE(off.outcome.obj == on.outcome.obj);
        REQUIRE(audit_schedule(on.schedule, jobs, cfg).pass());
        REQUIRE(lp_upper_bound(jobs, cfg, cat) >= on.outcome.obj - 1e-9);
    }
}

TEST_CASE("property: online <= exact <= LP <= Lagrangian on tiny instances") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const TinyInstance inst = gen_tiny_instance(seed);
        const auto online = run_online(inst.jobs, inst.config, inst.catalog);
        const auto exact = solve_exact(inst.jobs, inst.config, inst.catalog);
        const double lp = lp_upper_bound(inst.jobs, inst.config, inst.catalog);
        const double lag = lagrangian_upper_bound(inst.jobs, inst.config, inst.catalog);
        CHECK(online.outcome.obj <= exact.outcome.obj + 1e-9);
        CHECK(exact.outcome.obj <= lp + 1e-9);
        CHECK(lp <= lag + 1e-7);
        CHECK(audit_schedule(exact.schedule, inst.jobs, inst.config).pass());
    }
}

TEST_CASE("simplex solves small LPs") {
    // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3
    LpProblem<double> p;
    p.A.resize(3, 2);
    p.A << 1, 1, 1, 3, 1, 0;
    p.b.resize(3);
    p.b << 4, 6, 3;
    p.sense = {RowSense::le, RowSense::le, RowSense::le};
    p.c.resize(2);
    p.c << 3, 2;
    const auto s = solve_lp(p);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.value == doctest::Approx(11.0));
    CHECK(s.x(0) == doctest::Approx(3.0));
    CHECK(s.x(1) == doctest::Approx(1.0));

    SUBCASE("infeasible") {
        LpProblem<double> q;
        q.A.resize(2, 1);
        q.A << 1, 1;
        q.b.resize(2);
        q.b << 1, 2;
        q.sense = {RowSense::le, RowSense::ge};
        q.c.resize(1);
        q.c << 1;
        CHECK(solve_lp(q).status == LpStatus::infeasible);
    }
    SUBCASE("unbounded") {
        LpProblem<double> q;
        q.A.resize(1, 2);
        q.A << 1, -1;
        q.b.resize(1);
        q.b << 1;
        q.sense = {RowSense::le};
        q.c.resize(2);
        q.c << 1, 1;
        CHECK(solve_lp(q).status == LpStatus::unbounded);
    }
    SUBCASE("integer program") {
        // max x + y s.t. 2x + 2y <= 3 -> LP 1.5, integer 1
        LpProblem<double> q;
        q.A.resize(1, 2);
        q.A << 2, 2;
        q.b.resize(1);
        q.b << 3;
        q.sense = {RowSense::le};
        q.c.resize(2);
        q.c << 1, 1;
        CHECK(solve_lp(q).value == doctest::Approx(1.5));
        CHECK(solve_milp(q, {true, true}).value == doctest::Approx(1.0));
    }
}
