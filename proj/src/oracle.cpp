#include "ppsched/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "ppsched/metrics.hpp"
#include "ppsched/planner.hpp"
#include "ppsched/workload.hpp"

namespace ppsched {

void OracleLimits::validate() const {
    if (max_jobs < 1 || max_slots < 1 || max_types < 1 || max_E < 1 || max_dop < 1 || node_budget < 1)
        throw ValidationError("oracle limits must all be positive");
}

bool AuditReport::pass() const { return violation_count() == 0; }

std::size_t AuditReport::violation_count() const {
    return coverage.size() + single_choice.size() + dop.size() + capacity_def.size() + capacity_use.size() +
           window.size() + payment.size() + integrality.size();
}

std::vector<std::string> AuditReport::lines() const {
    std::vector<std::string> out;
    const auto add = [&](const char* family, const std::vector<std::string>& v) {
        for (const auto& s : v) out.push_back(fmt::format("{}: {}", family, s));
    };
    add("coverage", coverage);
    add("single_choice", single_choice);
    add("dop", dop);
    add("capacity_def", capacity_def);
    add("capacity_use", capacity_use);
    add("window", window);
    add("payment", payment);
    add("integrality", integrality);
    return out;
}

AuditReport audit_schedule(const Schedule& schedule, const std::vector<Job>& jobs, const SimConfig& config,
                           const AuditOptions& options) {
    AuditReport report;
    const Slot T = config.T;
    const int m = static_cast<int>(schedule.purchases.rows());

    std::unordered_map<int, const Job*> by_id;
    for (const auto& job : jobs) by_id[job.id] = &job;
    const auto find = [&](int id) {
        const auto it = by_id.find(id);
        if (it == by_id.end()) throw StructuralError(fmt::format("schedule references unknown job {}", id));
        return it->second;
    };

    if (schedule.purchases.cols() != T)
        report.capacity_def.push_back(fmt::format("purchase matrix has {} slots, expected {}", schedule.purchases.cols(), T));
    for (const auto& job : jobs)
        if (static_cast<int>(job.demands.size()) != m)
            report.capacity_def.push_back(fmt::format("job {} has {} demand entries for {} types", job.id,
                                                      job.demands.size(), m));
    if (!report.capacity_def.empty()) return report;

    std::unordered_map<int, int> chosen_e;
    for (const auto& a : schedule.accepted) {
        const Job* job = find(a.job_id);
        if (chosen_e.count(a.job_id)) {
            report.single_choice.push_back(fmt::format("job {} accepted more than once", a.job_id));
            continue;
        }
        if (a.e < 1 || a.e > job->max_exec_time()) {
            report.single_choice.push_back(fmt::format("job {} accepted at e={} outside 1..{}", a.job_id, a.e,
                                                       job->max_exec_time()));
            continue;
        }
        chosen_e[a.job_id] = a.e;
        const Money v = evaluate_value(*job, a.e);
        if (std::abs(a.payment - v) > 1e-9 * std::max(1.0, std::abs(v)))
            report.payment.push_back(fmt::format("job {} pays {} but v^{} = {}", a.job_id, a.payment, a.e, v));
    }

    Eigen::MatrixXi usage = Eigen::MatrixXi::Zero(m, T);
    std::unordered_map<int, std::vector<long long>> units;
    std::unordered_map<int, long long> total;
    for (const auto& y : schedule.allocations) {
        const Job* job = find(y.job_id);
        if (y.count < 0) {
            report.integrality.push_back(fmt::format("job {} has negative allocation {}", y.job_id, y.count));
            continue;
        }
        if (y.type < 0 || y.type >= m || y.slot < 1 || y.slot > T) {
            report.window.push_back(fmt::format("job {} allocation at type {} slot {} is out of range", y.job_id,
                                                y.type + 1, y.slot));
            continue;
        }
        const auto e = chosen_e.find(y.job_id);
        if (e == chosen_e.end()) {
            if (y.count > 0)
                report.window.push_back(fmt::format("job {} is not accepted but holds {} units", y.job_id, y.count));
            continue;
        }
        if (y.slot < job->arrival + 1 || y.slot > job->arrival + e->second) {
            report.window.push_back(fmt::format("job {} uses slot {} outside {}..{}", y.job_id, y.slot,
                                                job->arrival + 1, job->arrival + e->second));
            continue;
        }
        auto& u = units[y.job_id];
        u.resize(static_cast<std::size_t>(m), 0);
        u[y.type] += y.count;
        total[y.job_id] += y.count;
        usage(y.type, y.slot - 1) += y.count;
    }

    for (const auto& [id, e] : chosen_e) {
        const Job* job = by_id.at(id);
        auto u = units[id];
        u.resize(static_cast<std::size_t>(m), 0);
        if (!covers_job(u, job->demands))
            report.coverage.push_back(fmt::format("job {} at e={} is under-allocated", id, e));
        if (total[id] > job->dop_cap)
            report.dop.push_back(fmt::format("job {} uses {} instance-slots, cap {}", id, total[id], job->dop_cap));
    }

    for (int j = 0; j < m; ++j)
        for (Slot t = 1; t <= T; ++t)
            if (schedule.purchases(j, t - 1) < 0)
                report.integrality.push_back(fmt::format("negative purchase at type {} slot {}", j + 1, t));

    if (options.mode == AuditMode::fixed_capacity && static_cast<int>(options.fixed_capacity.size()) != m) {
        report.capacity_def.push_back(fmt::format("fixed capacity has {} entries for {} types",
                                                  options.fixed_capacity.size(), m));
        return report;
    }
    for (int j = 0; j < m; ++j) {
        for (Slot t = 1; t <= T; ++t) {
            long long cap = 0;
            if (options.mode == AuditMode::fixed_capacity) {
                cap = options.fixed_capacity[j];
            } else {
                for (Slot s = std::max(1, t - config.tau + 1); s <= t; ++s) cap += schedule.purchases(j, s - 1);
            }
            if (usage(j, t - 1) > cap)
                report.capacity_use.push_back(
                    fmt::format("type {} slot {} uses {} of capacity {}", j + 1, t, usage(j, t - 1), cap));
        }
    }
    return report;
}

namespace {

using Lp = LpProblem<double>;

/// Common divisor of all prices when they are whole numbers, else 0.
double price_step(const InstanceCatalog& catalog) {
    long long g = 0;
    for (const auto& t : catalog.types()) {
        if (t.price != std::round(t.price)) return 0.0;
        g = std::gcd(g, static_cast<long long>(std::llround(t.price)));
    }
    return static_cast<double>(g);
}

long long lcm_ll(const std::vector<int>& v) {
    long long l = 1;
    for (int d : v) l = std::lcm(l, static_cast<long long>(d));
    return l;
}

}  // namespace

CoverResult min_cost_cover(const std::vector<const Job*>& jobs, const std::vector<int>& e, const SimConfig& config,
                           const InstanceCatalog& catalog, bool relax) {
    const int m = catalog.size();
    const Slot T = config.T;
    CoverResult out;
    out.purchases = Eigen::MatrixXi::Zero(m, T);
    if (jobs.empty()) {
        out.feasible = true;
        return out;
    }

    // Variable layout: y per (job, type, slot in window), then r per (type, slot <= last used).
    std::vector<int> y_base(jobs.size());
    int n_vars = 0;
    Slot last = 1;
    for (std::size_t q = 0; q < jobs.size(); ++q) {
        y_base[q] = n_vars;
        n_vars += m * e[q];
        last = std::max(last, jobs[q]->arrival + e[q]);
    }
    const int r_base = n_vars;
    n_vars += m * last;
    const auto r_index = [&](int j, Slot t) { return r_base + j * last + (t - 1); };

    const int n_rows = 2 * static_cast<int>(jobs.size()) + m * last;
    Lp lp;
    lp.A = Lp::Matrix::Zero(n_rows, n_vars);
    lp.b = Lp::Vector::Zero(n_rows);
    lp.sense.assign(static_cast<std::size_t>(n_rows), RowSense::le);
    lp.c = Lp::Vector::Zero(n_vars);

    int row = 0;
    for (std::size_t q = 0; q < jobs.size(); ++q) {
        const Job& job = *jobs[q];
        const double L = static_cast<double>(lcm_ll(job.demands));
        for (int j = 0; j < m; ++j) {
            for (int s = 1; s <= e[q]; ++s) {
                const int v = y_base[q] + j * e[q] + (s - 1);
                lp.A(row, v) = L / job.demands[j];
                lp.A(row + 1, v) = 1.0;
                const Slot t = job.arrival + s;
                lp.A(2 * static_cast<int>(jobs.size()) + j * last + (t - 1), v) = 1.0;
            }
        }
        lp.b(row) = L;
        lp.sense[row] = RowSense::ge;
        lp.b(row + 1) = job.dop_cap;
        row += 2;
    }
    for (int j = 0; j < m; ++j) {
        for (Slot t = 1; t <= last; ++t) {
            const int cap_row = 2 * static_cast<int>(jobs.size()) + j * last + (t - 1);
            for (Slot s = std::max(1, t - config.tau + 1); s <= t; ++s) lp.A(cap_row, r_index(j, s)) = -1.0;
            lp.c(r_index(j, t)) = -catalog[j].price;
        }
    }

    if (relax) {
        const auto sol = solve_lp(lp);
        if (sol.status != LpStatus::optimal) return out;
        out.feasible = true;
        out.cost = -sol.value;
        return out;
    }
    // A sequential planner pass gives a feasible incumbent; the search only has to beat it.
    std::optional<CoverResult> greedy;
    for (auto order : {PlanOptions::Order::efficiency, PlanOptions::Order::performance}) {
        CapacityLedger ledger(m, T, config.tau);
        std::vector<Allocation> allocs;
        bool ok = true;
        for (std::size_t q = 0; q < jobs.size() && ok; ++q) {
            const Plan plan = plan_schedule(*jobs[q], e[q], ledger, catalog, {order, true});
            if (plan.feasible)
                commit_plan(plan, jobs[q]->id, ledger, &allocs);
            else
                ok = false;
        }
        const Money cost = ledger.purchase_cost(catalog);
        if (ok && (!greedy || cost < greedy->cost)) greedy = CoverResult{cost, true, std::move(allocs), ledger.purchases()};
    }

    MilpOptions mo;
    mo.objective_step = price_step(catalog);
    if (greedy) mo.cutoff = -greedy->cost;
    mo.priority.assign(static_cast<std::size_t>(n_vars), 0);
    for (int v = r_base; v < n_vars; ++v) mo.priority[v] = 1;
    const auto sol = solve_milp(lp, std::vector<bool>(static_cast<std::size_t>(n_vars), true), mo);
    if (sol.status != LpStatus::optimal) {
        if (sol.budget_exhausted) throw OracleRefusal("covering search exceeded its node budget");
        if (greedy) return std::move(*greedy);
        return out;
    }
    out.feasible = true;
    for (std::size_t q = 0; q < jobs.size(); ++q)
        for (int j = 0; j < m; ++j)
            for (int s = 1; s <= e[q]; ++s) {
                const int count = static_cast<int>(sol.x(y_base[q] + j * e[q] + (s - 1)));
                if (count > 0) out.allocations.push_back({jobs[q]->id, j, jobs[q]->arrival + s, count});
            }
    for (int j = 0; j < m; ++j)
        for (Slot t = 1; t <= last; ++t) {
            out.purchases(j, t - 1) = static_cast<int>(sol.x(r_index(j, t)));
            out.cost += out.purchases(j, t - 1) * catalog[j].price;
        }
    return out;
}

namespace {

class ExactSearch {
public:
    ExactSearch(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                const OracleLimits& limits, bool pruning)
        : jobs_(jobs), config_(config), catalog_(catalog), limits_(limits), pruning_(pruning),
          n_(static_cast<int>(jobs.size())), choice_(jobs.size(), 0) {
        suffix_value_.assign(jobs.size() + 1, 0.0);
        for (int i = n_ - 1; i >= 0; --i) suffix_value_[i] = suffix_value_[i + 1] + jobs[i].max_value();
    }

    void run() { dfs(0, 0.0, 0); }

    bool found() const { return have_; }
    double best_obj() const { return best_obj_; }
    const std::vector<int>& best_choice() const { return best_choice_; }
    long long nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }

private:
    double objective(Money rev, int accepted) const {
        const double sat = n_ > 0 ? static_cast<double>(accepted) / n_ : 0.0;
        return aggregated(rev, config_.rev_star, sat, config_.theta);
    }

    void profile(int upto, std::vector<const Job*>& js, std::vector<int>& es) const {
        for (int i = 0; i < upto; ++i)
            if (choice_[i] > 0) {
                js.push_back(&jobs_[i]);
                es.push_back(choice_[i]);
            }
    }

    void dfs(int i, Money value, int accepted) {
        if (exhausted_) return;
        if (++nodes_ > limits_.node_budget) {
            exhausted_ = true;
            return;
        }
        if (i == n_) {
            std::vector<const Job*> js;
            std::vector<int> es;
            profile(n_, js, es);
            const CoverResult cover = min_cost_cover(js, es, config_, catalog_);
            if (!cover.feasible) return;
            const double obj = objective(value - cover.cost, accepted);
            if (!have_ || obj > best_obj_) {
                have_ = true;
                best_obj_ = obj;
                best_choice_ = choice_;
            }
            return;
        }
        if (pruning_ && have_ && i > 0) {
            const int remaining = n_ - i;
            const double slack = 1e-9 * std::max(1.0, std::abs(best_obj_));
            const double free_bound = objective(value + suffix_value_[i], accepted + remaining);
            if (free_bound < best_obj_ - slack) return;
            std::vector<const Job*> js;
            std::vector<int> es;
            profile(i, js, es);
            const CoverResult lb = min_cost_cover(js, es, config_, catalog_, /*relax=*/true);
            if (!lb.feasible) return;
            if (objective(value - lb.cost + suffix_value_[i], accepted + remaining) < best_obj_ - slack) return;
        }
        const Job& job = jobs_[i];
        for (int e = 1; e <= job.max_exec_time(); ++e) {
            choice_[i] = e;
            dfs(i + 1, value + evaluate_value(job, e), accepted + 1);
        }
        choice_[i] = 0;
        dfs(i + 1, value, accepted);
    }

    const std::vector<Job>& jobs_;
    const SimConfig& config_;
    const InstanceCatalog& catalog_;
    const OracleLimits& limits_;
    bool pruning_;
    int n_;
    std::vector<int> choice_;
    std::vector<Money> suffix_value_;
    bool have_ = false;
    double best_obj_ = 0.0;
    std::vector<int> best_choice_;
    long long nodes_ = 0;
    bool exhausted_ = false;
};

void check_limits(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                  const OracleLimits& limits) {
    limits.validate();
    if (static_cast<int>(jobs.size()) > limits.max_jobs)
        throw OracleRefusal(fmt::format("{} jobs exceed the limit of {}", jobs.size(), limits.max_jobs));
    if (config.T > limits.max_slots)
        throw OracleRefusal(fmt::format("{} slots exceed the limit of {}", config.T, limits.max_slots));
    if (catalog.size() > limits.max_types)
        throw OracleRefusal(fmt::format("{} types exceed the limit of {}", catalog.size(), limits.max_types));
    for (const auto& job : jobs) {
        if (job.max_exec_time() > limits.max_E)
            throw OracleRefusal(fmt::format("job {} has {} execution times, limit {}", job.id, job.max_exec_time(),
                                            limits.max_E));
        if (job.dop_cap > limits.max_dop)
            throw OracleRefusal(fmt::format("job {} has DoP cap {}, limit {}", job.id, job.dop_cap, limits.max_dop));
    }
}

}  // namespace

ExactResult solve_exact(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                        const OracleLimits& limits, bool pruning) {
    config.validate();
    check_limits(jobs, config, catalog, limits);
    validate_workload(jobs, config.T, catalog.size());
    const auto start = std::chrono::steady_clock::now();

    ExactSearch search(jobs, config, catalog, limits, pruning);
    search.run();

    ExactResult result;
    result.nodes = search.nodes();
    result.lower_bound_only = search.exhausted();
    result.schedule = Schedule(catalog.size(), config.T);
    if (search.found()) {
        std::vector<const Job*> js;
        std::vector<int> es;
        for (std::size_t i = 0; i < jobs.size(); ++i)
            if (search.best_choice()[i] > 0) {
                js.push_back(&jobs[i]);
                es.push_back(search.best_choice()[i]);
            }
        CoverResult cover = min_cost_cover(js, es, config, catalog);
        for (std::size_t q = 0; q < js.size(); ++q)
            result.schedule.accepted.push_back({js[q]->id, es[q], evaluate_value(*js[q], es[q])});
        result.schedule.allocations = std::move(cover.allocations);
        result.schedule.purchases = std::move(cover.purchases);
    }
    result.outcome.algorithm = "exact";
    for (const auto& job : jobs) {
        const auto a = result.schedule.acceptance_of(job.id);
        result.outcome.per_job.push_back(
            {job.id, job.arrival, a.has_value(), a ? a->e : 0, a ? a->payment : 0.0, 0.0, 0.0});
    }
    finalize_outcome(result.outcome, result.schedule, static_cast<int>(jobs.size()), catalog, config);
    result.outcome.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

double lp_upper_bound(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                      const SimplexOptions& options) {
    config.validate();
    if (jobs.empty()) return 0.0;
    const int m = catalog.size();
    const Slot T = config.T;
    const double n = static_cast<double>(jobs.size());

    // Variables: per (job, e): x, then y per (type, slot offset); then r per (type, slot).
    std::vector<int> x_index;
    int n_vars = 0;
    int n_options = 0;
    for (const auto& job : jobs)
        for (int e = 1; e <= job.max_exec_time(); ++e) {
            n_vars += 1 + m * e;
            ++n_options;
        }
    const int r_base = n_vars;
    n_vars += m * T;
    if (n_vars > options.max_columns)
        throw LpSizeError(fmt::format("LP relaxation needs {} variables, cap {}", n_vars, options.max_columns));

    const int n_rows = static_cast<int>(jobs.size()) + 2 * n_options + m * T;
    Lp lp;
    lp.A = Lp::Matrix::Zero(n_rows, n_vars);
    lp.b = Lp::Vector::Zero(n_rows);
    lp.sense.assign(static_cast<std::size_t>(n_rows), RowSense::le);
    lp.c = Lp::Vector::Zero(n_vars);
    const int cap_base = static_cast<int>(jobs.size()) + 2 * n_options;

    int var = 0;
    int row = static_cast<int>(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& job = jobs[i];
        lp.b(static_cast<int>(i)) = 1.0;
        for (int e = 1; e <= job.max_exec_time(); ++e) {
            const int x = var++;
            lp.A(static_cast<int>(i), x) = 1.0;
            lp.c(x) = config.theta * evaluate_value(job, e) / config.rev_star + (1.0 - config.theta) / n;
            const int cover_row = row++;
            const int dop_row = row++;
            lp.sense[cover_row] = RowSense::ge;
            lp.A(cover_row, x) = -1.0;
            lp.A(dop_row, x) = -static_cast<double>(job.dop_cap);
            for (int j = 0; j < m; ++j)
                for (int s = 1; s <= e; ++s) {
                    const int y = var++;
                    lp.A(cover_row, y) = 1.0 / job.demands[j];
                    lp.A(dop_row, y) = 1.0;
                    lp.A(cap_base + j * T + (job.arrival + s - 1), y) = 1.0;
                }
        }
    }
    for (int j = 0; j < m; ++j)
        for (Slot t = 1; t <= T; ++t) {
            lp.c(r_base + j * T + (t - 1)) = -config.theta * catalog[j].price / config.rev_star;
            for (Slot s = std::max(1, t - config.tau + 1); s <= t; ++s)
                lp.A(cap_base + j * T + (t - 1), r_base + j * T + (s - 1)) = -1.0;
        }

    const auto sol = solve_lp(lp, options);
    if (sol.status != LpStatus::optimal)
        throw std::runtime_error(fmt::format("LP relaxation did not solve (status {})", static_cast<int>(sol.status)));
    return sol.value;
}

namespace {

/// Cheapest way to cover one unit of a job with per-type unit costs c_j,
/// mixing at most two types under the DoP cap. Returns the per-type instance
/// units used, or an empty vector when no mix fits.
struct Mix {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<double> units;
};

Mix cheapest_mix(const std::vector<int>& demands, int cap, const std::vector<double>& unit_cost) {
    const int m = static_cast<int>(demands.size());
    Mix best;
    for (int p = 0; p < m; ++p) {
        if (demands[p] > cap) continue;
        const double cp = demands[p] * unit_cost[p];
        if (cp < best.cost) {
            best.cost = cp;
            best.units.assign(static_cast<std::size_t>(m), 0.0);
            best.units[p] = demands[p];
        }
        for (int q = 0; q < m; ++q) {
            if (demands[q] <= cap) continue;
            // Share z of q with D_p (1 - z) + D_q z = cap.
            const double z = static_cast<double>(cap - demands[p]) / (demands[q] - demands[p]);
            const double c = (1.0 - z) * cp + z * demands[q] * unit_cost[q];
            if (c < best.cost) {
                best.cost = c;
                best.units.assign(static_cast<std::size_t>(m), 0.0);
                best.units[p] = (1.0 - z) * demands[p];
                best.units[q] = z * demands[q];
            }
        }
    }
    return best;
}

}  // namespace

double lagrangian_upper_bound(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                              const LagrangianOptions& options) {
    config.validate();
    if (jobs.empty()) return 0.0;
    const int m = catalog.size();
    const Slot T = config.T;
    const int tau = config.tau;
    const double n = static_cast<double>(jobs.size());

    // Window budget per type: every tau-window sum of multipliers stays <= P_j.
    std::vector<double> budget(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) budget[j] = config.theta * catalog[j].price / config.rev_star;
    Eigen::MatrixXd lambda(m, T);
    for (int j = 0; j < m; ++j) lambda.row(j).setConstant(budget[j] / tau);

    const auto project = [&](Eigen::MatrixXd& l) {
        l = l.cwiseMax(0.0);
        for (int j = 0; j < m; ++j)
            for (Slot s = 1; s <= T; ++s) {
                const int len = std::min(tau, T - s + 1);
                const double sum = l.row(j).segment(s - 1, len).sum();
                if (sum > budget[j]) l.row(j).segment(s - 1, len) *= budget[j] / sum;
            }
    };

    Eigen::MatrixXd usage(m, T);
    std::vector<double> unit_cost(static_cast<std::size_t>(m));
    std::vector<Slot> cheapest(static_cast<std::size_t>(m));
    double best = std::numeric_limits<double>::infinity();

    for (int it = 0; it < options.iterations; ++it) {
        usage.setZero();
        double value = 0.0;
        for (const auto& job : jobs) {
            double job_best = 0.0;
            Mix chosen;
            std::vector<Slot> chosen_slots;
            for (int e = 1; e <= job.max_exec_time(); ++e) {
                const double gain = config.theta * evaluate_value(job, e) / config.rev_star + (1.0 - config.theta) / n;
                if (gain <= job_best) continue;
                for (int j = 0; j < m; ++j) {
                    Eigen::Index arg = 0;
                    unit_cost[j] = lambda.row(j).segment(job.arrival, e).minCoeff(&arg);
                    cheapest[j] = job.arrival + 1 + static_cast<Slot>(arg);
                }
                Mix mix = cheapest_mix(job.demands, job.dop_cap, unit_cost);
                if (gain - mix.cost > job_best) {
                    job_best = gain - mix.cost;
                    chosen = std::move(mix);
                    chosen_slots = cheapest;
                }
            }
            value += job_best;
            for (std::size_t j = 0; j < chosen.units.size(); ++j)
                usage(static_cast<int>(j), chosen_slots[j] - 1) += chosen.units[j];
        }
        best = std::min(best, value);

        const double peak = usage.maxCoeff();
        if (peak <= 0.0) break;
        const double eta = options.step / std::sqrt(1.0 + it);
        for (int j = 0; j < m; ++j) lambda.row(j) += eta * (budget[j] / tau) * usage.row(j) / peak;
        project(lambda);
    }
    return best;
}

}  // namespace ppsched
