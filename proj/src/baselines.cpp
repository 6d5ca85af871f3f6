#include "ppsched/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <random>

#include "ppsched/metrics.hpp"

namespace ppsched {

namespace {

struct KindName {
    BaselineKind kind;
    const char* name;
};

constexpr KindName kNames[] = {
    {BaselineKind::pd_small, "pd_small"}, {BaselineKind::pd_large, "pd_large"},
    {BaselineKind::edf, "edf"},           {BaselineKind::equal_opp, "equal_opp"},
    {BaselineKind::ontapra, "ontapra"},   {BaselineKind::dynalloc, "dynalloc"},
};

long long total_demand(const Job& job) { return std::accumulate(job.demands.begin(), job.demands.end(), 0LL); }

/// Jobs grouped by arrival slot, each group reordered by `less`; groups stay in arrival order.
template <class Less>
std::vector<const Job*> batch_order(const std::vector<Job>& jobs, Less less) {
    std::vector<const Job*> order;
    order.reserve(jobs.size());
    for (const auto& j : jobs) order.push_back(&j);
    std::stable_sort(order.begin(), order.end(), [&](const Job* a, const Job* b) {
        if (a->arrival != b->arrival) return a->arrival < b->arrival;
        return less(*a, *b);
    });
    return order;
}

class Runner {
public:
    Runner(const BaselineSpec& spec, const SimConfig& config, const InstanceCatalog& catalog)
        : spec_(spec), config_(config), catalog_(catalog), rng_(spec.seed) {
        if (uses_fixed_capacity(spec.kind))
            ledger_ = fixed_pool_ledger(spec.fixed_capacity, config.T, config.tau);
        else
            ledger_ = CapacityLedger(catalog.size(), config.T, config.tau);
    }

    void serve(const Job& job) {
        switch (spec_.kind) {
            case BaselineKind::pd_small:
            case BaselineKind::pd_large: serve_posted_price(job); break;
            case BaselineKind::edf: serve_earliest(job, {PlanOptions::Order::efficiency, false}); break;
            case BaselineKind::ontapra: serve_earliest(job, {PlanOptions::Order::performance, false}); break;
            case BaselineKind::equal_opp: serve_random(job); break;
            case BaselineKind::dynalloc: serve_spread(job); break;
        }
    }

    RunResult finish(int n) && {
        RunResult result;
        result.schedule = make_schedule(ledger_, std::move(accepted_), std::move(allocations_));
        result.outcome.algorithm = to_string(spec_.kind);
        result.outcome.per_job = std::move(records_);
        finalize_outcome(result.outcome, result.schedule, n, catalog_, config_);
        return result;
    }

private:
    void accept(const Job& job, const Plan& plan, Money est_cost) {
        const Money v = evaluate_value(job, plan.e);
        commit_plan(plan, job.id, ledger_, &allocations_);
        accepted_.push_back({job.id, plan.e, v});
        records_.push_back({job.id, job.arrival, true, plan.e, v, est_cost, v - est_cost});
    }

    void reject(const Job& job) {
        records_.push_back({job.id, job.arrival, false, 0, 0.0, 0.0, -std::numeric_limits<double>::infinity()});
    }

    Money posted_price(const Plan& plan) const {
        Money total = 0.0;
        for (const auto& c : plan.alloc) {
            const int cap = ledger_.capacity(c.type, c.slot);
            const int used = ledger_.committed(c.type, c.slot);
            for (int u = 0; u < c.count; ++u)
                total += posted_unit_price(catalog_[c.type].price, static_cast<double>(used + u) / cap, spec_.pd_gamma);
        }
        return total;
    }

    void serve_posted_price(const Job& job) {
        Plan best;
        Money best_price = 0.0;
        double best_surplus = 0.0;
        for (int e = 1; e <= job.max_exec_time(); ++e) {
            Plan p = plan_schedule(job, e, ledger_, catalog_, {PlanOptions::Order::efficiency, false});
            if (!p.feasible) continue;
            const Money price = posted_price(p);
            const double surplus = evaluate_value(job, e) - price;
            if (surplus > best_surplus) {
                best = std::move(p);
                best_price = price;
                best_surplus = surplus;
            }
        }
        if (best.feasible)
            accept(job, best, best_price);
        else
            reject(job);
    }

    void serve_earliest(const Job& job, PlanOptions options) {
        for (int e = 1; e <= job.max_exec_time(); ++e) {
            const Plan p = plan_schedule(job, e, ledger_, catalog_, options);
            if (p.feasible) return accept(job, p, p.marginal_purchase_cost);
        }
        reject(job);
    }

    void serve_random(const Job& job) {
        std::vector<Plan> feasible;
        for (int e = 1; e <= job.max_exec_time(); ++e) {
            Plan p = plan_schedule(job, e, ledger_, catalog_);
            if (p.feasible) feasible.push_back(std::move(p));
        }
        if (feasible.empty()) return reject(job);
        std::uniform_int_distribution<std::size_t> pick(0, feasible.size() - 1);
        const Plan& p = feasible[pick(rng_)];
        accept(job, p, p.marginal_purchase_cost);
    }

    void serve_spread(const Job& job) {
        const Plan p = plan_schedule(job, job.max_exec_time(), ledger_, catalog_);
        if (p.feasible)
            accept(job, p, p.marginal_purchase_cost);
        else
            reject(job);
    }

    const BaselineSpec& spec_;
    const SimConfig& config_;
    const InstanceCatalog& catalog_;
    std::mt19937_64 rng_;
    CapacityLedger ledger_;
    std::vector<Acceptance> accepted_;
    std::vector<Allocation> allocations_;
    std::vector<JobRecord> records_;
};

}  // namespace

BaselineKind parse_baseline_kind(const std::string& name) {
    for (const auto& k : kNames)
        if (name == k.name) return k.kind;
    throw ValidationError(fmt::format("unknown baseline '{}'", name));
}

std::string to_string(BaselineKind kind) {
    for (const auto& k : kNames)
        if (kind == k.kind) return k.name;
    return "?";
}

const std::vector<BaselineKind>& all_baseline_kinds() {
    static const std::vector<BaselineKind> kinds = [] {
        std::vector<BaselineKind> v;
        for (const auto& k : kNames) v.push_back(k.kind);
        return v;
    }();
    return kinds;
}

bool uses_fixed_capacity(BaselineKind kind) {
    return kind == BaselineKind::pd_small || kind == BaselineKind::pd_large || kind == BaselineKind::edf ||
           kind == BaselineKind::ontapra;
}

void BaselineSpec::validate(int num_types) const {
    if (uses_fixed_capacity(kind)) {
        if (static_cast<int>(fixed_capacity.size()) != num_types)
            throw ValidationError(
                fmt::format("baseline {} needs a fixed capacity for each of {} types", to_string(kind), num_types));
        for (int c : fixed_capacity)
            if (c < 0) throw ValidationError("fixed capacity must be >= 0");
    }
    if (!(pd_gamma > 1.0)) throw ValidationError("pd_gamma must be > 1");
}

std::vector<int> demand_matched_capacity(const std::vector<Job>& jobs, const InstanceCatalog& catalog, Slot T,
                                         double headroom) {
    const int m = catalog.size();
    std::vector<int> cap(static_cast<std::size_t>(m), 0);
    for (int j = 0; j < m; ++j) {
        long long sum = 0;
        for (const auto& job : jobs) sum += job.demands.at(static_cast<std::size_t>(j));
        cap[j] = static_cast<int>(std::ceil(headroom * static_cast<double>(sum) / (static_cast<double>(m) * T)));
    }
    return cap;
}

BaselineSpec default_baseline_spec(BaselineKind kind, const std::vector<Job>& jobs, const InstanceCatalog& catalog,
                                   Slot T, std::uint64_t seed) {
    BaselineSpec spec;
    spec.kind = kind;
    spec.seed = seed;
    if (!uses_fixed_capacity(kind)) return spec;
    double scale = 1.0;
    if (kind == BaselineKind::pd_small) scale = 0.5;
    if (kind == BaselineKind::pd_large) scale = 2.0;
    for (int c : demand_matched_capacity(jobs, catalog, T))
        spec.fixed_capacity.push_back(static_cast<int>(std::ceil(scale * c)));
    return spec;
}

CapacityLedger fixed_pool_ledger(const std::vector<int>& capacity, Slot T, int tau) {
    CapacityLedger ledger(static_cast<int>(capacity.size()), T, tau);
    for (int j = 0; j < static_cast<int>(capacity.size()); ++j) {
        if (capacity[j] <= 0) continue;
        for (Slot t = 1; t <= T; t += tau) ledger.purchase(j, t, capacity[j]);
    }
    return ledger;
}

Money posted_unit_price(Money price, double utilisation, double gamma) {
    return price * (std::pow(gamma, utilisation) - 1.0) / (gamma - 1.0);
}

RunResult run_baseline(const BaselineSpec& spec, const std::vector<Job>& jobs, const SimConfig& config,
                       const InstanceCatalog& catalog) {
    config.validate();
    spec.validate(catalog.size());
    const auto start = std::chrono::steady_clock::now();

    std::vector<const Job*> order;
    switch (spec.kind) {
        case BaselineKind::edf:
            order = batch_order(jobs, [](const Job& a, const Job& b) {
                return std::pair(a.deadline, a.id) < std::pair(b.deadline, b.id);
            });
            break;
        case BaselineKind::ontapra:
        case BaselineKind::dynalloc:
            order = batch_order(jobs, [](const Job& a, const Job& b) {
                return std::pair(total_demand(a), a.id) < std::pair(total_demand(b), b.id);
            });
            break;
        default: order = batch_order(jobs, [](const Job&, const Job&) { return false; });
    }
    for (std::size_t i = 1; i < jobs.size(); ++i)
        if (jobs[i].arrival < jobs[i - 1].arrival) throw OrderingError("baseline input must be sorted by arrival");

    Runner runner(spec, config, catalog);
    for (const Job* job : order) runner.serve(*job);
    RunResult result = std::move(runner).finish(static_cast<int>(jobs.size()));
    result.outcome.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace ppsched
