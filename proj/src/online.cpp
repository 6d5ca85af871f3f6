#include "ppsched/online.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>

#include "ppsched/metrics.hpp"

namespace ppsched {

SchedulerState::SchedulerState(const SimConfig& cfg, const InstanceCatalog& cat, SchedulerOptions opts)
    : config(cfg),
      catalog(cat),
      options(opts),
      ledger(cat.size(), cfg.T, cfg.tau),
      shadow_ledger(cat.size(), cfg.T, cfg.tau),
      reference_type(cat.by_efficiency().front()) {
    config.validate();
}

void SchedulerState::observe(const Job& job) {
    const int d = job.demands.at(static_cast<std::size_t>(reference_type));
    demand_min = std::min(demand_min, d);
    demand_max = std::max(demand_max, d);
    exec_bound = std::max(exec_bound, job.max_exec_time());
}

const CapacityLedger& SchedulerState::basis_ledger() const {
    return options.cost_basis == CostBasis::committed ? ledger : shadow_ledger;
}

Money SchedulerState::basis_cost() const {
    return options.cost_basis == CostBasis::committed ? committed_cost : shadow_cost;
}

double SchedulerState::basis_weight_sum() const {
    return options.cost_basis == CostBasis::committed ? weight_sum : shadow_weight_sum;
}

Plan plan_schedule(const Job& job, int e, const SchedulerState& state) {
    return plan_schedule(job, e, state.basis_ledger(), state.catalog);
}

double weight(const Job& job, int e, const SchedulerState& state) {
    const int d = job.demands.at(static_cast<std::size_t>(state.reference_type));
    const int d_min = std::min(state.demand_min, d);
    const int d_max = std::max(state.demand_max, d);
    const int big_e = std::max(state.exec_bound, job.max_exec_time());
    const double alpha = state.config.alpha;

    const double demand_term = d_max == d_min ? 1.0 : static_cast<double>(d - d_min) / (d_max - d_min);
    const double time_term =
        big_e <= 1 ? 1.0 : std::max(0.0, static_cast<double>(big_e - e - 1) / static_cast<double>(big_e - 1));
    return alpha * demand_term + (1.0 - alpha) * time_term;
}

namespace {

struct Scored {
    Plan plan;
    double w = 0.0;
    Money phi = 0.0;
    Money phi_hat = 0.0;
    double increment = -std::numeric_limits<double>::infinity();
};

Money share(Money total, double w, double others) {
    const double denom = others + w;
    if (denom <= 0.0) {
        if (total == 0.0) return 0.0;
        throw DegenerateWeightsError(fmt::format("zero total weight with nonzero cost {}", total));
    }
    return total * w / denom;
}

// `strict` = false lets a zero-weight job carry the whole current cost instead of throwing.
Scored score(const Job& job, int e, const SchedulerState& state, bool strict) {
    Scored s;
    s.plan = plan_schedule(job, e, state);
    if (!s.plan.feasible) return s;
    s.w = weight(job, e, state);
    const Money total = state.basis_cost() + s.plan.marginal_purchase_cost;
    try {
        s.phi = share(total, s.w, state.basis_weight_sum());
    } catch (const DegenerateWeightsError&) {
        if (strict) throw;
        s.phi = total;
    }
    s.phi_hat = scale_to_period(s.phi, job, state);
    const auto& c = state.config;
    s.increment = c.theta * (evaluate_value(job, e) - s.phi_hat) / c.rev_star + (1.0 - c.theta) / c.n_est;
    return s;
}

}  // namespace

Money current_sharing_cost(const Job& job, int e, const SchedulerState& state) {
    const Plan plan = plan_schedule(job, e, state);
    const Money total = state.basis_cost() + plan.marginal_purchase_cost;
    return share(total, weight(job, e, state), state.basis_weight_sum());
}

Money scale_to_period(Money phi, const Job& job, const SchedulerState& state) {
    const Money history = state.basis_cost();
    if (history <= 0.0) return phi;
    return phi * state.config.f_total_est * job.arrival / (history * state.config.T);
}

Money estimate_cost(const Job& job, int e, const SchedulerState& state) {
    return scale_to_period(current_sharing_cost(job, e, state), job, state);
}

double gain_increment(const Job& job, int e, const SchedulerState& state) {
    return score(job, e, state, /*strict=*/true).increment;
}

Decision decide(const Job& job, SchedulerState& state) {
    if (job.arrival < state.last_arrival)
        throw OrderingError(fmt::format("job {} arrives at {} after a decision at slot {}", job.id, job.arrival,
                                        state.last_arrival));
    state.last_arrival = job.arrival;
    ++state.arrived;
    state.observe(job);

    Scored best;
    int best_e = 0;
    for (int e = 1; e <= job.max_exec_time(); ++e) {
        Scored s = score(job, e, state, /*strict=*/false);
        if (s.plan.feasible && (best_e == 0 || s.increment > best.increment)) {
            best = std::move(s);
            best_e = e;
        }
    }

    Decision d;
    d.e_star = best_e;
    if (best_e > 0) {
        d.est_cost = best.phi_hat;
        d.increment = best.increment;
        d.accepted = state.options.accept_all || best.increment >= 0.0;
    }

    if (state.options.cost_basis == CostBasis::all_arrived && best_e > 0) {
        commit_plan(best.plan, job.id, state.shadow_ledger, nullptr);
        state.shadow_cost += best.plan.marginal_purchase_cost;
        state.shadow_weight_sum += best.w;
    }

    if (d.accepted) {
        d.payment = evaluate_value(job, best_e);
        // Re-plan against the ledger of actually accepted jobs.
        const Plan actual = plan_schedule(job, best_e, state.ledger, state.catalog);
        if (!actual.feasible) throw std::logic_error("re-planned schedule became infeasible");
        commit_plan(actual, job.id, state.ledger, &state.allocations);
        state.committed_cost += actual.marginal_purchase_cost;
        state.weight_sum += best.w;
        state.accepted.push_back({job.id, best_e, d.payment});
    }

    state.records.push_back({job.id, job.arrival, d.accepted, d.accepted ? best_e : 0, d.payment, d.est_cost,
                             d.increment});
    return d;
}

RunResult run_online(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                     const SchedulerOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    SchedulerState state(config, catalog, options);
    for (const auto& job : jobs) decide(job, state);

    RunResult result;
    result.schedule = make_schedule(state.ledger, state.accepted, state.allocations);
    result.outcome.algorithm = "online";
    result.outcome.per_job = std::move(state.records);
    finalize_outcome(result.outcome, result.schedule, static_cast<int>(jobs.size()), catalog, config);
    result.outcome.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace ppsched
