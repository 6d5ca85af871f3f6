#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "ppsched/ledger.hpp"
#include "ppsched/planner.hpp"
#include "ppsched/schedule.hpp"
#include "ppsched/types.hpp"

namespace ppsched {

/// Thrown when jobs are fed to decide() out of arrival order.
class OrderingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Thrown by current_sharing_cost when all weights are zero but cost is not.
class DegenerateWeightsError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Which jobs the "current total cost" in the sharing rule covers.
enum class CostBasis {
    committed,    // jobs actually accepted so far
    all_arrived,  // every arrived job, each placed at its own argmax e, accepted or not
};

struct SchedulerOptions {
    CostBasis cost_basis = CostBasis::all_arrived;
    /// Accept every feasible job at its argmax e. Used to measure f(U) on a
    /// calibration workload.
    bool accept_all = false;
};

/// Live state of one online run.
struct SchedulerState {
    SimConfig config;
    InstanceCatalog catalog;
    SchedulerOptions options;

    CapacityLedger ledger;
    std::vector<Acceptance> accepted;
    std::vector<Allocation> allocations;
    double weight_sum = 0.0;  // Σ w^{e*} over accepted jobs
    Money committed_cost = 0.0;

    // Hypothetical world where every arrived job was placed (all_arrived basis).
    CapacityLedger shadow_ledger;
    double shadow_weight_sum = 0.0;
    Money shadow_cost = 0.0;

    // Normalisation bounds for weights, over jobs seen so far.
    int demand_min = std::numeric_limits<int>::max();
    int demand_max = std::numeric_limits<int>::min();
    int exec_bound = 0;
    int reference_type = 0;  // best performance/price type

    Slot last_arrival = 0;
    int arrived = 0;
    std::vector<JobRecord> records;

    SchedulerState(const SimConfig& config, const InstanceCatalog& catalog, SchedulerOptions options = {});

    /// Folds a job into the weight-normalisation bounds.
    void observe(const Job& job);
    /// Ledger whose cost the sharing rule splits (depends on cost basis).
    const CapacityLedger& basis_ledger() const;
    Money basis_cost() const;
    double basis_weight_sum() const;
};

Plan plan_schedule(const Job& job, int e, const SchedulerState& state);

/// w_i^e = α (D - Dmin)/(Dmax - Dmin) + (1-α) max(0, (E - e - 1)/(E - 1)).
/// Bounds include the job itself; a flat demand range gives a demand term of 1
/// and E = 1 gives a time term of 1.
double weight(const Job& job, int e, const SchedulerState& state);

/// φ = f_{i^e}(U) w / (Σ_{others} w + w), with f_{i^e}(U) = basis cost plus the
/// plan's marginal purchases.
Money current_sharing_cost(const Job& job, int e, const SchedulerState& state);

/// φ̂ = φ · f_total_est · a_i / (f(U_i) · T); φ itself when f(U_i) = 0.
Money estimate_cost(const Job& job, int e, const SchedulerState& state);
/// Same scaling applied to a precomputed φ.
Money scale_to_period(Money phi, const Job& job, const SchedulerState& state);

/// θ (v - φ̂)/REV* + (1-θ)/n; -inf when the plan is infeasible.
double gain_increment(const Job& job, int e, const SchedulerState& state);

struct Decision {
    bool accepted = false;
    int e_star = 0;  // 0 when no execution time is feasible
    Money payment = 0.0;
    Money est_cost = 0.0;
    double increment = -std::numeric_limits<double>::infinity();
};

/// One online step: score every e, take the argmax (smallest e on ties),
/// accept iff its gain increment is >= 0 and commit the plan.
Decision decide(const Job& job, SchedulerState& state);

struct RunResult {
    Outcome outcome;
    Schedule schedule;
};

/// Runs the online algorithm over jobs sorted by arrival.
RunResult run_online(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                     const SchedulerOptions& options = {});

}  // namespace ppsched
