#pragma once

#include <vector>

#include "ppsched/ledger.hpp"
#include "ppsched/schedule.hpp"
#include "ppsched/types.hpp"

namespace ppsched {

struct PlanCell {
    int type = 0;
    Slot slot = 0;
    int count = 0;
};

/// Purchasing and allocation scheme for one job at one execution time.
struct Plan {
    int e = 0;
    bool feasible = false;
    std::vector<PlanCell> alloc;
    std::vector<PlanCell> new_purchases;
    Money marginal_purchase_cost = 0.0;
    int dop_used = 0;  // total instance-slots allocated
};

struct PlanOptions {
    enum class Order { efficiency, performance };
    /// Order for consuming free capacity and for choosing the purchase type.
    Order order = Order::efficiency;
    /// Fixed-capacity schedulers never buy; an unmet slot makes the plan infeasible.
    bool allow_purchase = true;
};

/// Spreads the job evenly over slots a+1..a+e.
///
/// Per slot, the lead type p is the first type in `order` that can still finish
/// the job within the DoP cap on its own. The slot's cumulative target follows
/// p's integer split of D_p over e slots (floor per slot, remainder to the
/// earliest slots). Free capacity is consumed first, walking `order`, then the
/// shortfall is bought as type p at that slot. Purchases made for earlier slots
/// of the same plan are reused by later ones.
Plan plan_schedule(const Job& job, int e, const CapacityLedger& ledger, const InstanceCatalog& catalog,
                   const PlanOptions& options = {});

/// Applies a feasible plan's purchases and commitments; appends its allocations.
void commit_plan(const Plan& plan, int job_id, CapacityLedger& ledger, std::vector<Allocation>* allocations);

/// Exact check that Σ_j units_j / D_j >= 1 using integer arithmetic.
bool covers_job(const std::vector<long long>& units_per_type, const std::vector<int>& demands);

}  // namespace ppsched
