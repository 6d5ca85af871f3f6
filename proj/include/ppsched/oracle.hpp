#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ppsched/schedule.hpp"
#include "ppsched/simplex.hpp"
#include "ppsched/types.hpp"

namespace ppsched {

struct OracleLimits {
    int max_jobs = 6;
    int max_slots = 12;
    int max_types = 2;
    int max_E = 4;
    int max_dop = 64;
    long long node_budget = 5000000;

    void validate() const;
};

/// Instance is larger than the exact solver accepts.
class OracleRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Schedule refers to a job that is not in the job list.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class AuditMode { dynamic_purchase, fixed_capacity };

struct AuditOptions {
    AuditMode mode = AuditMode::dynamic_purchase;
    std::vector<int> fixed_capacity;  // per type, used in fixed_capacity mode
};

/// Violations grouped by constraint family.
struct AuditReport {
    std::vector<std::string> coverage;       // Σ_j Σ_t y/D >= 1 for each accepted job
    std::vector<std::string> single_choice;  // at most one e per job, e in 1..d-a
    std::vector<std::string> dop;            // Σ_j Σ_t y <= k
    std::vector<std::string> capacity_def;   // c_j(t) is the tau-window purchase sum (or the fixed pool)
    std::vector<std::string> capacity_use;   // Σ_i y_{i,j}(t) <= c_j(t)
    std::vector<std::string> window;         // allocations only inside a+1..a+e of an accepted job
    std::vector<std::string> payment;        // p = v^e
    std::vector<std::string> integrality;    // nonnegative integers

    bool pass() const;
    std::size_t violation_count() const;
    /// One line per violation, prefixed with its family.
    std::vector<std::string> lines() const;
};

/// Checks every constraint of the integer program on a finished schedule.
/// Throws StructuralError when the schedule names an unknown job.
AuditReport audit_schedule(const Schedule& schedule, const std::vector<Job>& jobs, const SimConfig& config,
                           const AuditOptions& options = {});

struct ExactResult {
    Schedule schedule;
    Outcome outcome;
    long long nodes = 0;
    bool lower_bound_only = false;  // node budget ran out before the search finished
};

/// Maximises θ REV/REV* + (1-θ) SAT exactly by enumerating per-job choices.
/// With pruning, a branch is cut when its optimistic value (fixed jobs at
/// their values minus an LP lower bound on their covering cost, remaining
/// jobs at v_max for free) cannot beat the incumbent. Each full profile's
/// purchase cost is an exact covering integer program.
ExactResult solve_exact(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                        const OracleLimits& limits = {}, bool pruning = true);

/// Minimum purchase cost that serves every job i in `jobs` at execution time
/// e[i], with the matching allocations. Infinite cost when impossible.
struct CoverResult {
    Money cost = 0.0;
    bool feasible = false;
    std::vector<Allocation> allocations;
    Eigen::MatrixXi purchases;
};
CoverResult min_cost_cover(const std::vector<const Job*>& jobs, const std::vector<int>& e, const SimConfig& config,
                           const InstanceCatalog& catalog, bool relax = false);

/// Optimum of the LP relaxation solved with the dense simplex.
double lp_upper_bound(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                      const SimplexOptions& options = {});

struct LagrangianOptions {
    int iterations = 400;
    double step = 1.0;
};

/// Upper bound on the LP relaxation from its Lagrangian dual with capacity
/// rows dualised. Every iterate is dual feasible, so any stopping point is a
/// valid bound; this scales to instances the dense simplex cannot hold.
double lagrangian_upper_bound(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                              const LagrangianOptions& options = {});

}  // namespace ppsched
