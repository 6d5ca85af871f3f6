#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppsched/ledger.hpp"
#include "ppsched/types.hpp"

namespace ppsched {

struct Acceptance {
    int job_id = 0;
    int e = 0;
    Money payment = 0.0;
};

struct Allocation {
    int job_id = 0;
    int type = 0;  // 0-based
    Slot slot = 0;
    int count = 0;
};

/// The decision set {x, y, r} of one run.
struct Schedule {
    std::vector<Acceptance> accepted;
    std::vector<Allocation> allocations;
    Eigen::MatrixXi purchases;  // types x T, column t-1 is slot t

    Schedule() = default;
    Schedule(int num_types, Slot T) : purchases(Eigen::MatrixXi::Zero(num_types, T)) {}

    Money total_payment() const;
    Money purchase_cost(const InstanceCatalog& catalog) const;
    std::optional<Acceptance> acceptance_of(int job_id) const;
};

/// Builds a schedule from a ledger's purchases plus the recorded acceptances and allocations.
Schedule make_schedule(const CapacityLedger& ledger, std::vector<Acceptance> accepted,
                       std::vector<Allocation> allocations);

/// Line-oriented schedule file:
///
///     # ppsched schedule v1 types=<m> slots=<T>
///     accept <job_id> <e> <payment>
///     alloc <job_id> <type> <slot> <count>      (type is 1-based)
///     purchase <type> <slot> <count>            (type is 1-based)
void write_schedule(std::ostream& out, const Schedule& schedule);
Schedule read_schedule(std::istream& in);

struct JobRecord {
    int job_id = 0;
    Slot arrival = 0;
    bool accepted = false;
    int e = 0;  // 0 when rejected
    Money payment = 0.0;
    Money est_cost = 0.0;
    double increment = 0.0;
};

/// Per-run results. per_job is in decision order.
struct Outcome {
    std::string algorithm;
    Money rev = 0.0;
    double sat = 0.0;
    double obj = 0.0;
    Money total_payment = 0.0;
    Money total_cost = 0.0;
    int accepted_count = 0;
    int rejected_count = 0;
    std::vector<JobRecord> per_job;
    double wall_time = 0.0;  // seconds
};

/// Decision log: tab-separated, one header line then one row per decision.
///
///     algorithm job_id arrival decision e_star payment est_cost increment
void write_decision_log(std::ostream& out, const Outcome& outcome);
/// Reads back the records written by write_decision_log.
std::vector<JobRecord> read_decision_log(std::istream& in);

void write_outcome_summary(std::ostream& out, const Outcome& outcome);

}  // namespace ppsched
