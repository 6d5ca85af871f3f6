#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "ppsched/types.hpp"

namespace ppsched {

enum class ArrivalDist { normal, uniform, constant };

ArrivalDist parse_arrival_dist(const std::string& name);
std::string to_string(ArrivalDist dist);

/// Nonincreasing value tables tied to each job's list-price cost.
///
/// v^max = markup * list_cost with markup ~ U[markup_lo, markup_hi], where
/// list_cost is the cheapest DoP-admissible D_{i,j} * price_j / tau. Then
/// v^e = v^max * (1 - beta * (e - 1) / E_i), floored at 0.
struct ValueModel {
    double markup_lo = 0.1;
    double markup_hi = 5.0;
    double beta = 0.5;

    void validate() const;
};

struct GenSpec {
    ArrivalDist arrival_dist = ArrivalDist::normal;
    double users_per_slot = 10.0;
    double normal_stddev = -1.0;  // negative: users_per_slot / 3
    int demand_lo = 1;
    int demand_hi = 30;
    int dop_lo = 5;
    int dop_hi = 30;
    int e_max = 6;
    ValueModel value_model;
    Slot T = 200;  // arrival slots
    int tau = 6;
    InstanceCatalog catalog = InstanceCatalog::default_catalog();
    std::uint64_t seed = 0;

    void validate() const;
    /// Last slot any generated deadline can reach.
    Slot horizon() const { return T + e_max; }
};

/// Seeded synthetic workload, sorted by arrival, ids 1..n.
std::vector<Job> gen_synthetic(const GenSpec& spec);

struct TraceMapping {
    int col_submit_time = 0;
    int col_job_id = 1;
    int col_task_count = 2;
    int col_resource_request = 3;
    char delimiter = ',';
    bool has_header = false;
    double slot_width = 600.0;  // trace time units per slot
    double demand_scale = 1.0;  // resource request -> instance-slot units
    int e_max = 6;              // deadline rule: d = a + U{1..e_max}
    ValueModel value_model;
    Slot T = 200;  // arrival slots kept
    int tau = 6;
    InstanceCatalog catalog = InstanceCatalog::default_catalog();
    std::uint64_t seed = 0;

    void validate() const;
    Slot horizon() const { return T + e_max; }
};

struct TraceIngest {
    std::vector<Job> jobs;
    int dropped_rows = 0;  // rows whose arrival slot exceeds T
};

/// Maps trace rows to jobs. Rows that share a job id are merged (earliest
/// submit time, summed task counts and requests). Throws ValidationError
/// naming the line on unparseable rows and when no job survives.
TraceIngest ingest_trace(std::istream& in, const TraceMapping& mapping);
TraceIngest ingest_trace(const std::string& path, const TraceMapping& mapping);

/// Ceil(base / performance_j), at least 1, for every catalog type.
std::vector<int> scale_demands(int base_demand, const InstanceCatalog& catalog);

/// Value table for one job under the model; draws the markup from rng.
std::vector<Money> synthesize_values(const std::vector<int>& demands, int dop_cap, int exec_times,
                                     const InstanceCatalog& catalog, int tau, const ValueModel& model,
                                     std::mt19937_64& rng);

/// Validates every job against (T, m).
void validate_workload(const std::vector<Job>& jobs, Slot T, int num_types);

/// Workload file: '#' comment lines, then one tab-separated job per line:
///
///     id  arrival  deadline  D_1,...,D_m  dop_cap  v^1,...,v^E
void write_workload(std::ostream& out, const std::vector<Job>& jobs);
std::vector<Job> read_workload(std::istream& in);

}  // namespace ppsched
