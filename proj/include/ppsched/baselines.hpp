#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppsched/online.hpp"
#include "ppsched/types.hpp"

namespace ppsched {

enum class BaselineKind { pd_small, pd_large, edf, equal_opp, ontapra, dynalloc };

BaselineKind parse_baseline_kind(const std::string& name);
std::string to_string(BaselineKind kind);
const std::vector<BaselineKind>& all_baseline_kinds();

/// Kinds that serve jobs from a fixed pool instead of buying on demand.
bool uses_fixed_capacity(BaselineKind kind);

struct BaselineSpec {
    BaselineKind kind = BaselineKind::edf;
    std::vector<int> fixed_capacity;  // instances per type, held for the whole period
    double pd_gamma = 4.0;            // base of the posted-price curve
    std::uint64_t seed = 0;           // equal_opp's own draw

    void validate(int num_types) const;
};

/// ceil(headroom * Σ_i D_{i,j} / (m T)) per type: the workload in
/// instance-slots, split evenly over the m types and the T slots.
std::vector<int> demand_matched_capacity(const std::vector<Job>& jobs, const InstanceCatalog& catalog, Slot T,
                                         double headroom = 1.2);

/// Spec with the default capacity rule for the kind: demand-matched for edf
/// and ontapra, 0.5x and 2x of it for pd_small and pd_large.
BaselineSpec default_baseline_spec(BaselineKind kind, const std::vector<Job>& jobs, const InstanceCatalog& catalog,
                                   Slot T, std::uint64_t seed = 0);

/// Fixed pools are renewed every tau slots starting at slot 1, so the pool is
/// alive over the whole period and paid for under the same cost formula.
CapacityLedger fixed_pool_ledger(const std::vector<int>& capacity, Slot T, int tau);

/// p_j(u) = price_j (gamma^u - 1) / (gamma - 1) for utilisation u in [0,1].
Money posted_unit_price(Money price, double utilisation, double gamma);

RunResult run_baseline(const BaselineSpec& spec, const std::vector<Job>& jobs, const SimConfig& config,
                       const InstanceCatalog& catalog);

}  // namespace ppsched
