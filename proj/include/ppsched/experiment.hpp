#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ppsched/baselines.hpp"
#include "ppsched/online.hpp"
#include "ppsched/oracle.hpp"
#include "ppsched/workload.hpp"

namespace ppsched {

/// Deterministic seed derivation (splitmix64 over the parts).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts);

// ---------------------------------------------------------------------------
// Tiny instances for the exact oracle

struct TinySpec {
    int min_jobs = 1;
    int max_jobs = 6;
    Slot min_T = 4;
    Slot max_T = 12;
    int types = 2;
    int max_E = 4;
    int demand_hi = 8;
    int dop_lo = 2;
    int dop_hi = 12;
    int markup_lo = 2;  // integer v_max in [lo, hi] x the cheapest covering cost
    int markup_hi = 6;
};

struct TinyInstance {
    std::vector<Job> jobs;
    SimConfig config;
    InstanceCatalog catalog;
};

/// Random instance inside the default oracle limits. Values are integers and
/// the catalog is the first `types` entries of the default catalog, so every
/// objective value is a short exact sum. rev_star is Σ v_max, n_est is n.
TinyInstance gen_tiny_instance(std::uint64_t seed, const TinySpec& spec = {});

// ---------------------------------------------------------------------------
// Calibration from a previous period

struct Calibration {
    Money rev_star = 1.0;
    double n_est = 1.0;
    Money f_total_est = 0.0;
};

/// Number of previous-period workloads averaged by calibration.
inline constexpr int kCalibrationPeriods = 5;

/// Runs on `periods` workloads drawn from `spec`, the first with `seed`:
/// rev_star is the revenue bound (θ = 1, REV* = 1) of the first workload,
/// n_est the expected user count and f_total_est the mean purchase cost of
/// accepting every feasible job, refined by `rounds` fixed-point passes.
Calibration calibrate(const GenSpec& spec, const SimConfig& base, std::uint64_t seed, int rounds = 2,
                      int periods = kCalibrationPeriods);

/// SimConfig for a synthetic workload: horizon T + e_max, remaining fields from base.
SimConfig sim_config_for(const GenSpec& spec, const SimConfig& base, const Calibration& cal);

// ---------------------------------------------------------------------------
// Trials

struct TrialOptions {
    std::vector<BaselineKind> baselines;
    bool bound = true;    // Lagrangian LP bound as the optimum stand-in
    bool audit = true;    // audit every schedule
    SchedulerOptions scheduler;
};

struct AlgorithmResult {
    Outcome outcome;
    bool audit_pass = true;
};

struct TrialResult {
    int n = 0;
    AlgorithmResult online;
    std::vector<AlgorithmResult> baselines;  // same order as TrialOptions::baselines
    std::optional<double> bound_obj;         // optimum stand-in under the trial's θ
    Money est_cost_sum = 0.0;                // Σ φ̂^{e*} over all users
    Money value_min_sum = 0.0;
    Money value_max_sum = 0.0;
};

TrialResult run_trial(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                      const TrialOptions& options, std::uint64_t seed);

/// Runs fn(0..count-1) on `threads` workers (0: hardware concurrency).
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

// ---------------------------------------------------------------------------
// Experiments

enum class ExperimentId { exp1, exp2, exp3, exp4, exp5, custom };
ExperimentId parse_experiment_id(const std::string& name);
std::string to_string(ExperimentId id);

/// Which field a sweep varies.
enum class SweepVar { users_per_slot, e_max, theta, T };
SweepVar parse_sweep_var(const std::string& name);
std::string to_string(SweepVar var);

struct ExperimentSpec {
    ExperimentId id = ExperimentId::custom;
    SweepVar sweep_var = SweepVar::users_per_slot;
    std::vector<double> sweep_values;
    std::vector<ArrivalDist> distributions{ArrivalDist::normal};
    int repeats = 20;
    GenSpec gen;
    SimConfig sim;  // theta, alpha, tau; T and calibrated fields are filled per cell
    std::optional<std::string> trace_path;
    std::optional<TraceMapping> trace_mapping;
    std::vector<BaselineKind> baselines;
    bool bound = true;
    bool oracle = false;  // exact solver on tiny instances (exp4)
    std::vector<int> oracle_sizes{1, 2, 3, 4, 5, 6};
    int oracle_repeats = 5;
    CostBasis cost_basis = CostBasis::all_arrived;
    std::uint64_t seed = 1;
    int threads = 0;

    void validate() const;
    /// Spec for one of exp1..exp5 with defaults (T, sweep, baselines).
    static ExperimentSpec preset(ExperimentId id);
};

struct Stat {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation
    int count = 0;
};
Stat summarize(const std::vector<double>& xs);

struct AlgorithmSummary {
    std::string algorithm;
    Stat obj, rev, sat, wall_time;
    int audit_failures = 0;
};

/// Aggregate of all repeats in one (distribution, sweep value) cell.
struct CellSummary {
    ArrivalDist distribution = ArrivalDist::normal;
    double sweep_value = 0.0;
    Stat n;
    std::vector<AlgorithmSummary> algorithms;  // online first, then baselines
    Stat bound_obj;
    Stat ratio_obj;  // bound OBJ / online OBJ over trials with positive online OBJ
    Stat rho, delta;
    Stat est_cost_sum;
    std::optional<double> rev_bound;  // δ/(ρ-2) from mean ρ, δ
    std::optional<double> obj_bound;  // δ/(θ(ρ-2))
    Calibration calibration;

    const AlgorithmSummary& algorithm(const std::string& name) const;
};

struct OracleTiming {
    int n = 0;
    Stat online_time;
    Stat exact_time;
    double exact_time_geomean = 0.0;  // typical time, less sensitive to one slow instance
    Stat exact_nodes;
    int refused = 0;
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<CellSummary> cells;
    std::vector<OracleTiming> oracle_timings;
};

/// Runs every (distribution, sweep value, repeat) trial and aggregates in a
/// fixed order, so results depend only on the spec.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Writes results.tsv plus one plot-data file per figure panel into dir.
/// Returns the written paths.
std::vector<std::string> write_experiment(const ExperimentResult& result, const std::string& dir);

/// Fixed header of results.tsv.
const std::vector<std::string>& results_header();

}  // namespace ppsched
