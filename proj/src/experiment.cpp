#include "ppsched/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <mutex>
#include <thread>

#include "ppsched/metrics.hpp"

namespace ppsched {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
    const auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(master);
    for (std::uint64_t p : parts) h = mix(h ^ mix(p));
    return h;
}

// ---------------------------------------------------------------------------

TinyInstance gen_tiny_instance(std::uint64_t seed, const TinySpec& spec) {
    std::mt19937_64 rng(seed);
    const auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    TinyInstance inst;
    const auto def = InstanceCatalog::default_catalog().types();
    inst.catalog = InstanceCatalog(std::vector<InstanceType>(def.begin(), def.begin() + spec.types));
    inst.config.T = uniform(spec.min_T, spec.max_T);
    inst.config.tau = uniform(2, 6);
    inst.config.alpha = 0.5;
    static constexpr double kThetas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    inst.config.theta = kThetas[uniform(0, 4)];
    inst.config.seed = seed;

    const int n = uniform(spec.min_jobs, spec.max_jobs);
    for (int i = 0; i < n; ++i) {
        Job job;
        job.arrival = uniform(1, inst.config.T - 1);
        const int E = std::min(uniform(1, spec.max_E), inst.config.T - job.arrival);
        job.deadline = job.arrival + E;
        job.demands = scale_demands(uniform(1, spec.demand_hi), inst.catalog);
        const int min_d = *std::min_element(job.demands.begin(), job.demands.end());
        job.dop_cap = std::max(uniform(spec.dop_lo, spec.dop_hi), min_d);
        Money c = std::numeric_limits<Money>::infinity();
        for (int j = 0; j < inst.catalog.size(); ++j) {
            const int life = std::min(E, inst.config.tau);
            c = std::min(c, std::ceil(static_cast<double>(job.demands[j]) / life) * inst.catalog[j].price);
        }
        const int c_int = std::max(1, static_cast<int>(c));
        const int v_max = uniform(spec.markup_lo * c_int, spec.markup_hi * c_int);
        for (int e = 1; e <= E; ++e) job.values.push_back(std::floor(v_max * (1.0 - 0.5 * (e - 1) / E)));
        inst.jobs.push_back(std::move(job));
    }
    std::stable_sort(inst.jobs.begin(), inst.jobs.end(),
                     [](const Job& a, const Job& b) { return a.arrival < b.arrival; });
    Money value_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        inst.jobs[i].id = i + 1;
        value_sum += inst.jobs[i].max_value();
    }
    inst.config.rev_star = std::max<Money>(1.0, value_sum);
    inst.config.n_est = std::max(1, n);

    // Previous-period cost stand-in: accept-everything cost, iterated once.
    for (int round = 0; round < 2; ++round) {
        const auto r = run_online(inst.jobs, inst.config, inst.catalog, {CostBasis::committed, true});
        inst.config.f_total_est = r.outcome.total_cost;
    }
    return inst;
}

// ---------------------------------------------------------------------------

namespace {

Calibration calibrate_jobs(const std::vector<std::vector<Job>>& periods, const SimConfig& base,
                           const InstanceCatalog& catalog, double n_est, int rounds, CostBasis basis) {
    Calibration cal;
    SimConfig rev_cfg = base;
    rev_cfg.theta = 1.0;
    rev_cfg.rev_star = 1.0;
    const double bound = lagrangian_upper_bound(periods.front(), rev_cfg, catalog);
    cal.rev_star = bound > 1e-9 ? bound : 1.0;
    cal.n_est = std::max(1.0, n_est);

    SimConfig cfg = base;
    cfg.rev_star = cal.rev_star;
    cfg.n_est = cal.n_est;
    // The all-arrived basis tracks the cost of accepting everything, so accept-all
    // passes estimate it. The committed basis tracks the algorithm's own spend,
    // so after one accept-all seed pass it iterates on its realised cost.
    // Each round averages over the previous periods.
    for (int r = 0; r < rounds; ++r) {
        cfg.f_total_est = cal.f_total_est;
        const bool accept_all = basis == CostBasis::all_arrived || r == 0;
        Money sum = 0.0;
        for (const auto& jobs : periods) sum += run_online(jobs, cfg, catalog, {basis, accept_all}).outcome.total_cost;
        cal.f_total_est = sum / static_cast<double>(periods.size());
    }
    return cal;
}

}  // namespace

Calibration calibrate(const GenSpec& spec, const SimConfig& base, std::uint64_t seed, int rounds, int periods) {
    if (periods < 1) throw ValidationError("calibration needs at least one period");
    std::vector<std::vector<Job>> workloads;
    for (int k = 0; k < periods; ++k) {
        GenSpec s = spec;
        s.seed = k == 0 ? seed : derive_seed(seed, {static_cast<std::uint64_t>(k)});
        workloads.push_back(gen_synthetic(s));
    }
    SimConfig cfg = base;
    cfg.T = spec.horizon();
    cfg.tau = spec.tau;
    return calibrate_jobs(workloads, cfg, spec.catalog, spec.users_per_slot * spec.T, rounds, CostBasis::all_arrived);
}

SimConfig sim_config_for(const GenSpec& spec, const SimConfig& base, const Calibration& cal) {
    SimConfig cfg = base;
    cfg.T = spec.horizon();
    cfg.tau = spec.tau;
    cfg.rev_star = cal.rev_star;
    cfg.n_est = cal.n_est;
    cfg.f_total_est = cal.f_total_est;
    return cfg;
}

// ---------------------------------------------------------------------------

TrialResult run_trial(const std::vector<Job>& jobs, const SimConfig& config, const InstanceCatalog& catalog,
                      const TrialOptions& options, std::uint64_t seed) {
    TrialResult r;
    r.n = static_cast<int>(jobs.size());
    RunResult online = run_online(jobs, config, catalog, options.scheduler);
    if (options.audit) r.online.audit_pass = audit_schedule(online.schedule, jobs, config).pass();
    r.online.outcome = std::move(online.outcome);
    for (const auto& rec : r.online.outcome.per_job) r.est_cost_sum += rec.est_cost;
    for (const auto& job : jobs) {
        r.value_min_sum += job.min_value();
        r.value_max_sum += job.max_value();
    }

    for (std::size_t k = 0; k < options.baselines.size(); ++k) {
        const BaselineKind kind = options.baselines[k];
        const BaselineSpec spec = default_baseline_spec(kind, jobs, catalog, config.T, derive_seed(seed, {k, 77}));
        RunResult b = run_baseline(spec, jobs, config, catalog);
        AlgorithmResult ar;
        if (options.audit) {
            AuditOptions ao;
            if (uses_fixed_capacity(kind)) ao = {AuditMode::fixed_capacity, spec.fixed_capacity};
            ar.audit_pass = audit_schedule(b.schedule, jobs, config, ao).pass();
        }
        ar.outcome = std::move(b.outcome);
        r.baselines.push_back(std::move(ar));
    }
    if (options.bound) r.bound_obj = lagrangian_upper_bound(jobs, config, catalog);
    return r;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, std::max(1, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------

ExperimentId parse_experiment_id(const std::string& name) {
    static const std::map<std::string, ExperimentId> ids{{"exp1", ExperimentId::exp1}, {"exp2", ExperimentId::exp2},
                                                         {"exp3", ExperimentId::exp3}, {"exp4", ExperimentId::exp4},
                                                         {"exp5", ExperimentId::exp5}, {"custom", ExperimentId::custom}};
    const auto it = ids.find(name);
    if (it == ids.end()) throw ValidationError(fmt::format("unknown experiment '{}'", name));
    return it->second;
}

std::string to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::exp1: return "exp1";
        case ExperimentId::exp2: return "exp2";
        case ExperimentId::exp3: return "exp3";
        case ExperimentId::exp4: return "exp4";
        case ExperimentId::exp5: return "exp5";
        case ExperimentId::custom: return "custom";
    }
    return "?";
}

SweepVar parse_sweep_var(const std::string& name) {
    if (name == "users_per_slot" || name == "n") return SweepVar::users_per_slot;
    if (name == "e_max" || name == "E") return SweepVar::e_max;
    if (name == "theta") return SweepVar::theta;
    if (name == "T") return SweepVar::T;
    throw ValidationError(fmt::format("unknown sweep variable '{}'", name));
}

std::string to_string(SweepVar var) {
    switch (var) {
        case SweepVar::users_per_slot: return "users_per_slot";
        case SweepVar::e_max: return "e_max";
        case SweepVar::theta: return "theta";
        case SweepVar::T: return "T";
    }
    return "?";
}

void ExperimentSpec::validate() const {
    if (repeats < 1) throw ValidationError("repeats must be >= 1");
    if (sweep_values.empty()) throw ValidationError("sweep values must be nonempty");
    if (distributions.empty()) throw ValidationError("at least one arrival distribution is required");
    if (trace_path && !trace_mapping) throw ValidationError("a trace source needs a trace mapping");
    if (trace_path && sweep_var == SweepVar::users_per_slot)
        throw ValidationError("users_per_slot cannot be swept over a trace workload");
    if (oracle && (oracle_sizes.empty() || oracle_repeats < 1))
        throw ValidationError("oracle timing needs sizes and repeats");
    for (int n : oracle_sizes)
        if (n < 1) throw ValidationError(fmt::format("oracle sizes must be >= 1, got {}", n));
    for (double v : sweep_values) {
        if (sweep_var == SweepVar::theta && !(v >= 0.0 && v <= 1.0))
            throw ValidationError(fmt::format("theta {} outside [0,1]", v));
        if (sweep_var != SweepVar::theta && !(v >= 0.0)) throw ValidationError("sweep values must be >= 0");
    }
    gen.validate();
}

ExperimentSpec ExperimentSpec::preset(ExperimentId id) {
    ExperimentSpec s;
    s.id = id;
    s.gen.T = 200;
    s.gen.e_max = 6;
    s.gen.users_per_slot = 10;
    const std::vector<double> users{2, 5, 8, 11, 14, 17, 20, 23, 26};
    switch (id) {
        case ExperimentId::exp1:
            s.sweep_var = SweepVar::users_per_slot;
            s.sweep_values = users;
            s.distributions = {ArrivalDist::normal, ArrivalDist::uniform, ArrivalDist::constant};
            break;
        case ExperimentId::exp2:
            s.sweep_var = SweepVar::e_max;
            s.sweep_values = {2, 6, 10, 14, 18, 22};
            break;
        case ExperimentId::exp3:
            s.sweep_var = SweepVar::theta;
            s.sweep_values = {1.0, 0.8, 0.6, 0.4, 0.2, 0.0};
            break;
        case ExperimentId::exp4:
            s.sweep_var = SweepVar::users_per_slot;
            s.sweep_values = users;
            s.bound = false;
            s.oracle = true;
            break;
        case ExperimentId::exp5:
            s.sweep_var = SweepVar::T;
            for (int T = 60; T <= 300; T += 20) s.sweep_values.push_back(T);
            s.baselines = all_baseline_kinds();
            break;
        case ExperimentId::custom:
            s.sweep_values = {10};
            break;
    }
    return s;
}

Stat summarize(const std::vector<double>& xs) {
    Stat s;
    s.count = static_cast<int>(xs.size());
    if (xs.empty()) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / s.count;
    if (s.count > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / (s.count - 1));
    }
    return s;
}

const AlgorithmSummary& CellSummary::algorithm(const std::string& name) const {
    for (const auto& a : algorithms)
        if (a.algorithm == name) return a;
    throw std::out_of_range(fmt::format("no algorithm '{}' in cell", name));
}

namespace {

struct CellPlan {
    ArrivalDist dist;
    double value;
    GenSpec gen;
    SimConfig base;
    std::optional<TraceMapping> mapping;
    Calibration cal;
    SimConfig config;
};

void apply_sweep(SweepVar var, double v, GenSpec& gen, SimConfig& sim, std::optional<TraceMapping>& mapping) {
    switch (var) {
        case SweepVar::users_per_slot: gen.users_per_slot = v; break;
        case SweepVar::e_max:
            gen.e_max = static_cast<int>(std::lround(v));
            if (mapping) mapping->e_max = gen.e_max;
            break;
        case SweepVar::theta: sim.theta = v; break;
        case SweepVar::T:
            gen.T = static_cast<Slot>(std::lround(v));
            if (mapping) mapping->T = gen.T;
            break;
    }
}

std::vector<Job> load_jobs(const CellPlan& cell, const ExperimentSpec& spec, std::uint64_t seed) {
    if (spec.trace_path) {
        TraceMapping m = *cell.mapping;
        m.seed = seed;
        return ingest_trace(*spec.trace_path, m).jobs;
    }
    GenSpec g = cell.gen;
    g.seed = seed;
    return gen_synthetic(g);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    result.spec = spec;

    std::vector<CellPlan> cells;
    for (std::size_t d = 0; d < spec.distributions.size(); ++d)
        for (double v : spec.sweep_values) {
            CellPlan c{spec.distributions[d], v, spec.gen, spec.sim, spec.trace_mapping, {}, {}};
            c.gen.arrival_dist = c.dist;
            apply_sweep(spec.sweep_var, v, c.gen, c.base, c.mapping);
            if (c.mapping) {
                c.gen.T = c.mapping->T;
                c.gen.e_max = c.mapping->e_max;
                c.gen.tau = c.mapping->tau;
                c.gen.catalog = c.mapping->catalog;
            }
            cells.push_back(std::move(c));
        }

    parallel_for(static_cast<int>(cells.size()), spec.threads, [&](int ci) {
        CellPlan& c = cells[ci];
        // Seeds depend on the distribution and repeat only, so every sweep value
        // sees the same random stream (common random numbers).
        const std::uint64_t cal_seed = derive_seed(spec.seed, {1, static_cast<std::uint64_t>(c.dist)});
        SimConfig cfg = c.base;
        cfg.T = c.gen.horizon();
        cfg.tau = c.gen.tau;
        std::vector<std::vector<Job>> periods{load_jobs(c, spec, cal_seed)};
        // A trace is one fixed period; synthetic cells draw several.
        for (int k = 1; !spec.trace_path && k < kCalibrationPeriods; ++k)
            periods.push_back(load_jobs(c, spec, derive_seed(cal_seed, {static_cast<std::uint64_t>(k)})));
        const double n_est =
            spec.trace_path ? static_cast<double>(periods.front().size()) : c.gen.users_per_slot * c.gen.T;
        c.cal = calibrate_jobs(periods, cfg, c.gen.catalog, n_est, 2, spec.cost_basis);
        c.config = sim_config_for(c.gen, c.base, c.cal);
    });

    const int R = spec.repeats;
    std::vector<TrialResult> trials(cells.size() * static_cast<std::size_t>(R));
    TrialOptions topt;
    topt.baselines = spec.baselines;
    topt.bound = spec.bound;
    topt.scheduler.cost_basis = spec.cost_basis;
    parallel_for(static_cast<int>(trials.size()), spec.threads, [&](int k) {
        const int ci = k / R;
        const std::uint64_t seed =
            derive_seed(spec.seed, {2, static_cast<std::uint64_t>(cells[ci].dist), static_cast<std::uint64_t>(k % R)});
        const auto jobs = load_jobs(cells[ci], spec, seed);
        SimConfig cfg = cells[ci].config;
        cfg.seed = seed;
        trials[k] = run_trial(jobs, cfg, cells[ci].gen.catalog, topt, seed);
    });

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const CellPlan& c = cells[ci];
        CellSummary cs;
        cs.distribution = c.dist;
        cs.sweep_value = c.value;
        cs.calibration = c.cal;
        const std::size_t n_algs = 1 + spec.baselines.size();
        std::vector<std::vector<double>> obj(n_algs), rev(n_algs), sat(n_algs), wall(n_algs);
        std::vector<int> audit_fail(n_algs, 0);
        std::vector<double> ns, bounds, ratios, rhos, deltas, est;
        for (int r = 0; r < R; ++r) {
            const TrialResult& t = trials[ci * R + r];
            ns.push_back(t.n);
            for (std::size_t a = 0; a < n_algs; ++a) {
                const AlgorithmResult& ar = a == 0 ? t.online : t.baselines[a - 1];
                obj[a].push_back(ar.outcome.obj);
                rev[a].push_back(ar.outcome.rev);
                sat[a].push_back(ar.outcome.sat);
                wall[a].push_back(ar.outcome.wall_time);
                if (!ar.audit_pass) ++audit_fail[a];
            }
            if (t.bound_obj) {
                bounds.push_back(*t.bound_obj);
                if (t.online.outcome.obj > 0.0) ratios.push_back(*t.bound_obj / t.online.outcome.obj);
            }
            est.push_back(t.est_cost_sum);
            if (t.est_cost_sum > 0.0) {
                rhos.push_back(t.value_min_sum / t.est_cost_sum);
                deltas.push_back(t.value_max_sum / t.est_cost_sum);
            }
        }
        for (std::size_t a = 0; a < n_algs; ++a) {
            AlgorithmSummary s;
            s.algorithm = a == 0 ? "online" : to_string(spec.baselines[a - 1]);
            s.obj = summarize(obj[a]);
            s.rev = summarize(rev[a]);
            s.sat = summarize(sat[a]);
            s.wall_time = summarize(wall[a]);
            s.audit_failures = audit_fail[a];
            cs.algorithms.push_back(std::move(s));
        }
        cs.n = summarize(ns);
        cs.bound_obj = summarize(bounds);
        cs.ratio_obj = summarize(ratios);
        cs.rho = summarize(rhos);
        cs.delta = summarize(deltas);
        cs.est_cost_sum = summarize(est);
        if (cs.rho.count > 0) {
            try {
                const Bounds b = theoretical_bounds(cs.rho.mean, cs.delta.mean, c.config.theta);
                cs.rev_bound = b.rev_bound;
                cs.obj_bound = b.obj_bound;
            } catch (const UndefinedBoundError&) {
            }
        }
        result.cells.push_back(std::move(cs));
    }

    if (spec.oracle) {
        // Each repeat draws one base instance at the largest size and a random job
        // order; size n takes the first n jobs of that order, so every size grows
        // the same instance without favouring early arrivals.
        const int largest = *std::max_element(spec.oracle_sizes.begin(), spec.oracle_sizes.end());
        std::vector<TinyInstance> bases;
        for (int r = 0; r < spec.oracle_repeats; ++r) {
            TinySpec ts;
            ts.min_jobs = ts.max_jobs = largest;
            ts.min_T = ts.max_T = 12;
            const std::uint64_t seed = derive_seed(spec.seed, {3, static_cast<std::uint64_t>(r)});
            bases.push_back(gen_tiny_instance(seed, ts));
            std::mt19937_64 rng(derive_seed(seed, {1}));
            std::shuffle(bases.back().jobs.begin(), bases.back().jobs.end(), rng);
        }
        for (const int n : spec.oracle_sizes) {
            OracleTiming ot;
            ot.n = n;
            std::vector<double> on, ex, nodes;
            for (const auto& base : bases) {
                std::vector<Job> jobs(base.jobs.begin(), base.jobs.begin() + n);
                std::stable_sort(jobs.begin(), jobs.end(),
                                 [](const Job& a, const Job& b) { return a.arrival < b.arrival; });
                const auto t0 = std::chrono::steady_clock::now();
                run_online(jobs, base.config, base.catalog);
                const auto t1 = std::chrono::steady_clock::now();
                try {
                    const auto exact = solve_exact(jobs, base.config, base.catalog, {}, /*pruning=*/false);
                    const auto t2 = std::chrono::steady_clock::now();
                    on.push_back(std::chrono::duration<double>(t1 - t0).count());
                    ex.push_back(std::chrono::duration<double>(t2 - t1).count());
                    nodes.push_back(static_cast<double>(exact.nodes));
                } catch (const OracleRefusal&) {
                    ++ot.refused;
                }
            }
            ot.online_time = summarize(on);
            ot.exact_time = summarize(ex);
            if (!ex.empty()) {
                double log_sum = 0.0;
                for (double t : ex) log_sum += std::log(std::max(t, 1e-9));
                ot.exact_time_geomean = std::exp(log_sum / static_cast<double>(ex.size()));
            }
            ot.exact_nodes = summarize(nodes);
            result.oracle_timings.push_back(ot);
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& results_header() {
    static const std::vector<std::string> h{
        "experiment", "distribution", "sweep_var", "sweep_value", "algorithm", "trials",      "n_mean",
        "obj_mean",   "obj_sd",       "rev_mean",  "rev_sd",      "sat_mean",  "sat_sd",      "wall_mean",
        "wall_sd",    "audit_failures", "bound_obj_mean", "ratio_obj_mean", "rho_mean", "delta_mean",
        "rev_bound",  "obj_bound",    "rev_star",  "f_total_est"};
    return h;
}

namespace {

std::string num(double v) { return fmt::format("{:.10g}", v); }
std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp));
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string join_tab(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "\t" : "") + v[i];
    return s + "\n";
}

}  // namespace

std::vector<std::string> write_experiment(const ExperimentResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    const ExperimentSpec& spec = result.spec;
    const std::string exp = to_string(spec.id);
    const std::string var = to_string(spec.sweep_var);

    std::string table = join_tab(results_header());
    for (const auto& c : result.cells)
        for (const auto& a : c.algorithms) {
            const bool online = a.algorithm == "online";
            table += join_tab({exp, to_string(c.distribution), var, num(c.sweep_value), a.algorithm,
                               std::to_string(a.obj.count), num(c.n.mean), num(a.obj.mean), num(a.obj.sd),
                               num(a.rev.mean), num(a.rev.sd), num(a.sat.mean), num(a.sat.sd), num(a.wall_time.mean),
                               num(a.wall_time.sd), std::to_string(a.audit_failures),
                               online && c.bound_obj.count ? num(c.bound_obj.mean) : "NA",
                               online && c.ratio_obj.count ? num(c.ratio_obj.mean) : "NA",
                               online && c.rho.count ? num(c.rho.mean) : "NA",
                               online && c.delta.count ? num(c.delta.mean) : "NA", online ? opt_num(c.rev_bound) : "NA",
                               online ? opt_num(c.obj_bound) : "NA", num(c.calibration.rev_star),
                               num(c.calibration.f_total_est)});
        }
    const auto results_path = fs::path(dir) / "results.tsv";
    write_atomic(results_path, table);
    written.push_back(results_path.string());

    // One plot-data file per (metric, distribution) panel: sweep value then one column per algorithm.
    using Getter = double (*)(const AlgorithmSummary&);
    const std::vector<std::pair<std::string, Getter>> metrics{
        {"obj", [](const AlgorithmSummary& a) { return a.obj.mean; }},
        {"rev", [](const AlgorithmSummary& a) { return a.rev.mean; }},
        {"sat", [](const AlgorithmSummary& a) { return a.sat.mean; }},
        {"wall", [](const AlgorithmSummary& a) { return a.wall_time.mean; }},
    };
    for (ArrivalDist dist : spec.distributions) {
        std::vector<const CellSummary*> rows;
        for (const auto& c : result.cells)
            if (c.distribution == dist) rows.push_back(&c);
        if (rows.empty()) continue;
        for (const auto& [name, get] : metrics) {
            std::vector<std::string> header{var};
            if (name == "wall") header.push_back("n_mean");
            for (const auto& a : rows.front()->algorithms) header.push_back(a.algorithm);
            if (name == "obj" && spec.bound) header.push_back("bound");
            std::string body = join_tab(header);
            for (const CellSummary* c : rows) {
                std::vector<std::string> line{num(c->sweep_value)};
                if (name == "wall") line.push_back(num(c->n.mean));
                for (const auto& a : c->algorithms) line.push_back(num(get(a)));
                if (name == "obj" && spec.bound) line.push_back(c->bound_obj.count ? num(c->bound_obj.mean) : "NA");
                body += join_tab(line);
            }
            const auto p = fs::path(dir) / fmt::format("{}_{}_{}.tsv", exp, name, to_string(dist));
            write_atomic(p, body);
            written.push_back(p.string());
        }
        if (spec.bound) {
            std::string body = join_tab({var, "ratio_obj_mean", "ratio_obj_sd", "rho_mean", "delta_mean", "rev_bound",
                                         "obj_bound"});
            for (const CellSummary* c : rows)
                body += join_tab({num(c->sweep_value), c->ratio_obj.count ? num(c->ratio_obj.mean) : "NA",
                                  c->ratio_obj.count ? num(c->ratio_obj.sd) : "NA",
                                  c->rho.count ? num(c->rho.mean) : "NA", c->delta.count ? num(c->delta.mean) : "NA",
                                  opt_num(c->rev_bound), opt_num(c->obj_bound)});
            const auto p = fs::path(dir) / fmt::format("{}_ratio_{}.tsv", exp, to_string(dist));
            write_atomic(p, body);
            written.push_back(p.string());
        }
    }
    if (!result.oracle_timings.empty()) {
        std::string body = join_tab({"n", "online_time_mean", "exact_time_mean", "exact_time_sd", "exact_time_geomean",
                                     "exact_nodes_mean", "refused"});
        for (const auto& o : result.oracle_timings)
            body += join_tab({std::to_string(o.n), num(o.online_time.mean), num(o.exact_time.mean),
                              num(o.exact_time.sd), num(o.exact_time_geomean), num(o.exact_nodes.mean), std::to_string(o.refused)});
        const auto p = fs::path(dir) / fmt::format("{}_oracle_runtime.tsv", exp);
        write_atomic(p, body);
        written.push_back(p.string());
    }
    return written;
}

}  // namespace ppsched
