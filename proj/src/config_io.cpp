#include "ppsched/config_io.hpp"

#include <fmt/format.h>
#include <fstream>
#include <initializer_list>

namespace ppsched {

using nlohmann::json;

namespace {

void require_keys(const json& j, const char* what, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ValidationError(fmt::format("{} must be a JSON object", what));
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw ValidationError(fmt::format("unknown key '{}' in {}", key, what));
    }
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(out);
    } catch (const json::exception& e) {
        throw ValidationError(fmt::format("bad value for '{}': {}", key, e.what()));
    }
}

}  // namespace

void to_json(json& j, const SimConfig& c) {
    j = json{{"T", c.T},           {"tau", c.tau},         {"theta", c.theta},
             {"alpha", c.alpha},   {"rev_star", c.rev_star}, {"n_est", c.n_est},
             {"f_total_est", c.f_total_est}, {"seed", c.seed}};
}

void from_json(const json& j, SimConfig& c) {
    require_keys(j, "SimConfig", {"T", "tau", "theta", "alpha", "rev_star", "n_est", "f_total_est", "seed"});
    read(j, "T", c.T);
    read(j, "tau", c.tau);
    read(j, "theta", c.theta);
    read(j, "alpha", c.alpha);
    read(j, "rev_star", c.rev_star);
    read(j, "n_est", c.n_est);
    read(j, "f_total_est", c.f_total_est);
    read(j, "seed", c.seed);
    c.validate();
}

void to_json(json& j, const InstanceCatalog& c) {
    j = json::array();
    for (const auto& t : c.types()) j.push_back({{"price", t.price}, {"performance", t.performance}});
}

void from_json(const json& j, InstanceCatalog& c) {
    if (!j.is_array()) throw ValidationError("catalog must be a JSON array");
    std::vector<InstanceType> types;
    for (const auto& e : j) {
        require_keys(e, "instance type", {"price", "performance"});
        InstanceType t;
        read(e, "price", t.price);
        read(e, "performance", t.performance);
        types.push_back(t);
    }
    c = InstanceCatalog(std::move(types));
    c.validate();
}

void to_json(json& j, const ValueModel& v) {
    j = json{{"markup_lo", v.markup_lo}, {"markup_hi", v.markup_hi}, {"beta", v.beta}};
}

void from_json(const json& j, ValueModel& v) {
    require_keys(j, "ValueModel", {"markup_lo", "markup_hi", "beta"});
    read(j, "markup_lo", v.markup_lo);
    read(j, "markup_hi", v.markup_hi);
    read(j, "beta", v.beta);
}

void to_json(json& j, const GenSpec& g) {
    j = json{{"arrival_dist", to_string(g.arrival_dist)},
             {"users_per_slot", g.users_per_slot},
             {"normal_stddev", g.normal_stddev},
             {"demand_lo", g.demand_lo},
             {"demand_hi", g.demand_hi},
             {"dop_lo", g.dop_lo},
             {"dop_hi", g.dop_hi},
             {"e_max", g.e_max},
             {"value_model", g.value_model},
             {"T", g.T},
             {"tau", g.tau},
             {"catalog", g.catalog},
             {"seed", g.seed}};
}

void from_json(const json& j, GenSpec& g) {
    require_keys(j, "GenSpec",
                 {"arrival_dist", "users_per_slot", "normal_stddev", "demand_lo", "demand_hi", "dop_lo", "dop_hi",
                  "e_max", "value_model", "T", "tau", "catalog", "seed"});
    if (j.contains("arrival_dist")) g.arrival_dist = parse_arrival_dist(j.at("arrival_dist").get<std::string>());
    read(j, "users_per_slot", g.users_per_slot);
    read(j, "normal_stddev", g.normal_stddev);
    read(j, "demand_lo", g.demand_lo);
    read(j, "demand_hi", g.demand_hi);
    read(j, "dop_lo", g.dop_lo);
    read(j, "dop_hi", g.dop_hi);
    read(j, "e_max", g.e_max);
    read(j, "value_model", g.value_model);
    read(j, "T", g.T);
    read(j, "tau", g.tau);
    read(j, "catalog", g.catalog);
    read(j, "seed", g.seed);
}

void to_json(json& j, const TraceMapping& m) {
    j = json{{"col_submit_time", m.col_submit_time},
             {"col_job_id", m.col_job_id},
             {"col_task_count", m.col_task_count},
             {"col_resource_request", m.col_resource_request},
             {"delimiter", std::string(1, m.delimiter)},
             {"has_header", m.has_header},
             {"slot_width", m.slot_width},
             {"demand_scale", m.demand_scale},
             {"e_max", m.e_max},
             {"value_model", m.value_model},
             {"T", m.T},
             {"tau", m.tau},
             {"catalog", m.catalog},
             {"seed", m.seed}};
}

void from_json(const json& j, TraceMapping& m) {
    require_keys(j, "TraceMapping",
                 {"col_submit_time", "col_job_id", "col_task_count", "col_resource_request", "delimiter",
                  "has_header", "slot_width", "demand_scale", "e_max", "value_model", "T", "tau", "catalog", "seed"});
    read(j, "col_submit_time", m.col_submit_time);
    read(j, "col_job_id", m.col_job_id);
    read(j, "col_task_count", m.col_task_count);
    read(j, "col_resource_request", m.col_resource_request);
    if (j.contains("delimiter")) {
        const auto d = j.at("delimiter").get<std::string>();
        if (d.size() != 1) throw ValidationError("delimiter must be a single character");
        m.delimiter = d[0];
    }
    read(j, "has_header", m.has_header);
    read(j, "slot_width", m.slot_width);
    read(j, "demand_scale", m.demand_scale);
    read(j, "e_max", m.e_max);
    read(j, "value_model", m.value_model);
    read(j, "T", m.T);
    read(j, "tau", m.tau);
    read(j, "catalog", m.catalog);
    read(j, "seed", m.seed);
}

void to_json(json& j, const ExperimentSpec& s) {
    std::vector<std::string> dists, baselines;
    for (auto d : s.distributions) dists.push_back(to_string(d));
    for (auto b : s.baselines) baselines.push_back(to_string(b));
    j = json{{"id", to_string(s.id)},
             {"sweep_var", to_string(s.sweep_var)},
             {"sweep_values", s.sweep_values},
             {"distributions", dists},
             {"repeats", s.repeats},
             {"gen", s.gen},
             {"sim", s.sim},
             {"baselines", baselines},
             {"bound", s.bound},
             {"oracle", s.oracle},
             {"oracle_sizes", s.oracle_sizes},
             {"oracle_repeats", s.oracle_repeats},
             {"cost_basis", s.cost_basis == CostBasis::committed ? "committed" : "all_arrived"},
             {"seed", s.seed},
             {"threads", s.threads}};
    if (s.trace_path) j["trace_path"] = *s.trace_path;
    if (s.trace_mapping) j["trace_mapping"] = *s.trace_mapping;
}

void from_json(const json& j, ExperimentSpec& s) {
    require_keys(j, "ExperimentSpec",
                 {"id", "sweep_var", "sweep_values", "distributions", "repeats", "gen", "sim", "trace_path",
                  "trace_mapping", "baselines", "bound", "oracle", "oracle_sizes", "oracle_repeats", "cost_basis",
                  "seed", "threads"});
    s = ExperimentSpec::preset(j.contains("id") ? parse_experiment_id(j.at("id").get<std::string>())
                                                : ExperimentId::custom);
    if (j.contains("sweep_var")) s.sweep_var = parse_sweep_var(j.at("sweep_var").get<std::string>());
    read(j, "sweep_values", s.sweep_values);
    if (j.contains("distributions")) {
        s.distributions.clear();
        for (const auto& d : j.at("distributions")) s.distributions.push_back(parse_arrival_dist(d.get<std::string>()));
    }
    read(j, "repeats", s.repeats);
    if (j.contains("gen")) {
        // Overlay onto the preset's generator rather than replacing it.
        json merged = s.gen;
        merged.merge_patch(j.at("gen"));
        s.gen = merged.get<GenSpec>();
    }
    if (j.contains("sim")) {
        json merged = s.sim;
        merged.merge_patch(j.at("sim"));
        s.sim = merged.get<SimConfig>();
    }
    if (j.contains("trace_path")) s.trace_path = j.at("trace_path").get<std::string>();
    if (j.contains("trace_mapping")) s.trace_mapping = j.at("trace_mapping").get<TraceMapping>();
    if (j.contains("baselines")) {
        s.baselines.clear();
        for (const auto& b : j.at("baselines")) s.baselines.push_back(parse_baseline_kind(b.get<std::string>()));
    }
    read(j, "bound", s.bound);
    read(j, "oracle", s.oracle);
    read(j, "oracle_sizes", s.oracle_sizes);
    read(j, "oracle_repeats", s.oracle_repeats);
    if (j.contains("cost_basis")) {
        const auto b = j.at("cost_basis").get<std::string>();
        if (b == "committed")
            s.cost_basis = CostBasis::committed;
        else if (b == "all_arrived")
            s.cost_basis = CostBasis::all_arrived;
        else
            throw ValidationError(fmt::format("unknown cost basis '{}'", b));
    }
    read(j, "seed", s.seed);
    read(j, "threads", s.threads);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot open {}", path));
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ValidationError(fmt::format("{}: {}", path, e.what()));
    }
}

}  // namespace ppsched
