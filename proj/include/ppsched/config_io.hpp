#pragma once

#include <json.hpp>
#include <string>

#include "ppsched/experiment.hpp"
#include "ppsched/types.hpp"
#include "ppsched/workload.hpp"

namespace ppsched {

// JSON mirrors of the config structs. Keys are the C++ field names; unknown
// keys are rejected with a ValidationError, missing keys keep their defaults.

void to_json(nlohmann::json& j, const SimConfig& c);
void from_json(const nlohmann::json& j, SimConfig& c);

void to_json(nlohmann::json& j, const InstanceCatalog& c);
void from_json(const nlohmann::json& j, InstanceCatalog& c);

void to_json(nlohmann::json& j, const ValueModel& v);
void from_json(const nlohmann::json& j, ValueModel& v);

void to_json(nlohmann::json& j, const GenSpec& g);
void from_json(const nlohmann::json& j, GenSpec& g);

void to_json(nlohmann::json& j, const TraceMapping& m);
void from_json(const nlohmann::json& j, TraceMapping& m);

/// `id` selects a preset first; the remaining keys override it.
void to_json(nlohmann::json& j, const ExperimentSpec& s);
void from_json(const nlohmann::json& j, ExperimentSpec& s);

nlohmann::json read_json_file(const std::string& path);

template <class T>
T load_config(const std::string& path) {
    return read_json_file(path).get<T>();
}

}  // namespace ppsched
