// Copyright 2026 The evcharge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evcharge/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "evcharge/error.hpp"
#include "evcharge/tours.hpp"
#include "json.hpp"

namespace evcharge {
namespace {

using nlohmann::json;

void check_keys(const json& obj, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object())
    throw ConfigError(std::string(where) + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
  }
}

template <class T>
T get(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key))
    throw ConfigError(std::string(where) + ": missing key '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + ": bad value for '" + key + "'");
  }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, std::string_view where) {
  return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

const json& get_array(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key) || !obj.at(key).is_array())
    throw ConfigError(std::string(where) + ": '" + key + "' must be an array");
  return obj.at(key);
}

std::string at(std::string_view list, std::size_t i) {
  return std::string(list) + "[" + std::to_string(i) + "]";
}

Substation parse_substation(const json& j, const std::string& where) {
  check_keys(j, where,
             {"id", "rated_power_kw", "grid_type", "neighbors",
              "base_peak_loading", "base_profile_kw"});
  Substation s;
  s.id = get<int>(j, "id", where);
  s.rated_power_kw = get<double>(j, "rated_power_kw", where);
  s.type = parse_grid_type(get_or<std::string>(j, "grid_type", "residential", where));
  s.neighbors = get_or<std::vector<int>>(j, "neighbors", {}, where);
  const bool has_peak = j.contains("base_peak_loading");
  const bool has_knots = j.contains("base_profile_kw");
  if (has_peak == has_knots)
    throw ConfigError(where +
                      ": give exactly one of base_peak_loading, base_profile_kw");
  try {
    if (has_peak) {
      const double peak = get<double>(j, "base_peak_loading", where);
      if (!(peak >= 0.0)) throw ConfigError(where + ": base_peak_loading < 0");
      s.base = BaseProfile::standard(s.type, peak * s.rated_power_kw);
    } else {
      s.base = BaseProfile(
          get<std::vector<std::pair<double, double>>>(j, "base_profile_kw", where));
    }
  } catch (const ContractViolation& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return s;
}

Trip parse_trip(const json& j, const std::string& where) {
  check_keys(j, where, {"origin", "destination", "depart", "distance_km", "duration_s"});
  return Trip{get<int>(j, "origin", where), get<int>(j, "destination", where),
              get<std::int64_t>(j, "depart", where),
              get<double>(j, "distance_km", where),
              get<std::int64_t>(j, "duration_s", where)};
}

void parse_agents(const json& j, AgentParams& a) {
  const std::string where = "agents";
  check_keys(j, where,
             {"profile", "action_variant", "target", "utility", "gamma", "alpha",
              "price_min", "price_max", "price_step", "q_learning_rate",
              "q_discount", "q_epsilon", "q_initial"});
  a.profile = parse_profile(get_or<std::string>(j, "profile", "ConstantLoading", where));
  a.actions.variant =
      parse_action_variant(get_or<std::string>(j, "action_variant", "B", where));
  a.actions.target = parse_control_target(get_or<std::string>(j, "target", "Power", where));
  a.utility.variant =
      parse_utility_variant(get_or<std::string>(j, "utility", "Income", where));
  a.utility.gamma = get_or<double>(j, "gamma", a.utility.gamma, where);
  a.alpha = get_or<double>(j, "alpha", a.alpha, where);
  a.actions.price_min = get_or<double>(j, "price_min", a.actions.price_min, where);
  a.actions.price_max = get_or<double>(j, "price_max", a.actions.price_max, where);
  a.actions.price_step = get_or<double>(j, "price_step", a.actions.price_step, where);
  a.q.learning_rate = get_or<double>(j, "q_learning_rate", a.q.learning_rate, where);
  a.q.discount = get_or<double>(j, "q_discount", a.q.discount, where);
  a.q.epsilon = get_or<double>(j, "q_epsilon", a.q.epsilon, where);
  a.q.initial_value = get_or<double>(j, "q_initial", a.q.initial_value, where);
}

// Vehicles from a tours file produced by tours-extract.
void expand_tour_source(const json& j, const std::filesystem::path& base_dir,
                        ScenarioConfig& c) {
  const std::string where = "tour_source";
  check_keys(j, where,
             {"file", "edge_areas", "speed_kmh", "detour_factor", "battery_kwh",
              "consumption_kwh_per_km"});
  std::filesystem::path file = get<std::string>(j, "file", where);
  if (file.is_relative()) file = base_dir / file;
  const auto edge_areas =
      get<std::map<std::string, int>>(j, "edge_areas", where);
  const double speed = get_or<double>(j, "speed_kmh", 30.0, where);
  const double detour = get_or<double>(j, "detour_factor", 1.3, where);
  const double battery = get_or<double>(j, "battery_kwh", kDefaultBatteryKwh, where);
  const double consumption = get_or<double>(j, "consumption_kwh_per_km",
                                            kDefaultConsumptionKwhPerKm, where);
  if (!(speed > 0.0) || !(detour > 0.0))
    throw ConfigError(where + ": speed and detour factor must be > 0");

  std::ifstream in(file);
  if (!in) throw IoError("cannot open tours file " + file.string());
  const auto tours = read_tours(in);
  auto area_of = [&](const std::string& edge) {
    auto it = edge_areas.find(edge);
    if (it == edge_areas.end())
      throw ConfigError(where + ": edge '" + edge + "' has no area");
    if (it->second < 0 || static_cast<std::size_t>(it->second) >= c.areas.size())
      throw ConfigError(where + ": edge '" + edge + "' maps to unknown area");
    return it->second;
  };
  for (const auto& records : tours) {
    VehicleSpec v;
    v.id = static_cast<int>(c.vehicles.size());
    v.battery_kwh = battery;
    v.consumption_kwh_per_km = consumption;
    v.tour.vehicle_id = v.id;
    for (const auto& r : records) {
      Trip t;
      t.origin = area_of(r.from_edge);
      t.destination = area_of(r.to_edge);
      t.depart = r.depart;
      const auto& a = c.areas[static_cast<std::size_t>(t.origin)];
      const auto& b = c.areas[static_cast<std::size_t>(t.destination)];
      t.distance_km =
          std::max(0.5, detour * std::hypot(a.x_km - b.x_km, a.y_km - b.y_km));
      t.duration_s = std::max<std::int64_t>(
          60, static_cast<std::int64_t>(std::ceil(t.distance_km / speed * 3600.0)));
      v.tour.trips.push_back(t);
    }
    c.vehicles.push_back(std::move(v));
  }
}

json to_json(const Substation& s) {
  return json{{"id", s.id},
              {"rated_power_kw", s.rated_power_kw},
              {"grid_type", std::string(to_string(s.type))},
              {"neighbors", s.neighbors},
              {"base_profile_kw", s.base.knots()}};
}

}  // namespace

void ScenarioConfig::validate() const {
  if (duration_steps < 1) throw ConfigError("duration_steps must be >= 1");
  for (std::size_t i = 0; i < substations.size(); ++i) {
    const auto& s = substations[i];
    if (s.id != static_cast<int>(i))
      throw ConfigError(at("substations", i) + ": id must equal its index");
    s.validate();
    for (int n : s.neighbors) {
      if (n < 0 || static_cast<std::size_t>(n) >= substations.size())
        throw ConfigError(at("substations", i) + ": unknown neighbor " +
                          std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < areas.size(); ++i) {
    const auto& a = areas[i];
    if (a.id != static_cast<int>(i))
      throw ConfigError(at("areas", i) + ": id must equal its index");
    for (int w : a.walking) {
      if (w < 0 || static_cast<std::size_t>(w) >= areas.size() || w == a.id)
        throw ConfigError(at("areas", i) + ": bad walking neighbor " +
                          std::to_string(w));
    }
  }
  std::set<int> station_areas;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const auto& s = stations[i];
    if (s.id != static_cast<int>(i))
      throw ConfigError(at("stations", i) + ": id must equal its index");
    if (s.area < 0 || static_cast<std::size_t>(s.area) >= areas.size())
      throw ConfigError(at("stations", i) + ": unknown area");
    if (s.substation < 0 || static_cast<std::size_t>(s.substation) >= substations.size())
      throw ConfigError(at("stations", i) + ": unknown substation");
    if (s.spaces < 1) throw ConfigError(at("stations", i) + ": spaces must be >= 1");
    if (!station_areas.insert(s.area).second)
      throw ConfigError(at("stations", i) + ": area already has a station");
  }
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    const auto& v = vehicles[i];
    if (v.id != static_cast<int>(i))
      throw ConfigError(at("vehicles", i) + ": id must equal its index");
    if (!(v.battery_kwh > 0.0) || !(v.consumption_kwh_per_km > 0.0))
      throw ConfigError(at("vehicles", i) + ": battery and consumption must be > 0");
    v.tour.validate();
    for (const auto& t : v.tour.trips) {
      for (int a : {t.origin, t.destination}) {
        if (a < 0 || static_cast<std::size_t>(a) >= areas.size())
          throw ConfigError(at("vehicles", i) + ": trip references unknown area " +
                            std::to_string(a));
      }
    }
  }
  agents.actions.validate();
  if (!(agents.alpha >= 0.0) || !std::isfinite(agents.alpha))
    throw ConfigError("agents.alpha must be >= 0");
  if (!std::isfinite(agents.utility.gamma))
    throw ConfigError("agents.gamma must be finite");
  try {
    agents.q.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("agents: ") + e.what());
  }
  if (!(initial_price >= agents.actions.price_min - 1e-9 &&
        initial_price <= agents.actions.price_max + 1e-9))
    throw ConfigError("initial_price outside [price_min, price_max]");
  if (behavior.price_history < 1)
    throw ConfigError("vehicle_behavior.price_history must be >= 1");
}

ScenarioConfig parse_scenario(std::string_view json_text,
                              const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  check_keys(root, "scenario",
             {"schema_version", "duration_steps", "seed", "initial_price",
              "substations", "areas", "stations", "vehicles", "tour_source",
              "agents", "vehicle_behavior"});
  const int version = get<int>(root, "schema_version", "scenario");
  if (version != kScenarioSchemaVersion)
    throw ConfigError("unsupported schema_version " + std::to_string(version));

  ScenarioConfig c;
  c.duration_steps = get_or<std::int64_t>(root, "duration_steps",
                                          kDefaultDurationSteps, "scenario");
  c.seed = get_or<std::uint64_t>(root, "seed", 1, "scenario");
  c.initial_price = get_or<double>(root, "initial_price", kInitialPrice, "scenario");

  const auto& subs = get_array(root, "substations", "scenario");
  for (std::size_t i = 0; i < subs.size(); ++i)
    c.substations.push_back(parse_substation(subs[i], at("substations", i)));

  const auto& areas = get_array(root, "areas", "scenario");
  for (std::size_t i = 0; i < areas.size(); ++i) {
    const auto where = at("areas", i);
    check_keys(areas[i], where, {"id", "x_km", "y_km", "walking"});
    c.areas.push_back(Area{get<int>(areas[i], "id", where),
                           get_or<double>(areas[i], "x_km", 0.0, where),
                           get_or<double>(areas[i], "y_km", 0.0, where),
                           get_or<std::vector<int>>(areas[i], "walking", {}, where)});
  }

  const auto& stations = get_array(root, "stations", "scenario");
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const auto where = at("stations", i);
    check_keys(stations[i], where, {"id", "area", "substation", "spaces"});
    ChargingStation s;
    s.id = get<int>(stations[i], "id", where);
    s.area = get<int>(stations[i], "area", where);
    s.substation = get<int>(stations[i], "substation", where);
    s.spaces = get<int>(stations[i], "spaces", where);
    c.stations.push_back(s);
  }

  if (root.contains("vehicles")) {
    const auto& vehicles = get_array(root, "vehicles", "scenario");
    for (std::size_t i = 0; i < vehicles.size(); ++i) {
      const auto where = at("vehicles", i);
      check_keys(vehicles[i], where,
                 {"id", "battery_kwh", "consumption_kwh_per_km", "trips"});
      VehicleSpec v;
      v.id = get<int>(vehicles[i], "id", where);
      v.battery_kwh =
          get_or<double>(vehicles[i], "battery_kwh", kDefaultBatteryKwh, where);
      v.consumption_kwh_per_km = get_or<double>(
          vehicles[i], "consumption_kwh_per_km", kDefaultConsumptionKwhPerKm, where);
      v.tour.vehicle_id = v.id;
      const auto& trips = get_array(vehicles[i], "trips", where);
      for (std::size_t k = 0; k < trips.size(); ++k)
        v.tour.trips.push_back(parse_trip(trips[k], where + ".trips[" + std::to_string(k) + "]"));
      c.vehicles.push_back(std::move(v));
    }
  }
  if (root.contains("tour_source"))
    expand_tour_source(root.at("tour_source"), base_dir, c);

  if (root.contains("agents")) parse_agents(root.at("agents"), c.agents);
  if (root.contains("vehicle_behavior")) {
    const auto& b = root.at("vehicle_behavior");
    const std::string where = "vehicle_behavior";
    check_keys(b, where, {"charging", "diversion", "price_history"});
    c.behavior.charging =
        parse_charging_behavior(get_or<std::string>(b, "charging", "AlwaysLoad", where));
    c.behavior.diversion =
        parse_diversion_behavior(get_or<std::string>(b, "diversion", "DoNotDivert", where));
    const auto cap = get_or<std::int64_t>(b, "price_history",
                                          static_cast<std::int64_t>(kPriceHistoryCapacity), where);
    if (cap < 1) throw ConfigError(where + ".price_history must be >= 1");
    c.behavior.price_history = static_cast<std::size_t>(cap);
  }
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.parent_path());
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json root;
  root["schema_version"] = kScenarioSchemaVersion;
  root["duration_steps"] = c.duration_steps;
  root["seed"] = c.seed;
  root["initial_price"] = c.initial_price;
  root["substations"] = json::array();
  for (const auto& s : c.substations) root["substations"].push_back(to_json(s));
  root["areas"] = json::array();
  for (const auto& a : c.areas)
    root["areas"].push_back(
        {{"id", a.id}, {"x_km", a.x_km}, {"y_km", a.y_km}, {"walking", a.walking}});
  root["stations"] = json::array();
  for (const auto& s : c.stations)
    root["stations"].push_back({{"id", s.id},
                                {"area", s.area},
                                {"substation", s.substation},
                                {"spaces", s.spaces}});
  root["vehicles"] = json::array();
  for (const auto& v : c.vehicles) {
    json trips = json::array();
    for (const auto& t : v.tour.trips)
      trips.push_back({{"origin", t.origin},
                       {"destination", t.destination},
                       {"depart", t.depart},
                       {"distance_km", t.distance_km},
                       {"duration_s", t.duration_s}});
    root["vehicles"].push_back({{"id", v.id},
                                {"battery_kwh", v.battery_kwh},
                                {"consumption_kwh_per_km", v.consumption_kwh_per_km},
                                {"trips", std::move(trips)}});
  }
  const auto& a = c.agents;
  root["agents"] = {{"profile", std::string(to_string(a.profile))},
                    {"action_variant", std::string(to_string(a.actions.variant))},
                    {"target", std::string(to_string(a.actions.target))},
                    {"utility", std::string(to_string(a.utility.variant))},
                    {"gamma", a.utility.gamma},
                    {"alpha", a.alpha},
                    {"price_min", a.actions.price_min},
                    {"price_max", a.actions.price_max},
                    {"price_step", a.actions.price_step},
                    {"q_learning_rate", a.q.learning_rate},
                    {"q_discount", a.q.discount},
                    {"q_epsilon", a.q.epsilon},
                    {"q_initial", a.q.initial_value}};
  root["vehicle_behavior"] = {
      {"charging", std::string(to_string(c.behavior.charging))},
      {"diversion", std::string(to_string(c.behavior.diversion))},
      {"price_history", c.behavior.price_history}};
  return root.dump(1) + "\n";
}

ScenarioConfig with_parameter(const ScenarioConfig& config, std::string_view key,
                              std::string_view value_json) {
  json root = json::parse(scenario_to_json(config));
  json value;
  try {
    value = json::parse(value_json);
  } catch (const json::parse_error&) {
    throw ConfigError("parameter value for '" + std::string(key) +
                      "' is not a JSON literal");
  }
  json* node = &root;
  std::string_view rest = key;
  while (true) {
    const auto dot = rest.find('.');
    const std::string part(rest.substr(0, dot));
    if (part.empty() || !node->is_object())
      throw ConfigError("bad parameter key '" + std::string(key) + "'");
    if (dot == std::string_view::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    rest.remove_prefix(dot + 1);
  }
  return parse_scenario(root.dump());
}

}  // namespace evcharge
