#include "mpfj/spec_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mpfj {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required, const std::string& where) {
  if (!obj.is_object()) throw SpecFormatError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) throw SpecFormatError(where + ": unknown key \"" + key + "\"");
  for (const char* key : required)
    if (!obj.contains(key)) throw SpecFormatError(where + ": missing key \"" + key + "\"");
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SpecFormatError(where + ": expected a number");
  return j.get<double>();
}

std::uint64_t seed(const json& obj, const std::string& where) {
  if (!obj.contains("seed")) return 0;
  const json& j = obj.at("seed");
  if (!j.is_number_unsigned()) throw SpecFormatError(where + ".seed: expected an unsigned integer");
  return j.get<std::uint64_t>();
}

std::size_t positive_index(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
    throw SpecFormatError(where + ": expected a positive integer");
  return static_cast<std::size_t>(j.get<std::uint64_t>());
}

ServiceTimeSource parse_source(const json& obj, const std::string& where) {
  if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string())
    throw SpecFormatError(where + ": service needs a string \"kind\"");
  const std::string kind = obj.at("kind").get<std::string>();
  if (kind == "constant") {
    require_keys(obj, {"kind", "value"}, {"value"}, where);
    return ServiceTimeSource::constant(number(obj.at("value"), where + ".value"));
  }
  if (kind == "explicit") {
    require_keys(obj, {"kind", "values", "on_exhaust"}, {"values"}, where);
    if (!obj.at("values").is_array()) throw SpecFormatError(where + ".values: expected an array");
    std::vector<double> values;
    for (const auto& v : obj.at("values")) values.push_back(number(v, where + ".values"));
    ExhaustPolicy policy = ExhaustPolicy::error;
    if (obj.contains("on_exhaust")) {
      const json& p = obj.at("on_exhaust");
      if (p == "wrap") {
        policy = ExhaustPolicy::wrap;
      } else if (p != "error") {
        throw SpecFormatError(where + ".on_exhaust: expected \"error\" or \"wrap\"");
      }
    }
    return ServiceTimeSource::sequence(std::move(values), policy);
  }
  if (kind == "uniform") {
    require_keys(obj, {"kind", "lo", "hi", "seed"}, {"lo", "hi"}, where);
    return ServiceTimeSource::uniform(number(obj.at("lo"), where + ".lo"),
                                      number(obj.at("hi"), where + ".hi"), seed(obj, where));
  }
  if (kind == "exponential") {
    require_keys(obj, {"kind", "rate", "seed"}, {"rate"}, where);
    return ServiceTimeSource::exponential(number(obj.at("rate"), where + ".rate"),
                                          seed(obj, where));
  }
  if (kind == "strided") {
    require_keys(obj, {"kind", "stride", "offset", "source"}, {"stride", "offset", "source"},
                 where);
    return ServiceTimeSource::strided(parse_source(obj.at("source"), where + ".source"),
                                      positive_index(obj.at("stride"), where + ".stride"),
                                      positive_index(obj.at("offset"), where + ".offset"));
  }
  throw SpecFormatError(where + ": unknown service kind \"" + kind + "\"");
}

json source_to_json(const ServiceTimeSource& source) {
  json out;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstantService>) {
          out = {{"kind", "constant"}, {"value", k.value}};
        } else if constexpr (std::is_same_v<K, ExplicitService>) {
          out = {{"kind", "explicit"},
                 {"values", k.values},
                 {"on_exhaust", k.on_exhaust == ExhaustPolicy::wrap ? "wrap" : "error"}};
        } else if constexpr (std::is_same_v<K, UniformService>) {
          out = {{"kind", "uniform"}, {"lo", k.lo}, {"hi", k.hi}, {"seed", k.seed}};
        } else if constexpr (std::is_same_v<K, ExponentialService>) {
          out = {{"kind", "exponential"}, {"rate", k.rate}, {"seed", k.seed}};
        } else {
          out = {{"kind", "strided"},
                 {"stride", k.stride},
                 {"offset", k.offset},
                 {"source", source_to_json(*k.source)}};
        }
      },
      source.kind());
  return out;
}

}  // namespace

NetworkSpec parse_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecFormatError(std::string("spec is not valid JSON: ") + e.what());
  }
  require_keys(doc, {"name", "nodes", "arcs", "service"}, {"nodes", "arcs"}, "spec");

  NetworkSpec spec;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw SpecFormatError("spec.name: expected a string");
    spec.name = doc.at("name").get<std::string>();
  }

  const json& nodes = doc.at("nodes");
  if (!nodes.is_array() || nodes.empty()) throw SpecFormatError("spec.nodes: expected a non-empty array");
  const std::size_t n = nodes.size();
  spec.node_count = n;
  spec.initial_buffer.resize(n);
  spec.service.resize(n);
  std::vector<bool> seen(n, false);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const std::string where = "spec.nodes[" + std::to_string(idx) + "]";
    const json& node = nodes[idx];
    require_keys(node, {"id", "initial_buffer"}, {"id", "initial_buffer"}, where);
    const std::size_t id = positive_index(node.at("id"), where + ".id");
    if (id > n) throw SpecFormatError(where + ".id: " + std::to_string(id) + " exceeds node count");
    if (seen[id - 1]) throw SpecFormatError(where + ".id: duplicate id " + std::to_string(id));
    seen[id - 1] = true;
    const json& r = node.at("initial_buffer");
    if (r == "inf") {
      spec.initial_buffer[id - 1] = InitialBuffer::infinite();
    } else if (r.is_number_unsigned() && r.get<std::uint64_t>() <= UINT32_MAX) {
      spec.initial_buffer[id - 1] = InitialBuffer::of(r.get<std::uint32_t>());
    } else {
      throw SpecFormatError(where + ".initial_buffer: expected a nonnegative integer or \"inf\"");
    }
  }

  const json& arcs = doc.at("arcs");
  if (!arcs.is_array()) throw SpecFormatError("spec.arcs: expected an array");
  for (std::size_t idx = 0; idx < arcs.size(); ++idx) {
    const std::string where = "spec.arcs[" + std::to_string(idx) + "]";
    const json& a = arcs[idx];
    if (!a.is_array() || a.size() != 2) throw SpecFormatError(where + ": expected [from, to]");
    spec.arcs.push_back({positive_index(a[0], where) - 1, positive_index(a[1], where) - 1});
  }

  if (doc.contains("service")) {
    const json& service = doc.at("service");
    if (!service.is_object()) throw SpecFormatError("spec.service: expected an object");
    for (const auto& [key, value] : service.items()) {
      const std::string where = "spec.service[\"" + key + "\"]";
      std::size_t used = 0;
      unsigned long id = 0;
      try {
        id = std::stoul(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != key.size() || id == 0 || id > n)
        throw SpecFormatError(where + ": key must be a node id in 1.." + std::to_string(n));
      spec.service[id - 1] = parse_source(value, where);
    }
  }
  return spec;
}

NetworkSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecFormatError("cannot open spec file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string dump_spec(const NetworkSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["nodes"] = json::array();
  for (std::size_t i = 0; i < spec.node_count; ++i) {
    const InitialBuffer r = spec.initial_buffer.at(i);
    json node = {{"id", i + 1}};
    if (r.is_infinite()) {
      node["initial_buffer"] = "inf";
    } else {
      node["initial_buffer"] = r.count();
    }
    doc["nodes"].push_back(node);
  }
  doc["arcs"] = json::array();
  for (const Arc& a : spec.arcs) doc["arcs"].push_back({a.from + 1, a.to + 1});
  json service = json::object();
  for (std::size_t i = 0; i < spec.service.size(); ++i)
    if (spec.service[i]) service[std::to_string(i + 1)] = source_to_json(*spec.service[i]);
  if (!service.empty()) doc["service"] = service;
  return doc.dump(2) + "\n";
}

}  // namespace mpfj
