#include "mpfj/trace.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mpfj {

namespace {

template <class T>
T parse_time(const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw std::runtime_error("trace CSV: bad departure epoch '" + text + "'");
  return value;
}

std::size_t parse_index(const std::string& text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::runtime_error("trace CSV: bad index '" + text + "'");
  return value;
}

}  // namespace

std::string format_time(std::int64_t x) { return std::to_string(x); }

std::string format_time(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
DepartureTrace<T> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "k,node,departure_epoch")
    throw std::runtime_error("trace CSV: missing header");
  DepartureTrace<T> trace;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string k_text, node_text, value_text;
    if (!std::getline(row, k_text, ',') || !std::getline(row, node_text, ',') ||
        !std::getline(row, value_text))
      throw std::runtime_error("trace CSV: malformed row '" + line + "'");
    const std::size_t k = parse_index(k_text);
    const std::size_t node = parse_index(node_text);
    if (node == 0) throw std::runtime_error("trace CSV: node ids are one-based");
    if (k == trace.history.size()) trace.history.emplace_back();
    if (k + 1 != trace.history.size() || node != trace.history.back().size() + 1)
      throw std::runtime_error("trace CSV: rows out of order at '" + line + "'");
    trace.history.back().push_back(value_text == "eps" ? MaxPlus<T>::epsilon()
                                                       : MaxPlus<T>(parse_time<T>(value_text)));
  }
  if (!trace.history.empty()) trace.nodes = trace.history.front().size();
  for (const auto& d : trace.history)
    if (d.size() != trace.nodes) throw std::runtime_error("trace CSV: ragged rows");
  return trace;
}

template DepartureTrace<std::int64_t> read_trace_csv<std::int64_t>(std::istream&);
template DepartureTrace<double> read_trace_csv<double>(std::istream&);

void write_trace_metadata(std::ostream& os, const TraceMetadata& meta, std::size_t nodes,
                          std::size_t horizon) {
  nlohmann::ordered_json doc;
  doc["network"] = meta.network;
  doc["nodes"] = nodes;
  doc["K"] = horizon;
  doc["backend"] = meta.backend;
  doc["method"] = meta.method;
  doc["service"] = meta.service;
  if (meta.seed) {
    doc["seed"] = *meta.seed;
  } else {
    doc["seed"] = nullptr;
  }
  doc["wall_seconds"] = meta.wall_seconds;
  os << doc.dump(2) << '\n';
}

}  // namespace mpfj
