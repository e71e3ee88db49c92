#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mpfj/matrix.hpp"

namespace mpfj {

template <class T>
using StateVector = Vector<MaxPlus<T>>;

template <class T>
StateVector<T> zero_state(std::size_t n) {
  return StateVector<T>(n, MaxPlus<T>::one());
}

template <class T>
StateVector<T> epsilon_state(std::size_t n) {
  return StateVector<T>(n, MaxPlus<T>::epsilon());
}

struct TraceMetadata {
  std::string network;
  std::string backend;  // "int" or "float"
  std::string method;
  std::vector<std::string> service;  // per-node source description
  std::optional<std::uint64_t> seed;
  double wall_seconds = 0.0;
};

// d(0), d(1), ..., d(K).
template <class T>
struct DepartureTrace {
  std::size_t nodes = 0;
  std::vector<StateVector<T>> history;
  TraceMetadata meta;

  std::size_t horizon() const noexcept { return history.empty() ? 0 : history.size() - 1; }
  const StateVector<T>& at(std::size_t k) const { return history.at(k); }
};

template <class T>
constexpr const char* backend_name() {
  return std::is_integral_v<T> ? "int" : "float";
}

std::string format_time(std::int64_t x);
std::string format_time(double x);

template <class T>
std::string format_scalar(const MaxPlus<T>& x) {
  return x.is_epsilon() ? std::string("eps") : format_time(x.value());
}

template <class T>
std::string format_state(const StateVector<T>& d) {
  std::string out = "[";
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? ", " : "") + format_scalar(d[i]);
  return out + "]";
}

// "k,node,departure_epoch", one row per (k, node), nodes one-based.
template <class T>
void write_trace_csv(std::ostream& os, const DepartureTrace<T>& trace) {
  os << "k,node,departure_epoch\n";
  for (std::size_t k = 0; k < trace.history.size(); ++k)
    for (std::size_t i = 0; i < trace.nodes; ++i)
      os << k << ',' << i + 1 << ',' << format_scalar(trace.history[k][i]) << '\n';
}

// Reads back what write_trace_csv produced. Throws std::runtime_error on
// malformed input.
template <class T>
DepartureTrace<T> read_trace_csv(std::istream& is);

void write_trace_metadata(std::ostream& os, const TraceMetadata& meta, std::size_t nodes,
                          std::size_t horizon);

struct TraceDiff {
  bool within_tolerance = true;
  double max_abs = 0.0;  // infinity when one side is eps and the other finite
  std::optional<std::size_t> first_k;
  std::optional<std::size_t> first_node;  // zero-based
};

// Node subsets are compared position-wise: a's node nodes_a[i] against b's
// nodes_b[i]. Empty lists mean all nodes.
template <class T>
TraceDiff compare_traces(const DepartureTrace<T>& a, const DepartureTrace<T>& b, double tolerance,
                         std::vector<std::size_t> nodes_a = {},
                         std::vector<std::size_t> nodes_b = {}) {
  if (nodes_a.empty())
    for (std::size_t i = 0; i < a.nodes; ++i) nodes_a.push_back(i);
  if (nodes_b.empty()) nodes_b = nodes_a;
  TraceDiff diff;
  const std::size_t steps = std::max(a.history.size(), b.history.size());
  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t idx = 0; idx < nodes_a.size(); ++idx) {
      double delta = std::numeric_limits<double>::infinity();
      if (k < a.history.size() && k < b.history.size()) {
        const auto& x = a.history[k].at(nodes_a[idx]);
        const auto& y = b.history[k].at(nodes_b[idx]);
        if (x.is_epsilon() && y.is_epsilon()) {
          delta = 0.0;
        } else if (x.is_finite() && y.is_finite()) {
          delta = std::abs(static_cast<double>(x.value()) - static_cast<double>(y.value()));
        }
      }
      diff.max_abs = std::max(diff.max_abs, delta);
      if (!(delta <= tolerance) && !diff.first_k) {
        diff.within_tolerance = false;
        diff.first_k = k;
        diff.first_node = nodes_a[idx];
      }
    }
  }
  return diff;
}

}  // namespace mpfj
