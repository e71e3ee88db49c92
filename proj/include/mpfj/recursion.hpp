#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "mpfj/compiler.hpp"
#include "mpfj/implicit.hpp"
#include "mpfj/trace.hpp"

namespace mpfj {

enum class StepMethod {
  // d(k) = sum_m T_m(k) d(k-m), evaluated right to left as matrix-vector
  // products over the sparse routing arcs.
  explicit_form,
  // Solve d(k) = U d(k) + v with U = D G_0' per step.
  implicit_form,
  // d^(k) = T^(k) d^(k-1) over the stacked state (d(k), ..., d(k-M+1)).
  extended_form,
};

const char* method_name(StepMethod method);

// One step of the explicit state equation. recent[m - 1] holds d(k - m) for
// m = 1..M; service_row holds tau_1k..tau_nk.
template <class T>
StateVector<T> step(const CompiledTransition& ct, std::span<const StateVector<T>> recent,
                    std::span<const T> service_row) {
  const RoutingMatrices& routing = ct.routing();
  const std::size_t n = routing.order();
  if (recent.size() != routing.memory_depth() || service_row.size() != n)
    throw DimensionError("step: history or service row has the wrong size");

  // w = (E + G_1') d(k-1) + sum_{m>=2} G_m' d(k-m)
  StateVector<T> w = recent[0];
  for (std::size_t m = 1; m <= routing.memory_depth(); ++m)
    for (const Arc& a : routing.arcs(m)) w[a.to] = oplus(w[a.to], recent[m - 1][a.from]);

  // w = D w
  for (std::size_t i = 0; i < n; ++i) w[i] = otimes(MaxPlus<T>(service_row[i]), w[i]);

  // w = (E + D G_0')^p w
  for (std::size_t q = 0; q < routing.longest_path(); ++q) {
    StateVector<T> next = w;
    for (const Arc& a : routing.arcs(0))
      next[a.to] = oplus(next[a.to], otimes(MaxPlus<T>(service_row[a.to]), w[a.from]));
    w = std::move(next);
  }
  return w;
}

// Same step through the implicit form: U = D G_0',
// v = D d(k-1) + D sum_{m>=1} G_m' d(k-m), then solve_implicit.
template <class T>
StateVector<T> step_implicit(const RoutingMatrices& routing,
                             std::span<const StateVector<T>> recent,
                             std::span<const T> service_row) {
  const std::size_t n = routing.order();
  if (recent.size() != routing.memory_depth() || service_row.size() != n)
    throw DimensionError("step_implicit: history or service row has the wrong size");
  std::vector<MaxPlus<T>> diag_entries;
  for (T x : service_row) diag_entries.emplace_back(x);
  const auto diag = Matrix<MaxPlus<T>>::diagonal(diag_entries);

  const auto u = otimes(diag, routing.matrix<MaxPlus<T>>(0).transpose());
  StateVector<T> arrivals = epsilon_state<T>(n);
  for (std::size_t m = 1; m <= routing.memory_depth(); ++m)
    arrivals = oplus(arrivals, otimes(routing.matrix<MaxPlus<T>>(m).transpose(), recent[m - 1]));
  const auto v = oplus(otimes(diag, recent[0]), otimes(diag, arrivals));
  return solve_implicit(u, v);
}

// Iterates the recursion from d(0) = 0, d(k) = eps for k < 0, up to d(K).
// The service table must cover K steps when K >= 1.
template <class T>
DepartureTrace<T> run(const CompiledTransition& ct, const ServiceTimeTable<T>& table,
                      std::size_t horizon, StepMethod method = StepMethod::explicit_form) {
  const auto started = std::chrono::steady_clock::now();
  const std::size_t n = ct.size();
  const std::size_t depth = ct.memory_depth();
  if (horizon > 0 && (table.horizon() < horizon || table.nodes() != n))
    throw DimensionError("run: service table does not cover the horizon");

  DepartureTrace<T> trace;
  trace.nodes = n;
  trace.history.reserve(horizon + 1);
  trace.history.push_back(zero_state<T>(n));

  // recent[m - 1] = d(k - m)
  std::vector<StateVector<T>> recent(depth, epsilon_state<T>(n));
  recent[0] = zero_state<T>(n);
  StateVector<T> stacked;
  for (const auto& d : recent) stacked.insert(stacked.end(), d.begin(), d.end());

  for (std::size_t k = 1; k <= horizon; ++k) {
    const auto row = table.row(k);
    StateVector<T> next;
    switch (method) {
      case StepMethod::explicit_form:
        next = step<T>(ct, recent, row);
        break;
      case StepMethod::implicit_form:
        next = step_implicit<T>(ct.routing(), recent, row);
        break;
      case StepMethod::extended_form:
        stacked = otimes(ct.extended_at<T>(row), stacked);
        next.assign(stacked.begin(), stacked.begin() + static_cast<std::ptrdiff_t>(n));
        break;
    }
    recent.pop_back();
    recent.insert(recent.begin(), next);
    trace.history.push_back(std::move(next));
  }

  trace.meta.network = ct.network().name();
  trace.meta.backend = backend_name<T>();
  trace.meta.method = method_name(method);
  for (const auto& source : ct.network().spec().service)
    trace.meta.service.push_back(source ? source->describe() : "none");
  trace.meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return trace;
}

// Validates, compiles, realizes service times and runs.
template <class T>
DepartureTrace<T> run(const NetworkSpec& spec, std::size_t horizon,
                      StepMethod method = StepMethod::explicit_form) {
  const CompiledTransition ct = compile(spec);
  const auto table = realize_service<T>(ct.network(), std::max<std::size_t>(horizon, 1));
  return run<T>(ct, table, horizon, method);
}

}  // namespace mpfj
