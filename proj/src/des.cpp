#include "mpfj/des.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "mpfj/graph.hpp"

namespace mpfj {

namespace {

template <class T>
struct Event {
  T time;
  std::size_t rank;  // tie-break: position of the node in the zero-buffer topological order
  std::uint64_t sequence;
  std::size_t node;

  friend bool operator>(const Event& a, const Event& b) {
    return std::tie(a.time, a.rank, a.sequence) > std::tie(b.time, b.rank, b.sequence);
  }
};

template <class T>
using EventQueue = std::priority_queue<Event<T>, std::vector<Event<T>>, std::greater<>>;

struct NodeState {
  std::vector<std::size_t> staged;  // per predecessor, awaiting the join
  std::size_t buffer = 0;
  bool busy = false;
  std::size_t started = 0;
};

template <class T>
DepartureTrace<T> to_trace(const std::vector<std::vector<T>>& departures, std::size_t horizon) {
  DepartureTrace<T> trace;
  trace.nodes = departures.size();
  trace.history.assign(horizon + 1, zero_state<T>(departures.size()));
  for (std::size_t i = 0; i < departures.size(); ++i)
    for (std::size_t k = 1; k <= horizon; ++k)
      trace.history[k][i] = MaxPlus<T>(departures[i].at(k - 1));
  trace.meta.backend = backend_name<T>();
  trace.meta.method = "des";
  return trace;
}

}  // namespace

template <class T>
SimulationReport<T> simulate_detailed(const Network& net, const ServiceTimeTable<T>& table,
                                      std::size_t horizon) {
  const std::size_t n = net.size();
  if (horizon > 0 && (table.nodes() != n || table.horizon() < horizon))
    throw ServiceError("service table does not cover " + std::to_string(horizon) +
                       " customers per node");

  Digraph zero_buffer(n);
  for (const Arc& a : net.arcs())
    if (!net.buffer(a.to).is_infinite() && net.buffer(a.to).count() == 0)
      zero_buffer.add_arc(a.from, a.to);
  const PathGraphView view = analyze(zero_buffer);
  if (!view.acyclic)
    throw CycleError("simulation would deadlock on a zero-buffer circuit", view.cycle_witness);
  std::vector<std::size_t> rank(n);
  for (std::size_t pos = 0; pos < n; ++pos) rank[view.topological_order[pos]] = pos;

  // slot[i][s]: index of i within predecessors(successors(i)[s]).
  std::vector<std::vector<std::size_t>> slot(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : net.successors(i)) {
      const auto& preds = net.predecessors(j);
      slot[i].push_back(static_cast<std::size_t>(
          std::find(preds.begin(), preds.end(), i) - preds.begin()));
    }
  }

  std::vector<NodeState> state(n);
  SimulationReport<T> report;
  report.delivered.resize(n);
  report.joined.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    state[i].staged.assign(net.predecessors(i).size(), 0);
    report.delivered[i].assign(net.predecessors(i).size(), 0);
    if (!net.is_source(i)) state[i].buffer = net.buffer(i).count();
  }

  EventQueue<T> events;
  std::uint64_t sequence = 0;
  std::vector<std::vector<T>> departures(n);

  auto try_start = [&](std::size_t i, T now) {
    NodeState& s = state[i];
    if (s.busy || s.started == horizon) return;
    if (!net.is_source(i)) {
      if (s.buffer == 0) return;
      --s.buffer;
    }
    s.busy = true;
    ++s.started;
    events.push({now + table.at(i, s.started), rank[i], sequence++, i});
  };

  auto try_join = [&](std::size_t j) {
    NodeState& s = state[j];
    if (s.staged.empty()) return;
    while (std::all_of(s.staged.begin(), s.staged.end(), [](std::size_t c) { return c > 0; })) {
      for (auto& c : s.staged) --c;
      ++s.buffer;
      ++report.joined[j];
    }
  };

  for (std::size_t i : view.topological_order) try_start(i, T{0});

  while (!events.empty()) {
    const Event<T> e = events.top();
    events.pop();
    const std::size_t i = e.node;
    state[i].busy = false;
    departures[i].push_back(e.time);

    const auto& succ = net.successors(i);
    for (std::size_t s = 0; s < succ.size(); ++s) {
      const std::size_t j = succ[s];
      ++state[j].staged[slot[i][s]];
      ++report.delivered[j][slot[i][s]];
      try_join(j);
      try_start(j, e.time);
    }
    try_start(i, e.time);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (departures[i].size() != horizon) {
      throw std::runtime_error("simulation stalled: node " + std::to_string(i + 1) +
                               " completed " + std::to_string(departures[i].size()) + " of " +
                               std::to_string(horizon) + " services");
    }
  }
  report.trace = to_trace(departures, horizon);
  report.trace.meta.network = net.name();
  return report;
}

template <class T>
DepartureTrace<T> simulate_round_routing(std::size_t branches, std::span<const T> source_times,
                                         const ServiceTimeTable<T>& branch_table,
                                         std::size_t horizon) {
  if (branches < 2) throw std::invalid_argument("round routing needs at least 2 branches");
  const std::size_t needed = branches * horizon;
  if (source_times.size() < needed || (horizon > 0 && (branch_table.nodes() != branches ||
                                                       branch_table.horizon() < horizon)))
    throw ServiceError("round-routing service times do not cover the horizon");

  // Node 0 is the dispatching source; node j is branch j.
  std::vector<std::size_t> queued(branches + 1, 0);
  std::vector<std::size_t> started(branches + 1, 0);
  std::vector<bool> busy(branches + 1, false);
  std::vector<std::vector<T>> departures(branches);
  EventQueue<T> events;
  std::uint64_t sequence = 0;

  auto start_source = [&](T now) {
    if (busy[0] || started[0] == needed) return;
    busy[0] = true;
    ++started[0];
    events.push({now + source_times[started[0] - 1], 0, sequence++, 0});
  };
  auto start_branch = [&](std::size_t b, T now) {
    if (busy[b] || queued[b] == 0 || started[b] == horizon) return;
    --queued[b];
    busy[b] = true;
    ++started[b];
    events.push({now + branch_table.at(b - 1, started[b]), b, sequence++, b});
  };

  start_source(T{0});
  while (!events.empty()) {
    const Event<T> e = events.top();
    events.pop();
    busy[e.node] = false;
    if (e.node == 0) {
      const std::size_t customer = started[0];
      const std::size_t b = (customer - 1) % branches + 1;
      ++queued[b];
      start_branch(b, e.time);
      start_source(e.time);
    } else {
      departures[e.node - 1].push_back(e.time);
      start_branch(e.node, e.time);
    }
  }

  for (std::size_t b = 0; b < branches; ++b)
    if (departures[b].size() != horizon)
      throw std::runtime_error("round-routing simulation stalled at branch " +
                               std::to_string(b + 1));
  auto trace = to_trace(departures, horizon);
  trace.meta.network = "round-routing:" + std::to_string(branches);
  return trace;
}

template SimulationReport<std::int64_t> simulate_detailed(const Network&,
                                                          const ServiceTimeTable<std::int64_t>&,
                                                          std::size_t);
template SimulationReport<double> simulate_detailed(const Network&,
                                                    const ServiceTimeTable<double>&, std::size_t);
template DepartureTrace<std::int64_t> simulate_round_routing(std::size_t,
                                                             std::span<const std::int64_t>,
                                                             const ServiceTimeTable<std::int64_t>&,
                                                             std::size_t);
template DepartureTrace<double> simulate_round_routing(std::size_t, std::span<const double>,
                                                       const ServiceTimeTable<double>&,
                                                       std::size_t);

}  // namespace mpfj
