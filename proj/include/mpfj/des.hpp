#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "mpfj/network.hpp"
#include "mpfj/trace.hpp"

namespace mpfj {

// Event-driven simulation of a fork-join network, written against the
// queueing semantics directly (event heap and counters, no max-plus
// arithmetic), so it can serve as ground truth for the recursion.
//
// Single FCFS server per node with an infinite buffer. A node's join holds
// arrivals per predecessor until one is present from every predecessor, then
// merges them into one customer in the buffer. On every service completion
// the node forks one copy to each successor. Forks, joins and transfers take
// no time. The r_i initial customers sit in the buffer at time 0; source
// nodes (r_i = inf) have an inexhaustible backlog. Each node stops after its
// K-th departure.
template <class T>
struct SimulationReport {
  DepartureTrace<T> trace;
  // delivered[j][idx]: copies received by node j from its idx-th predecessor.
  std::vector<std::vector<std::size_t>> delivered;
  // Customers produced by node j's join.
  std::vector<std::size_t> joined;
};

template <class T>
SimulationReport<T> simulate_detailed(const Network& net, const ServiceTimeTable<T>& table,
                                      std::size_t horizon);

template <class T>
DepartureTrace<T> simulate(const Network& net, const ServiceTimeTable<T>& table,
                           std::size_t horizon) {
  return simulate_detailed(net, table, horizon).trace;
}

// The original round-routing system: queue 0 with an infinite backlog sends
// its c-th departing customer to branch ((c - 1) mod l) + 1. Returns the
// departure epochs of branches 1..l. source_times must hold l * K values,
// branch_table covers l nodes and K customers.
template <class T>
DepartureTrace<T> simulate_round_routing(std::size_t branches, std::span<const T> source_times,
                                         const ServiceTimeTable<T>& branch_table,
                                         std::size_t horizon);

template <class T>
DepartureTrace<T> simulate_round_routing(const RoundRobinOrigin& origin, std::size_t horizon) {
  const std::size_t l = origin.branches;
  std::vector<T> source_times;
  for (std::size_t c = 1; c <= l * horizon; ++c)
    source_times.push_back(to_backend<T>(origin.source.sample(c), 0, c));
  ServiceTimeTable<T> branch_table(l, std::max<std::size_t>(horizon, 1));
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t k = 1; k <= horizon; ++k)
      branch_table.set(j, k, to_backend<T>(origin.branch_service.at(j).sample(k), j, k));
  return simulate_round_routing<T>(l, source_times, branch_table, horizon);
}

}  // namespace mpfj
