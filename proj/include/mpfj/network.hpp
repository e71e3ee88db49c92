#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpfj/service.hpp"

namespace mpfj {

// Nodes are zero-based internally; every user-facing message and file format
// uses one-based labels.
struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// r_i: customers initially waiting at a node, or infinite for an external
// arrival stream.
class InitialBuffer {
 public:
  constexpr InitialBuffer() = default;
  static constexpr InitialBuffer infinite() { return InitialBuffer(); }
  static constexpr InitialBuffer of(std::uint32_t count) { return InitialBuffer(count); }

  constexpr bool is_infinite() const noexcept { return !count_.has_value(); }
  constexpr std::uint32_t count() const { return count_.value(); }

  std::string to_string() const { return count_ ? std::to_string(*count_) : "inf"; }

  friend constexpr bool operator==(const InitialBuffer&, const InitialBuffer&) = default;

 private:
  constexpr explicit InitialBuffer(std::uint32_t count) : count_(count) {}
  std::optional<std::uint32_t> count_;
};

// Remembers how a network was derived from a round-routing system, so the
// original system can be simulated for comparison.
struct RoundRobinOrigin {
  std::size_t branches = 0;
  ServiceTimeSource source;
  std::vector<ServiceTimeSource> branch_service;
};

struct NetworkSpec {
  std::string name;
  std::size_t node_count = 0;
  std::vector<Arc> arcs;
  std::vector<InitialBuffer> initial_buffer;
  // Optional per node; required only when service times are realized.
  std::vector<std::optional<ServiceTimeSource>> service;
  std::optional<RoundRobinOrigin> round_robin;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// A spec that passed validation, with predecessor/successor views.
class Network {
 public:
  const NetworkSpec& spec() const noexcept { return spec_; }
  const std::string& name() const noexcept { return spec_.name; }
  std::size_t size() const noexcept { return spec_.node_count; }
  const std::vector<Arc>& arcs() const noexcept { return spec_.arcs; }
  InitialBuffer buffer(std::size_t node) const { return spec_.initial_buffer.at(node); }
  bool is_source(std::size_t node) const { return predecessors_.at(node).empty(); }

  // Sorted ascending.
  const std::vector<std::size_t>& predecessors(std::size_t node) const {
    return predecessors_.at(node);
  }
  const std::vector<std::size_t>& successors(std::size_t node) const {
    return successors_.at(node);
  }

  friend Network validate(NetworkSpec spec);

 private:
  Network() = default;
  NetworkSpec spec_;
  std::vector<std::vector<std::size_t>> predecessors_;
  std::vector<std::vector<std::size_t>> successors_;
};

// Checks the structural conventions of the model and throws ValidationError
// listing every violation found.
Network validate(NetworkSpec spec);

// 1 -> 2 -> ... -> n with r = [inf, 0, ..., 0].
NetworkSpec build_open_tandem(std::size_t n, std::vector<ServiceTimeSource> service = {});

// Ring 1 -> 2 -> ... -> n -> 1 holding a finite positive population.
NetworkSpec build_closed_tandem(std::size_t n, const std::vector<std::uint32_t>& r,
                                std::vector<ServiceTimeSource> service = {});

// Arbitrary topology; arcs and labels are one-based here, as in spec files.
NetworkSpec build_fork_join(std::string name, std::size_t n,
                            const std::vector<std::pair<std::size_t, std::size_t>>& arcs,
                            std::vector<InitialBuffer> r,
                            std::vector<ServiceTimeSource> service = {});

// Five-node network: r = [inf, 0, 1, 0, 1], arcs 1->2, 3->2, 2->3, 2->4, 3->5, 4->5.
NetworkSpec build_example_fork_join(std::vector<ServiceTimeSource> service = {});

// Fork-join network equivalent to a source queue dispatching its departures
// round-robin to l branches. Nodes 1..l are the branches, nodes l+1..2l form
// a ring standing in for the source queue: r_{l+1} = 1, all others 0. Ring
// node l+j serves source customer l(k-1)+j as its k-th customer.
NetworkSpec build_round_robin(std::size_t l, ServiceTimeSource source,
                              std::vector<ServiceTimeSource> branch_service);

// Materializes tau_ik for k = 1..K. Every node needs a service source.
template <class T>
ServiceTimeTable<T> realize_service(const Network& net, std::size_t horizon) {
  if (horizon == 0) throw std::invalid_argument("service horizon must be at least 1");
  ServiceTimeTable<T> table(net.size(), horizon);
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& source = net.spec().service.at(i);
    if (!source) throw ServiceError("no service source for node " + std::to_string(i + 1));
    for (std::size_t k = 1; k <= horizon; ++k)
      table.set(i, k, to_backend<T>(source->sample(k), i, k));
  }
  return table;
}

// Replaces every node's service with `source`, seeding stochastic kinds per
// node from `base_seed`.
NetworkSpec with_uniform_service(NetworkSpec spec, const ServiceTimeSource& source,
                                 std::uint64_t base_seed);

}  // namespace mpfj
