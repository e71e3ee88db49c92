#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpfj/matrix.hpp"

namespace mpfj {

// Plain directed graph on nodes 0..n-1 given by successor lists.
struct Digraph {
  std::size_t nodes = 0;
  std::vector<std::vector<std::size_t>> successors;

  explicit Digraph(std::size_t n = 0) : nodes(n), successors(n) {}
  void add_arc(std::size_t from, std::size_t to) { successors.at(from).push_back(to); }
};

// Structural facts about the graph associated with a matrix: arc (i, j)
// exists iff entry (i, j) is not the null element.
struct PathGraphView {
  bool acyclic = true;
  // Number of arcs on the longest path; meaningful only when acyclic.
  std::size_t longest_path = 0;
  // Full topological order when acyclic (Kahn, smallest index first).
  std::vector<std::size_t> topological_order;
  // Closed node sequence v0 -> v1 -> ... -> v0 when cyclic, empty otherwise.
  std::vector<std::size_t> cycle_witness;
};

PathGraphView analyze(const Digraph& g);

template <Semiring S>
Digraph support_graph(const Matrix<S>& x) {
  Digraph g(x.order());
  for (std::size_t i = 0; i < x.order(); ++i)
    for (std::size_t j = 0; j < x.order(); ++j)
      if (!(x(i, j) == S::zero())) g.add_arc(i, j);
  return g;
}

template <Semiring S>
PathGraphView graph_view(const Matrix<S>& x) {
  return analyze(support_graph(x));
}

// "2→3→2": one-based node labels joined by arrows.
std::string format_cycle(const std::vector<std::size_t>& witness);

// Raised when a construction needs an acyclic graph and finds a circuit.
class CycleError : public std::runtime_error {
 public:
  CycleError(const std::string& what, std::vector<std::size_t> witness)
      : std::runtime_error(what + ": cycle " + format_cycle(witness)),
        witness_(std::move(witness)) {}

  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

}  // namespace mpfj
