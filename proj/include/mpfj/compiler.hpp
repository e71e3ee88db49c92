#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mpfj/graph.hpp"
#include "mpfj/matrix.hpp"
#include "mpfj/network.hpp"
#include "mpfj/polynomial.hpp"

namespace mpfj {

// The routing matrices G_0..G_M. Arc (i, j) belongs to G_m exactly when
// r_j = m; arcs into source nodes do not exist. G_m is kept as its arc list
// and lifted into any semiring on demand.
class RoutingMatrices {
 public:
  RoutingMatrices(std::size_t order, std::vector<std::vector<Arc>> arcs_by_delay,
                  PathGraphView zero_buffer_view, bool promoted);

  std::size_t order() const noexcept { return order_; }
  // M >= 1. When no node holds a finite positive buffer, M is promoted from
  // 0 to 1 with G_1 null.
  std::size_t memory_depth() const noexcept { return arcs_.size() - 1; }
  bool promoted() const noexcept { return promoted_; }
  // Longest path p of the zero-buffer graph G_0.
  std::size_t longest_path() const noexcept { return view_.longest_path; }
  const std::vector<std::size_t>& topological_order() const noexcept {
    return view_.topological_order;
  }

  // m in 0..M; sorted.
  const std::vector<Arc>& arcs(std::size_t m) const { return arcs_.at(m); }

  template <Semiring S>
  Matrix<S> matrix(std::size_t m) const {
    Matrix<S> g(order_);
    for (const Arc& a : arcs(m)) g(a.from, a.to) = S::one();
    return g;
  }

 private:
  std::size_t order_;
  std::vector<std::vector<Arc>> arcs_;
  PathGraphView view_;
  bool promoted_;
};

// Throws CycleError when the zero-buffer graph G_0 has a circuit.
RoutingMatrices build_routing(const Network& net);

// [T_1, ..., T_M] for one step, given the diagonal of the service matrix:
//   T_1 = (E + D G_0')^p D (E + G_1'),  T_m = (E + D G_0')^p D G_m'.
template <Semiring S>
std::vector<Matrix<S>> transition_matrices(const RoutingMatrices& routing,
                                           std::span<const S> service_diag) {
  const std::size_t n = routing.order();
  if (service_diag.size() != n) throw DimensionError("service row does not match network size");
  const auto identity = Matrix<S>::identity(n);
  const auto diag = Matrix<S>::diagonal(service_diag);
  const auto closure = power(
      oplus(identity, otimes(diag, routing.matrix<S>(0).transpose())), routing.longest_path());
  const auto front = otimes(closure, diag);

  std::vector<Matrix<S>> blocks;
  blocks.reserve(routing.memory_depth());
  blocks.push_back(otimes(front, oplus(identity, routing.matrix<S>(1).transpose())));
  for (std::size_t m = 2; m <= routing.memory_depth(); ++m)
    blocks.push_back(otimes(front, routing.matrix<S>(m).transpose()));
  return blocks;
}

// Block companion matrix over the extended state (d(k), ..., d(k-M+1)):
// the first block row is [T_1 ... T_M], identity blocks sit on the block
// subdiagonal, null blocks elsewhere.
template <Semiring S>
Matrix<S> extended_matrix(std::span<const Matrix<S>> blocks) {
  if (blocks.empty()) throw DimensionError("extended matrix needs at least one block");
  const std::size_t n = blocks.front().order();
  const std::size_t depth = blocks.size();
  Matrix<S> out(n * depth);
  for (std::size_t m = 0; m < depth; ++m) {
    if (blocks[m].order() != n) throw DimensionError("transition blocks differ in order");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, m * n + j) = blocks[m](i, j);
  }
  for (std::size_t m = 1; m < depth; ++m)
    for (std::size_t i = 0; i < n; ++i) out(m * n + i, (m - 1) * n + i) = S::one();
  return out;
}

enum class SymbolicForm {
  // The transition matrices as the formula yields them, after polynomial
  // canonicalization.
  literal,
  // Additionally drops an entry (i, a) of a block when some column b of the
  // same block is reachable from a in G_0 and entry (i, b) dominates (i, a).
  // Along a zero-buffer path d_b(k) >= d_a(k) for all k, so the dropped term
  // never decides the maximum and the recursion is unchanged.
  reduced,
};

std::vector<Matrix<Polynomial>> reduce_dominated(const RoutingMatrices& routing,
                                                 std::vector<Matrix<Polynomial>> blocks);

template <class T>
Matrix<MaxPlus<T>> evaluate(const Matrix<Polynomial>& m, std::span<const T> values) {
  Matrix<MaxPlus<T>> out(m.order());
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) out(i, j) = m(i, j).evaluate(values);
  return out;
}

class CompiledTransition {
 public:
  CompiledTransition(Network net, RoutingMatrices routing)
      : net_(std::move(net)), routing_(std::move(routing)) {}

  const Network& network() const noexcept { return net_; }
  const RoutingMatrices& routing() const noexcept { return routing_; }
  std::size_t size() const noexcept { return routing_.order(); }
  std::size_t memory_depth() const noexcept { return routing_.memory_depth(); }

  template <class T>
  std::vector<Matrix<MaxPlus<T>>> transition_at(std::span<const T> service_row) const {
    return transition_matrices<MaxPlus<T>>(routing_, lift(service_row));
  }

  template <class T>
  Matrix<MaxPlus<T>> extended_at(std::span<const T> service_row) const {
    const auto blocks = transition_at(service_row);
    return extended_matrix<MaxPlus<T>>(blocks);
  }

  // Transition matrices with service times replaced by symbols t1..tn.
  std::vector<Matrix<Polynomial>> symbolic(SymbolicForm form = SymbolicForm::literal) const;

 private:
  template <class T>
  static std::vector<MaxPlus<T>> lift(std::span<const T> row) {
    std::vector<MaxPlus<T>> out;
    out.reserve(row.size());
    for (T x : row) out.emplace_back(x);
    return out;
  }

  Network net_;
  RoutingMatrices routing_;
};

CompiledTransition compile(Network net);
CompiledTransition compile(const NetworkSpec& spec);

}  // namespace mpfj
