#include "mpfj/compiler.hpp"

#include <algorithm>

namespace mpfj {

RoutingMatrices::RoutingMatrices(std::size_t order, std::vector<std::vector<Arc>> arcs_by_delay,
                                 PathGraphView zero_buffer_view, bool promoted)
    : order_(order),
      arcs_(std::move(arcs_by_delay)),
      view_(std::move(zero_buffer_view)),
      promoted_(promoted) {}

RoutingMatrices build_routing(const Network& net) {
  const std::size_t n = net.size();
  std::size_t depth = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (!net.buffer(j).is_infinite()) depth = std::max<std::size_t>(depth, net.buffer(j).count());
  const bool promoted = depth == 0;
  depth = std::max<std::size_t>(depth, 1);

  std::vector<std::vector<Arc>> arcs(depth + 1);
  for (const Arc& a : net.arcs()) {
    const InitialBuffer r = net.buffer(a.to);
    if (!r.is_infinite()) arcs[r.count()].push_back(a);
  }
  for (auto& list : arcs) std::sort(list.begin(), list.end());

  Digraph zero_buffer(n);
  for (const Arc& a : arcs[0]) zero_buffer.add_arc(a.from, a.to);
  PathGraphView view = analyze(zero_buffer);
  if (!view.acyclic) throw CycleError("zero-buffer graph G0 is not acyclic", view.cycle_witness);
  return RoutingMatrices(n, std::move(arcs), std::move(view), promoted);
}

std::vector<Matrix<Polynomial>> reduce_dominated(const RoutingMatrices& routing,
                                                 std::vector<Matrix<Polynomial>> blocks) {
  const std::size_t n = routing.order();
  // reach[a][b]: b reachable from a by a nonempty zero-buffer path.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  const auto& order = routing.topological_order();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const Arc& a : routing.arcs(0)) succ[a.from].push_back(a.to);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t a = *it;
    for (std::size_t b : succ[a]) {
      reach[a][b] = true;
      for (std::size_t c = 0; c < n; ++c)
        if (reach[b][c]) reach[a][c] = true;
    }
  }

  for (auto& block : blocks) {
    Matrix<Polynomial> reduced = block;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < n; ++a) {
        if (block(i, a).is_zero()) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (reach[a][b] && !block(i, b).is_zero() && block(i, a).dominated_by(block(i, b))) {
            reduced(i, a) = Polynomial::zero();
            break;
          }
        }
      }
    }
    block = std::move(reduced);
  }
  return blocks;
}

std::vector<Matrix<Polynomial>> CompiledTransition::symbolic(SymbolicForm form) const {
  std::vector<Polynomial> symbols;
  for (std::size_t i = 0; i < size(); ++i)
    symbols.push_back(Polynomial::symbol(static_cast<std::uint32_t>(i + 1)));
  auto blocks = transition_matrices<Polynomial>(routing_, symbols);
  if (form == SymbolicForm::reduced) blocks = reduce_dominated(routing_, std::move(blocks));
  return blocks;
}

CompiledTransition compile(Network net) {
  RoutingMatrices routing = build_routing(net);
  return CompiledTransition(std::move(net), std::move(routing));
}

CompiledTransition compile(const NetworkSpec& spec) { return compile(validate(spec)); }

}  // namespace mpfj
