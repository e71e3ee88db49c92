#include "mpfj/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace mpfj {

namespace {

// Iterative DFS; the first back arc u -> v closes the cycle v .. u -> v.
std::vector<std::size_t> find_cycle(const Digraph& g) {
  enum class Mark { unvisited, on_stack, done };
  std::vector<Mark> mark(g.nodes, Mark::unvisited);
  std::vector<std::size_t> parent(g.nodes, 0);

  for (std::size_t root = 0; root < g.nodes; ++root) {
    if (mark[root] != Mark::unvisited) continue;
    // (node, index of next successor to explore)
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::on_stack;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next == g.successors[u].size()) {
        mark[u] = Mark::done;
        stack.pop_back();
        continue;
      }
      const std::size_t v = g.successors[u][next++];
      if (mark[v] == Mark::on_stack) {
        std::vector<std::size_t> cycle{u};
        for (std::size_t w = u; w != v;) {
          w = parent[w];
          cycle.push_back(w);
        }
        std::reverse(cycle.begin(), cycle.end());
        cycle.push_back(v);
        return cycle;
      }
      if (mark[v] == Mark::unvisited) {
        mark[v] = Mark::on_stack;
        parent[v] = u;
        stack.emplace_back(v, 0);
      }
    }
  }
  return {};
}

}  // namespace

PathGraphView analyze(const Digraph& g) {
  PathGraphView view;
  std::vector<std::size_t> indegree(g.nodes, 0);
  for (const auto& succ : g.successors)
    for (std::size_t v : succ) ++indegree[v];

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < g.nodes; ++i)
    if (indegree[i] == 0) ready.push(i);

  std::vector<std::size_t> depth(g.nodes, 0);
  while (!ready.empty()) {
    const std::size_t u = ready.top();
    ready.pop();
    view.topological_order.push_back(u);
    view.longest_path = std::max(view.longest_path, depth[u]);
    for (std::size_t v : g.successors[u]) {
      depth[v] = std::max(depth[v], depth[u] + 1);
      if (--indegree[v] == 0) ready.push(v);
    }
  }

  if (view.topological_order.size() != g.nodes) {
    view.acyclic = false;
    view.longest_path = 0;
    view.topological_order.clear();
    view.cycle_witness = find_cycle(g);
  }
  return view;
}

std::string format_cycle(const std::vector<std::size_t>& witness) {
  std::string out;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i > 0) out += "→";
    out += std::to_string(witness[i] + 1);
  }
  return out;
}

}  // namespace mpfj
