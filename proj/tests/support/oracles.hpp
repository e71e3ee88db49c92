#pragma once

// Generators and brute-force oracles shared by the unit and acceptance
// suites. Nothing here calls into the max-plus matrix routines it is used to
// check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "mpfj/matrix.hpp"
#include "mpfj/network.hpp"

namespace mpfj::testing {

using Int = std::int64_t;
using IntMatrix = Matrix<IntScalar>;
using IntVector = Vector<IntScalar>;

inline IntScalar random_scalar(std::mt19937_64& rng, double eps_prob = 0.3, Int lo = -5,
                               Int hi = 9) {
  std::bernoulli_distribution eps(eps_prob);
  if (eps(rng)) return IntScalar::epsilon();
  return IntScalar(std::uniform_int_distribution<Int>(lo, hi)(rng));
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double eps_prob = 0.3,
                               Int lo = -5, Int hi = 9) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar(rng, eps_prob, lo, hi);
  return m;
}

// Positive entries only above the diagonal of a random relabelling.
inline IntMatrix random_acyclic_positive(std::mt19937_64& rng, std::size_t n,
                                         double arc_prob = 0.4, Int hi = 9) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution arc(arc_prob);
  std::uniform_int_distribution<Int> weight(1, hi);
  IntMatrix m(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (arc(rng)) m(perm[a], perm[b]) = IntScalar(weight(rng));
  return m;
}

// Acyclic positive matrix plus one planted circuit.
inline IntMatrix random_cyclic_positive(std::mt19937_64& rng, std::size_t n, Int hi = 9) {
  IntMatrix m = random_acyclic_positive(rng, n, 0.3, hi);
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  std::uniform_int_distribution<std::size_t> len(1, n);
  std::uniform_int_distribution<Int> weight(1, hi);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const std::size_t length = len(rng);
  for (std::size_t s = 0; s < length; ++s)
    m(perm[s], perm[(s + 1) % length]) = IntScalar(weight(rng));
  return m;
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, Int lo, Int hi,
                               double eps_prob = 0.2) {
  IntVector v(n);
  for (auto& x : v) x = random_scalar(rng, eps_prob, lo, hi);
  return v;
}

// Entry (i, j) of the q-th power by enumerating every node sequence
// i = v0, v1, ..., vq = j and taking the best total weight.
inline IntScalar path_enumeration_entry(const IntMatrix& x, std::size_t i, std::size_t j,
                                        std::size_t q) {
  const std::size_t n = x.order();
  if (q == 0) return i == j ? IntScalar(0) : IntScalar::epsilon();
  std::optional<Int> best;
  std::vector<std::size_t> mid(q - 1, 0);
  while (true) {
    std::optional<Int> total = Int{0};
    std::size_t prev = i;
    for (std::size_t s = 0; s < q && total; ++s) {
      const std::size_t next = s + 1 < q ? mid[s] : j;
      if (x(prev, next).is_epsilon()) {
        total.reset();
      } else {
        *total += x(prev, next).value();
      }
      prev = next;
    }
    if (total && (!best || *total > *best)) best = total;
    std::size_t pos = 0;
    while (pos < mid.size() && ++mid[pos] == n) mid[pos++] = 0;
    if (pos == mid.size()) break;
  }
  return best ? IntScalar(*best) : IntScalar::epsilon();
}

// Every arc of the closed walk is present and it starts where it ends.
inline bool is_cycle_witness(const IntMatrix& x, const std::vector<std::size_t>& w) {
  if (w.size() < 2 || w.front() != w.back()) return false;
  for (std::size_t s = 0; s + 1 < w.size(); ++s)
    if (x(w[s], w[s + 1]).is_epsilon()) return false;
  return true;
}

// x <- U x (+) v from x = v until nothing changes, written with plain loops.
inline std::optional<IntVector> fixed_point_iteration(const IntMatrix& u, const IntVector& v,
                                                      std::size_t max_rounds) {
  const std::size_t n = u.order();
  IntVector x = v;
  for (std::size_t round = 0; round <= max_rounds; ++round) {
    IntVector next = v;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (u(i, j).is_epsilon() || x[j].is_epsilon()) continue;
        const Int cand = u(i, j).value() + x[j].value();
        if (next[i].is_epsilon() || cand > next[i].value()) next[i] = IntScalar(cand);
      }
    }
    if (next == x) return x;
    x = next;
  }
  return std::nullopt;
}

struct RandomNetworkOptions {
  std::size_t min_nodes = 2;
  std::size_t max_nodes = 8;
  std::uint32_t max_depth = 3;
  double source_prob = 0.2;
  std::size_t max_preds = 3;
};

// Random fork-join network whose zero-buffer graph is acyclic: a node with
// r = 0 only draws predecessors that come earlier in a random order.
inline NetworkSpec random_network(std::mt19937_64& rng, const RandomNetworkOptions& opt = {}) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(opt.min_nodes, opt.max_nodes)(rng);
  const std::uint32_t depth_cap = std::uniform_int_distribution<std::uint32_t>(1, opt.max_depth)(rng);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  NetworkSpec spec;
  spec.name = "random";
  spec.node_count = n;
  spec.initial_buffer.assign(n, InitialBuffer::of(0));
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution source(opt.source_prob);
  std::uniform_int_distribution<std::uint32_t> depth(1, depth_cap);

  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t node = order[pos];
    if ((pos == 0 && coin(rng)) || (pos > 0 && source(rng))) {
      spec.initial_buffer[node] = InitialBuffer::infinite();
      continue;
    }
    std::uint32_t r = coin(rng) ? 0 : depth(rng);
    if (r == 0 && pos == 0) r = depth(rng);
    std::vector<std::size_t> candidates;
    if (r == 0) {
      candidates.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      for (std::size_t other = 0; other < n; ++other)
        if (other != node) candidates.push_back(other);
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const std::size_t count = std::uniform_int_distribution<std::size_t>(
        1, std::min(opt.max_preds, candidates.size()))(rng);
    for (std::size_t c = 0; c < count; ++c) spec.arcs.push_back({candidates[c], node});
    spec.initial_buffer[node] = InitialBuffer::of(r);
  }
  return spec;
}

template <class T = Int>
ServiceTimeTable<T> random_table(std::mt19937_64& rng, std::size_t nodes, std::size_t horizon,
                                 Int lo = 1, Int hi = 10) {
  ServiceTimeTable<T> table(nodes, horizon);
  std::uniform_int_distribution<Int> tau(lo, hi);
  for (std::size_t k = 1; k <= horizon; ++k)
    for (std::size_t i = 0; i < nodes; ++i) table.set(i, k, static_cast<T>(tau(rng)));
  return table;
}

}  // namespace mpfj::testing
