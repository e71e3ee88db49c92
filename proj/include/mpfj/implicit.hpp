#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>

#include "mpfj/graph.hpp"
#include "mpfj/matrix.hpp"

namespace mpfj {

// Solves x = U (x) x (+) v for x.
//
// U must have entries that are epsilon or strictly positive; v may also hold
// zeros, since the departure recursion feeds d(0) = 0 into it. When the graph
// of U is acyclic the unique bounded solution is (E (+) U)^p (x) v with p the
// longest path length; a circuit in U throws CycleError with the circuit.
template <class T>
Vector<MaxPlus<T>> solve_implicit(const Matrix<MaxPlus<T>>& u, const Vector<MaxPlus<T>>& v) {
  const std::size_t n = u.order();
  if (v.size() != n) throw DimensionError("solve_implicit: vector size does not match matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (u(i, j).is_finite() && !(u(i, j).value() > T{0})) {
        std::ostringstream os;
        os << "solve_implicit: U(" << i + 1 << "," << j + 1 << ") = " << u(i, j)
           << " is not positive";
        throw std::invalid_argument(os.str());
      }
    }
    if (v[i].is_finite() && v[i].value() < T{0}) {
      std::ostringstream os;
      os << "solve_implicit: v(" << i + 1 << ") = " << v[i] << " is negative";
      throw std::invalid_argument(os.str());
    }
  }

  const PathGraphView view = graph_view(u);
  if (!view.acyclic) throw CycleError("no unique bounded solution", view.cycle_witness);

  const auto step = oplus(Matrix<MaxPlus<T>>::identity(n), u);
  Vector<MaxPlus<T>> x = v;
  for (std::size_t q = 0; q < view.longest_path; ++q) x = otimes(step, x);
  return x;
}

}  // namespace mpfj
