#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpfj/scalar.hpp"

namespace mpfj {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <Semiring S>
using Vector = std::vector<S>;

// Dense square matrix over a semiring. Entry (i, j) is read as the weight of
// arc i -> j when the matrix is treated as an adjacency matrix. Indices are
// zero-based.
template <Semiring S>
class Matrix {
 public:
  explicit Matrix(std::size_t order) : order_(order), entries_(order * order, S::zero()) {
    if (order == 0) throw DimensionError("matrix order must be positive");
  }

  Matrix(std::initializer_list<std::initializer_list<S>> rows) : Matrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != order_) throw DimensionError("matrix rows must form a square");
      std::size_t j = 0;
      for (const auto& x : row) (*this)(i, j++) = x;
      ++i;
    }
  }

  static Matrix null(std::size_t order) { return Matrix(order); }

  static Matrix identity(std::size_t order) {
    Matrix m(order);
    for (std::size_t i = 0; i < order; ++i) m(i, i) = S::one();
    return m;
  }

  static Matrix diagonal(std::span<const S> diag) {
    Matrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t order() const noexcept { return order_; }

  const S& operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  S& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }

  bool is_null() const {
    for (const auto& x : entries_)
      if (!(x == S::zero())) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(order_);
    for (std::size_t i = 0; i < order_; ++i)
      for (std::size_t j = 0; j < order_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t order_;
  std::vector<S> entries_;
};

namespace detail {
inline void check_same_order(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": order mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}
}  // namespace detail

template <Semiring S>
Matrix<S> oplus(const Matrix<S>& x, const Matrix<S>& y) {
  detail::check_same_order(x.order(), y.order(), "matrix oplus");
  Matrix<S> u(x.order());
  for (std::size_t i = 0; i < x.order(); ++i)
    for (std::size_t j = 0; j < x.order(); ++j) u(i, j) = oplus(x(i, j), y(i, j));
  return u;
}

template <Semiring S>
Matrix<S> otimes(const Matrix<S>& x, const Matrix<S>& y) {
  detail::check_same_order(x.order(), y.order(), "matrix otimes");
  const std::size_t n = x.order();
  Matrix<S> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const S& xik = x(i, k);
      if (xik == S::zero()) continue;
      for (std::size_t j = 0; j < n; ++j) v(i, j) = oplus(v(i, j), otimes(xik, y(k, j)));
    }
  }
  return v;
}

template <Semiring S>
Vector<S> otimes(const Matrix<S>& x, const Vector<S>& v) {
  detail::check_same_order(x.order(), v.size(), "matrix-vector otimes");
  Vector<S> out(v.size(), S::zero());
  for (std::size_t i = 0; i < x.order(); ++i)
    for (std::size_t j = 0; j < x.order(); ++j) out[i] = oplus(out[i], otimes(x(i, j), v[j]));
  return out;
}

template <Semiring S>
Vector<S> oplus(const Vector<S>& a, const Vector<S>& b) {
  detail::check_same_order(a.size(), b.size(), "vector oplus");
  Vector<S> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = oplus(a[i], b[i]);
  return out;
}

// X^0 = E, X^q = X (x) X^(q-1). Iterated product; q is at most the order in
// every caller.
template <Semiring S>
Matrix<S> power(const Matrix<S>& x, std::size_t q) {
  Matrix<S> result = Matrix<S>::identity(x.order());
  for (std::size_t i = 0; i < q; ++i) result = otimes(x, result);
  return result;
}

// Column-aligned rendering; epsilon prints as "eps".
template <Semiring S>
std::string format_matrix(const Matrix<S>& m, const std::string& indent = "") {
  const std::size_t n = m.order();
  std::vector<std::string> cells(n * n);
  std::vector<std::size_t> width(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::ostringstream os;
      os << m(i, j);
      cells[i * n + j] = os.str();
      width[j] = std::max(width[j], cells[i * n + j].size());
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < n; ++i) {
    out << indent;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) out << "  ";
      out << std::setw(static_cast<int>(width[j])) << cells[i * n + j];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mpfj
