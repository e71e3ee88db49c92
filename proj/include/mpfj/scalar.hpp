#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace mpfj {

// Element of R u {eps}. Epsilon is a separate tag, never -inf or NaN, so
// eps (x) eps stays eps under both the integer and the floating backend.
template <class T>
class MaxPlus {
 public:
  using value_type = T;

  constexpr MaxPlus() noexcept = default;
  constexpr explicit MaxPlus(T value) noexcept : value_(value), finite_(true) {}

  static constexpr MaxPlus zero() noexcept { return MaxPlus(); }
  static constexpr MaxPlus one() noexcept { return MaxPlus(T{0}); }
  static constexpr MaxPlus epsilon() noexcept { return MaxPlus(); }

  constexpr bool is_epsilon() const noexcept { return !finite_; }
  constexpr bool is_finite() const noexcept { return finite_; }

  constexpr T value() const {
    if (!finite_) throw std::logic_error("value() called on epsilon");
    return value_;
  }
  constexpr T value_or(T fallback) const noexcept {
    return finite_ ? value_ : fallback;
  }

  friend constexpr bool operator==(const MaxPlus& a, const MaxPlus& b) noexcept {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  // Epsilon sorts below every finite value.
  friend constexpr std::partial_ordering operator<=>(const MaxPlus& a,
                                                     const MaxPlus& b) noexcept {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    return a.value_ <=> b.value_;
  }

 private:
  T value_{};
  bool finite_ = false;
};

template <class T>
constexpr MaxPlus<T> oplus(const MaxPlus<T>& a, const MaxPlus<T>& b) noexcept {
  if (a.is_epsilon()) return b;
  if (b.is_epsilon()) return a;
  return a.value() < b.value() ? b : a;
}

template <class T>
constexpr MaxPlus<T> otimes(const MaxPlus<T>& a, const MaxPlus<T>& b) noexcept {
  if (a.is_epsilon() || b.is_epsilon()) return MaxPlus<T>::epsilon();
  return MaxPlus<T>(a.value() + b.value());
}

template <class T>
std::ostream& operator<<(std::ostream& os, const MaxPlus<T>& x) {
  if (x.is_epsilon()) return os << "eps";
  return os << x.value();
}

using IntScalar = MaxPlus<std::int64_t>;
using RealScalar = MaxPlus<double>;

// An idempotent semiring with S::zero() as the null element and S::one() as
// the identity. Implemented by MaxPlus<T> and by the symbolic Polynomial.
template <class S>
concept Semiring = std::regular<S> && requires(const S& a, const S& b) {
  { S::zero() } -> std::same_as<S>;
  { S::one() } -> std::same_as<S>;
  { oplus(a, b) } -> std::same_as<S>;
  { otimes(a, b) } -> std::same_as<S>;
};

}  // namespace mpfj
