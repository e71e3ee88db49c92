#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mpfj/scalar.hpp"

namespace mpfj {

// Product of service-time symbols t<i>, stored as a sorted multiset of
// one-based node indices. The empty monomial is the max-plus unit 0.
using Monomial = std::vector<std::uint32_t>;

// Max-plus polynomial in positive symbols t1..tn.
//
// Canonical form: monomials sorted, duplicates merged (x + x = x), and any
// monomial dividing another one removed (x + x*y = x*y). The last rule holds
// because every symbol stands for a strictly positive service time, so
// evaluation at any positive table is a homomorphism onto MaxPlus.
class Polynomial {
 public:
  Polynomial() = default;  // eps

  static Polynomial zero() { return {}; }
  static Polynomial one() { return Polynomial(std::vector<Monomial>{Monomial{}}); }
  static Polynomial symbol(std::uint32_t index) {
    return Polynomial(std::vector<Monomial>{Monomial{index}});
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }

  // Every monomial of this divides some monomial of other, i.e. this <= other
  // for every positive assignment.
  bool dominated_by(const Polynomial& other) const;

  // "eps", "0", or monomials like "t1*t2" joined by " + ".
  std::string to_string() const;

  // values[i - 1] is the value substituted for t<i>.
  template <class T>
  MaxPlus<T> evaluate(std::span<const T> values) const {
    MaxPlus<T> acc = MaxPlus<T>::zero();
    for (const auto& mono : terms_) {
      T sum{0};
      for (std::uint32_t s : mono) sum += values[s - 1];
      acc = oplus(acc, MaxPlus<T>(sum));
    }
    return acc;
  }

  friend Polynomial oplus(const Polynomial& a, const Polynomial& b);
  friend Polynomial otimes(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  explicit Polynomial(std::vector<Monomial> terms);

  std::vector<Monomial> terms_;
};

Polynomial oplus(const Polynomial& a, const Polynomial& b);
Polynomial otimes(const Polynomial& a, const Polynomial& b);

// Parses the rendering produced by to_string().
Polynomial parse_polynomial(const std::string& text);

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.to_string();
}

}  // namespace mpfj
