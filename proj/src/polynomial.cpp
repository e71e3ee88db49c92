#include "mpfj/polynomial.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace mpfj {

namespace {

bool divides(const Monomial& a, const Monomial& b) {
  return a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Monomial> canonicalize(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  std::vector<Monomial> kept;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < terms.size() && !absorbed; ++j)
      absorbed = i != j && divides(terms[i], terms[j]);
    if (!absorbed) kept.push_back(terms[i]);
  }
  return kept;
}

}  // namespace

Polynomial::Polynomial(std::vector<Monomial> terms) : terms_(canonicalize(std::move(terms))) {}

bool Polynomial::dominated_by(const Polynomial& other) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Monomial& m) {
    return std::any_of(other.terms_.begin(), other.terms_.end(),
                       [&](const Monomial& o) { return divides(m, o); });
  });
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += " + ";
    if (terms_[i].empty()) {
      out += "0";
      continue;
    }
    for (std::size_t j = 0; j < terms_[i].size(); ++j) {
      if (j > 0) out += "*";
      out += "t" + std::to_string(terms_[i][j]);
    }
  }
  return out;
}

Polynomial oplus(const Polynomial& a, const Polynomial& b) {
  std::vector<Monomial> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return Polynomial(std::move(terms));
}

Polynomial otimes(const Polynomial& a, const Polynomial& b) {
  std::vector<Monomial> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Monomial m;
      m.reserve(x.size() + y.size());
      std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(m));
      terms.push_back(std::move(m));
    }
  }
  return Polynomial(std::move(terms));
}

Polynomial parse_polynomial(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty polynomial");
  if (text == "eps") return Polynomial::zero();
  Polynomial result;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(" + ", pos);
    if (end == std::string::npos) end = text.size();
    const std::string term = text.substr(pos, end - pos);
    Polynomial mono = Polynomial::one();
    if (term != "0") {
      std::size_t p = 0;
      while (p < term.size()) {
        std::size_t q = term.find('*', p);
        if (q == std::string::npos) q = term.size();
        const std::string factor = term.substr(p, q - p);
        if (factor.size() < 2 || factor[0] != 't')
          throw std::invalid_argument("bad monomial factor '" + factor + "'");
        std::size_t used = 0;
        const unsigned long index = std::stoul(factor.substr(1), &used);
        if (used != factor.size() - 1 || index == 0)
          throw std::invalid_argument("bad monomial factor '" + factor + "'");
        mono = otimes(mono, Polynomial::symbol(static_cast<std::uint32_t>(index)));
        p = q + 1;
      }
    }
    result = oplus(result, mono);
    pos = end + 3;
  }
  return result;
}

}  // namespace mpfj
