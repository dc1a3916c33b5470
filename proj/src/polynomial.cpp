#include "specgeo/polynomial.hpp"

#include <algorithm>
#include <map>

namespace specgeo {

Polynomial::Polynomial(int nvars, std::vector<PolyTerm> terms)
    : nvars_(nvars), terms_(std::move(terms)) {
  if (nvars < 1) throw ConfigError("polynomial needs at least one variable");
  for (auto& t : terms_) {
    if (static_cast<int>(t.powers.size()) != nvars)
      throw ConfigError("polynomial term has wrong number of exponents");
    for (int e : t.powers) {
      if (e < 0) throw ConfigError("negative exponent in polynomial term");
    }
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    int td = 0;
    for (int e : t.powers) td += e;
    d = std::max(d, td);
  }
  return d;
}

bool Polynomial::is_homogeneous(int k) const {
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    int td = 0;
    for (int e : t.powers) td += e;
    if (td != k) return false;
  }
  return true;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::map<std::vector<int>, double> acc;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      std::vector<int> p(nvars_);
      for (int v = 0; v < nvars_; ++v) p[v] = a.powers[v] + b.powers[v];
      acc[p] += a.coeff * b.coeff;
    }
  }
  std::vector<PolyTerm> terms;
  for (auto& [p, c] : acc) terms.push_back({p, c});
  return Polynomial(nvars_, std::move(terms));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::map<std::vector<int>, double> acc;
  for (const auto& a : terms_) acc[a.powers] += a.coeff;
  for (const auto& b : o.terms_) acc[b.powers] += b.coeff;
  std::vector<PolyTerm> terms;
  for (auto& [p, c] : acc) terms.push_back({p, c});
  return Polynomial(nvars_, std::move(terms));
}

}  // namespace specgeo
