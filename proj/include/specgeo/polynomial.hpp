#pragma once

#include <span>
#include <vector>

#include "specgeo/jet.hpp"

namespace specgeo {

// Sparse real-coefficient polynomial in n variables, the shared carrier for
// homogeneous potentials h and cubic prepotential data.
struct PolyTerm {
  std::vector<int> powers;
  double coeff = 0.0;
};

class Polynomial {
public:
  Polynomial() = default;
  Polynomial(int nvars, std::vector<PolyTerm> terms);

  int nvars() const { return nvars_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }

  // Total degree (max over terms); -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous(int k) const;

  template <class T>
  T eval(std::span<const T> x) const {
    T acc = T(0);
    for (const auto& t : terms_) {
      T m = T(t.coeff);
      for (int v = 0; v < nvars_; ++v) {
        for (int e = 0; e < t.powers[v]; ++e) m *= x[v];
      }
      acc += m;
    }
    return acc;
  }

  template <class T>
  Jet<T> eval(std::span<const Jet<T>> x) const {
    Jet<T> acc(x[0].space_ptr(), x[0].order());
    for (const auto& t : terms_) {
      Jet<T> m = Jet<T>::constant(x[0].space_ptr(), x[0].order(), T(t.coeff));
      for (int v = 0; v < nvars_; ++v) {
        for (int e = 0; e < t.powers[v]; ++e) m = m * x[v];
      }
      acc += m;
    }
    return acc;
  }

  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;

private:
  int nvars_ = 0;
  std::vector<PolyTerm> terms_;
};

}  // namespace specgeo
