#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "specgeo/polynomial.hpp"
#include "specgeo/symplectic.hpp"

namespace specgeo {

// Holomorphic prepotential F on a domain in C^n, evaluated through
// complex-coefficient jets. The additive complex constant ("shift") is the
// deformation knob: it never changes the affine data dF but moves the
// Lagrangian potential f = 2F - z^t w by twice its value.
class Prepotential {
public:
  enum class Kind { Cubic, Quadratic, Conified, General };
  using EvalFn = std::function<CJet(std::span<const CJet>)>;

  // F = -h for a real homogeneous polynomial h.
  static Prepotential cubic(Polynomial h);
  // F = sum a_ij z^i z^j + C/2 (a symmetrized).
  static Prepotential quadratic(Eigen::MatrixXcd a, Complex C);
  static Prepotential general(int n, EvalFn f);

  // Same prepotential with `delta` added to F.
  Prepotential with_shift(Complex delta) const;
  // Fhat(Z^0..Z^n) = (Z^0)^2 F(Z^1/Z^0, ..., Z^n/Z^0), homogeneous of
  // degree 2 on {Z^0 != 0}.
  Prepotential conified() const;

  int dim() const { return n_; }
  Kind kind() const { return kind_; }
  Complex shift() const { return shift_; }
  const Prepotential& inner() const;  // Conified only

  // Evaluate F on arbitrary jets (the z^i may themselves be jets in other
  // variables, e.g. the 2n real coordinates).
  CJet eval(std::span<const CJet> z) const;

  CJet jet_at(const Eigen::VectorXcd& z, int order) const;
  Complex value(const Eigen::VectorXcd& z) const;
  Eigen::VectorXcd gradient(const Eigen::VectorXcd& z) const;
  Eigen::MatrixXcd hessian(const Eigen::VectorXcd& z) const;

private:
  Prepotential() = default;

  int n_ = 0;
  Kind kind_ = Kind::General;
  Complex shift_ = 0.0;
  EvalFn base_;                                  // F minus the shift
  std::shared_ptr<const Prepotential> inner_;    // Conified
};

// Affine special Kahler data induced at a point: phi = (z, w = dF),
// K = sum Im(conj(z^i) F_i), f = 2F - z^t w, g = Im F_ij.
struct AskData {
  Eigen::VectorXcd z, w;
  Complex F;
  double K = 0.0;
  Complex f;
  Eigen::MatrixXd g;
  bool g_degenerate = false;
};

AskData ask_data(const Prepotential& F, const Eigen::VectorXcd& z);

struct ConicalPotential {
  double khat = 0.0;
  // | Khat - |Z^0|^2 (K + Im f)(Z/Z^0) |
  double factorization_residual = 0.0;
};

// Khat(Z) = sum_I Im(conj(Z^I) Fhat_I) for a conified prepotential.
ConicalPotential conical_potential(const Prepotential& Fhat, const Eigen::VectorXcd& Z);

struct Nondegeneracy {
  bool kahlerian = false;        // Im Hess(Fhat) invertible at (1, z)
  bool khat_nonzero = false;     // K + Im f != 0
  bool omega_bar_nondeg = false; // complex Hessian of -log|K + Im f| invertible
  double khat = 0.0;
  double cone_hessian_cond = 0.0;
  double psk_hessian_cond = 0.0;
};

Nondegeneracy nondegeneracy(const Prepotential& F, const Eigen::VectorXcd& z);

struct PskMetric {
  // Hessian route: d^2(-log|K + Im f|)/dz^i dzbar^j via real jets in the 2n
  // real coordinates and the Wirtinger combination.
  Eigen::MatrixXcd hermitian;
  // Cone-slice route: -ghat_ij/Khat + Khat_i conj(Khat_j)/Khat^2 at (1, z).
  Eigen::MatrixXcd slice_hermitian;
  double cross_residual = 0.0;
  int khat_sign = 0;
};

PskMetric psk_metric_detail(const Prepotential& F, const Eigen::VectorXcd& z);
// Hessian-route matrix; throws on degeneracy or on two-route disagreement.
Eigen::MatrixXcd psk_metric(const Prepotential& F, const Eigen::VectorXcd& z);

// Real rank of d(Re phi); 2n iff the immersion is totally complex.
int totally_complex_rank(const Prepotential& F, const Eigen::VectorXcd& z,
                         double tol = 1e-10);

// Element (I, s, v) of G_SK translating phi(z0) to the real point 0 and
// normalising the Lagrangian potential there to Im = 1, so the conification
// hypothesis (real point, f not real) holds after the move.
GroupElement normalize_pair(const Prepotential& F, const Eigen::VectorXcd& z0);

// Kahler-potential pairing Khat = gamma_hat(P, P)/2 = Im sum conj(Z^I) W_I of
// a raw cone point P = (Z^0, W_0, ..., Z^n, W_n); real elements of G preserve
// it, imaginary central shifts move it.
double khat_pairing(const Eigen::VectorXcd& P);
// Cone embedding z^0 * (1, f(q), q) in the (z^0, w_0, z, w) coordinate order.
Eigen::VectorXcd cone_embedding(const Prepotential& F, const Eigen::VectorXcd& z,
                                Complex z0);

// Real 2n x 2n form [[S, T], [-T, S]] of a Hermitian matrix H = S + iT in
// coordinates (y, x), matching Re sum H_ij dz^i dzbar^j.
Eigen::MatrixXd hermitian_to_real_form(const Eigen::MatrixXcd& H);

}  // namespace specgeo
