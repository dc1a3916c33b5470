#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "specgeo/rng.hpp"

namespace specgeo {

using Complex = std::complex<double>;

class Prepotential;  // special_kahler.hpp

// Subgroup lattice G < G_SK < G_C of the extended affine symplectic group.
enum class Subgroup { RealG, SpecialKahler, ComplexG };

// Matrix of the symplectic form on C^{2n} in coordinate order
// (z^1..z^n, w_1..w_n): Omega_0 = [[0, I], [-I, 0]].
Eigen::MatrixXd omega0(int n);
// Form on C^{2n+2} in coordinate order (z^0, w_0, z^1.., w_..):
// blockdiag([[0,1],[-1,0]], Omega_0).
Eigen::MatrixXd omega_hat(int n);
Complex symplectic_pairing(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// Element (X, s, v) with X in Sp(2n), s central, v a translation. The
// multiplication law is (X, s, v)(X', s', v') =
// (XX', s + s' + Omega(v, Xv')/2, Xv' + v).
class GroupElement {
public:
  GroupElement(Eigen::MatrixXcd X, Complex s, Eigen::VectorXcd v,
               double symplectic_tol = 1e-9);

  static GroupElement identity(int n);

  int n() const { return n_; }
  Subgroup subgroup() const { return flag_; }
  const Eigen::MatrixXcd& X() const { return X_; }
  Complex s() const { return s_; }
  const Eigen::VectorXcd& v() const { return v_; }

  // Affine action q -> Xq + v on C^{2n}.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& q) const;

private:
  int n_;
  Subgroup flag_;
  Eigen::MatrixXcd X_;
  Complex s_;
  Eigen::VectorXcd v_;
};

GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_inv(const GroupElement& a);

// Linear symplectic lift on C^{2n+2}:
//   rho(X, s, v) = [[1, 0, 0], [-2s, 1, vhat^t], [v, 0, X]],
// vhat = X^t Omega_0 v, preserving omega_hat, {z^0 = 1} and <d/dw_0>.
Eigen::MatrixXcd rho(const GroupElement& a);

// exp(Omega_0 S) for random symmetric S with entries in
// scale*[-1/2, 1/2]; real Hamiltonian data for G and G_SK, complex for G_C.
GroupElement random_sp(int n, Rng& rng, double scale = 1.0,
                       Subgroup flavor = Subgroup::RealG);
// Adds random s and v of the flavor's scalar field.
GroupElement random_element(int n, Rng& rng, Subgroup flavor, double scale = 1.0);

// Point sample of a Lagrangian potential: q on the submanifold, f(q), and
// optionally df_q as a covector (df = -Omega(q, .) for genuine potentials).
struct PotentialSample {
  Eigen::VectorXcd q;
  Complex f;
  std::optional<Eigen::VectorXcd> df;
};

// (x.f)(q') = f(q) + Omega(q', v) - 2s at q' = Xq + v; df transforms by
// df' = X^{-t} df + Omega_0 v.
PotentialSample act_potential(const GroupElement& a, const PotentialSample& sample);

struct PrepotentialAction {
  Eigen::VectorXcd phi_prime;   // (z', w') = X phi(z) + v
  Complex F_value;              // F(z)
  Complex F_prime;              // transformed prepotential at the image point
  double dewit_residual;        // two-route consistency, see below
  double prepotential_residual; // max_a |dF'/dz^a - sum_i w'_i dz'^i/dz^a|
};

// Transforms the special Kahler pair (dF, F) by a in G_SK. F_prime follows
// the group-action formula
//   F' = F - z^t w / 2 + z'^t w' / 2 + Omega(phi', v)/2 - s.
// dewit_residual re-derives F'(z) independently by integrating w'^t dz' from
// z_ref (anchored there) and reports
//   |(F'_int - z'^t w'/2) - (F - z^t w/2) - (Omega(phi', v)/2 - s)|,
// which for a in Sp(R^{2n}) is exactly the de Wit invariance defect.
PrepotentialAction act_prepotential(const GroupElement& a, const Prepotential& F,
                                    const Eigen::VectorXcd& z,
                                    const Eigen::VectorXcd& z_ref);

}  // namespace specgeo
