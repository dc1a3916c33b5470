#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

#include "specgeo/polynomial.hpp"

namespace specgeo {

// Degree-k homogeneous function h > 0 on a cone domain U subset of R^n.
// U is represented by a base point; membership is tested by continuation
// along the straight segment from the base point with sign monitoring of h.
class HomogeneousFunction {
public:
  using JetFn = std::function<RJet(std::span<const RJet>)>;

  static HomogeneousFunction polynomial(Polynomial p, Eigen::VectorXd base_point);
  static HomogeneousFunction closure(int n, double k, JetFn f, Eigen::VectorXd base_point);

  int dim() const { return n_; }
  double degree() const { return k_; }
  const Eigen::VectorXd& base_point() const { return base_; }
  bool has_polynomial() const { return poly_.has_value(); }
  const Polynomial& poly() const;

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;
  RJet jet(const Eigen::VectorXd& x, int order) const;

  // Connected-component membership in U = {h > 0} (segment continuation).
  bool contains(const Eigen::VectorXd& x) const;
  // Strict margin defining U_c: h + c for c <= 0, h - c(k-1) for c > 0.
  double uc_margin(const Eigen::VectorXd& x, double c) const;

private:
  HomogeneousFunction() = default;

  int n_ = 0;
  double k_ = 0.0;
  std::optional<Polynomial> poly_;
  JetFn fn_;
  Eigen::VectorXd base_;
};

// -Hessian of h; Lorentzian on U for hyperbolic h.
Eigen::MatrixXd metric_gU(const HomogeneousFunction& h, const Eigen::VectorXd& x);

// -Hessian of log(h+c); Riemannian on U_c.
Eigen::MatrixXd metric_gprime_c(const HomogeneousFunction& h, double c,
                                const Eigen::VectorXd& x);

bool domain_Uc_contains(const HomogeneousFunction& h, double c, const Eigen::VectorXd& x);

// g_U split along the cone direction xi = x:
//   g_check = g_U - g_U(xi,.)^2 / g_U(xi,xi), positive semidefinite with
//   one-dimensional kernel R*xi.
// Residuals of the three closed-form identities relating g_U, g', g'_c to
// g_check and (dh)^2 are reported in the matrix max-norm.
struct ConeDecomposition {
  Eigen::VectorXd xi;
  Eigen::MatrixXd g_check;
  double residual_gu = 0.0;      // g_U = g_check - (k-1)/(kh) (dh)^2
  double residual_gprime = 0.0;  // g'  = g_check/h + (dh)^2/(k h^2)
  double residual_gprime_c = 0.0;
};

ConeDecomposition cone_decomposition(const HomogeneousFunction& h, double c,
                                     const Eigen::VectorXd& x);

// max-norm of lambda^2 g'_c(lambda x) - g'_{lambda^-k c}(x); vanishing
// residual witnesses the scaling isometry of the g'_c family.
double scaling_pullback_residual(const HomogeneousFunction& h, double c, double lambda,
                                 const Eigen::VectorXd& x);

struct Signature {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;
  bool operator==(const Signature&) const = default;
};

// Eigenvalue counts above/below +-tol (tol is scaled by the matrix norm).
Signature signature(const Eigen::MatrixXd& m, double tol = 1e-10);

}  // namespace specgeo
