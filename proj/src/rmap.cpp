#include "specgeo/rmap.hpp"

#include <cmath>

namespace specgeo {

namespace {

constexpr Complex kI(0.0, 1.0);

Eigen::MatrixXd blockdiag2(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = m;
  out.bottomRightCorner(n, n) = m;
  return out;
}

Eigen::VectorXd im_part(const Eigen::VectorXcd& z) { return z.imag(); }

Prepotential minus_h(const HomogeneousFunction& h) {
  return Prepotential::cubic(h.poly());
}

}  // namespace

Eigen::MatrixXd rigid_rmap_metric(const HomogeneousFunction& h, const Eigen::VectorXcd& z) {
  Eigen::VectorXd x = im_part(z);
  if (!h.contains(x)) throw DomainError("Im z outside the cone domain U");
  return blockdiag2(-h.hessian(x));
}

double rigid_rmap_cross_residual(const HomogeneousFunction& h, const Eigen::VectorXcd& z) {
  Eigen::MatrixXd block = rigid_rmap_metric(h, z);
  AskData ask = ask_data(minus_h(h), z);
  Eigen::MatrixXcd herm = ask.g.cast<Complex>();
  return (block - hermitian_to_real_form(herm)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd deformed_rmap_metric(const HomogeneousFunction& h, double c,
                                     const Eigen::VectorXcd& z) {
  Eigen::VectorXd x = im_part(z);
  if (!domain_Uc_contains(h, c, x)) throw DomainError("Im z outside U_c");
  return 0.25 * blockdiag2(metric_gprime_c(h, c, x));
}

DeformedRmapMetric deformed_rmap_metric_detail(const HomogeneousFunction& h, double c,
                                               const Eigen::VectorXcd& z) {
  DeformedRmapMetric out;
  out.path_a = deformed_rmap_metric(h, c, z);
  Prepotential F = minus_h(h).with_shift(-2.0 * kI * c);
  Eigen::MatrixXcd herm = psk_metric(F, z);
  out.path_b = hermitian_to_real_form(herm);
  out.residual = (out.path_a - out.path_b).cwiseAbs().maxCoeff();
  return out;
}

double imh_identity_residual(const HomogeneousFunction& h, const Eigen::VectorXcd& z) {
  if (!h.has_polynomial() || h.degree() != 3.0)
    throw ConfigError("the Im h identity is specific to homogeneous cubics");
  const int n = h.dim();
  const Polynomial& p = h.poly();
  std::vector<Complex> zs(z.data(), z.data() + n);
  Complex hz = p.eval(std::span<const Complex>(zs));

  auto space = JetSpace::of(n);
  std::vector<CJet> vars;
  for (int i = 0; i < n; ++i) vars.push_back(CJet::variable(space, 1, i, z[i]));
  CJet hj = p.eval(std::span<const CJet>(vars));
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::imag(std::conj(z[i]) * hj.derivative(i).value());

  double hx = h.value(z.imag());
  return std::abs(std::imag(hz) - sum + 4.0 * hx);
}

double elementary_deformation_residual(const HomogeneousFunction& h, double c,
                                       const Eigen::VectorXcd& z) {
  const int n = h.dim();
  Eigen::VectorXd x = im_part(z);
  if (!domain_Uc_contains(h, c, x)) throw DomainError("Im z outside U_c");

  Eigen::MatrixXd lhs;
  if (h.has_polynomial() && h.degree() == 3.0) {
    lhs = deformed_rmap_metric_detail(h, c, z).path_b;
  } else {
    lhs = deformed_rmap_metric(h, c, z);
  }

  const double Kc = -4.0 * (h.value(x) + c);
  if (Kc == 0.0) throw EvalError("K_c vanishes");
  Eigen::MatrixXd g = blockdiag2(-h.hessian(x));

  // dK_c = (0, -4 dh) and dK_c o J = (-4 dh, 0) in the (y, x) blocks
  Eigen::VectorXd dh = h.gradient(x);
  Eigen::VectorXd dkc = Eigen::VectorXd::Zero(2 * n);
  dkc.tail(n) = -4.0 * dh;
  Eigen::VectorXd dkcJ = Eigen::VectorXd::Zero(2 * n);
  dkcJ.head(n) = -4.0 * dh;

  // The coefficient of g is -1/K_c = 1/(4(h+c)); with +1/K_c the g-term
  // would contradict the block form of the deformed metric (check n = 1,
  // h = x^3, c = 0: both sides are then 3/(4x^2) dx^2 + 3/(4x^2) dy^2).
  Eigen::MatrixXd rhs = -g / Kc +
                        (dkc * dkc.transpose() + dkcJ * dkcJ.transpose()) / (4.0 * Kc * Kc);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace specgeo
