#include "specgeo/sampling.hpp"

#include <cmath>

namespace specgeo {

namespace {

Eigen::VectorXd comfortable_base(const HomogeneousFunction& h, double c) {
  Eigen::VectorXd base = h.base_point();
  double s = 1.0;
  for (int it = 0; it < 400; ++it) {
    Eigen::VectorXd p = s * base;
    if (h.uc_margin(p, c) >= 0.5 * h.value(p) && h.value(p) >= 1.0) return p;
    s *= 1.25;
  }
  throw DomainError("could not scale the base point into U_c");
}

}  // namespace

Eigen::VectorXd sample_point_Uc(const HomogeneousFunction& h, double c, Rng& rng) {
  const int n = h.dim();
  Eigen::VectorXd center = comfortable_base(h, c);
  const double m0 = h.uc_margin(center, c);
  const double radius = 0.35 * center.norm();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d[i] = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd x = center + radius * rng.uniform() * d;
    if (!h.contains(x)) continue;
    // the margin floor keeps 1/(h+c) powers well conditioned downstream
    if (h.uc_margin(x, c) > 0.05 * m0) return x;
  }
  throw DomainError("rejection sampling failed to hit U_c");
}

Eigen::VectorXcd sample_complex_point(const HomogeneousFunction& h, double c, Rng& rng) {
  const int n = h.dim();
  Eigen::VectorXd x = sample_point_Uc(h, c, rng);
  Eigen::VectorXcd z(n);
  for (int i = 0; i < n; ++i) z[i] = std::complex<double>(rng.uniform(-1.0, 1.0), x[i]);
  return z;
}

Eigen::VectorXd rescale_to_level(const HomogeneousFunction& h, const Eigen::VectorXd& x,
                                 double target) {
  double hv = h.value(x);
  if (!(hv > 0.0) || !(target > 0.0)) throw DomainError("level rescaling needs h > 0");
  return std::pow(target / hv, 1.0 / h.degree()) * x;
}

}  // namespace specgeo
