#include "specgeo/homogeneous.hpp"

#include <cmath>

namespace specgeo {

namespace {

constexpr int kSegmentSamples = 128;

void check_dim(const HomogeneousFunction& h, const Eigen::VectorXd& x) {
  if (x.size() != h.dim()) throw DomainError("point dimension mismatch");
}

RJet log_h_plus_c_jet(const HomogeneousFunction& h, double c, const Eigen::VectorXd& x,
                      int order) {
  RJet hj = h.jet(x, order);
  if (!(hj.value() + c > 0.0)) throw EvalError("h + c is not positive (singular locus)");
  return log(hj + c);
}

Eigen::MatrixXd neg_hessian_of_jet(const RJet& j, int n) {
  Eigen::MatrixXd m(n, n);
  std::vector<int> alpha(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int jj = i; jj < n; ++jj) {
      alpha.assign(n, 0);
      alpha[i] += 1;
      alpha[jj] += 1;
      double v = -j.partial(alpha);
      m(i, jj) = v;
      m(jj, i) = v;
    }
  }
  return m;
}

}  // namespace

HomogeneousFunction HomogeneousFunction::polynomial(Polynomial p, Eigen::VectorXd base_point) {
  HomogeneousFunction h;
  h.n_ = p.nvars();
  int deg = p.degree();
  if (deg < 2) throw ConfigError("homogeneous degree must exceed 1");
  if (!p.is_homogeneous(deg)) throw ConfigError("polynomial is not homogeneous");
  h.k_ = static_cast<double>(deg);
  h.poly_ = std::move(p);
  h.base_ = std::move(base_point);
  if (h.base_.size() != h.n_) throw ConfigError("base point dimension mismatch");
  if (!(h.value(h.base_) > 0.0)) throw DomainError("h(base point) must be positive");
  return h;
}

HomogeneousFunction HomogeneousFunction::closure(int n, double k, JetFn f,
                                                 Eigen::VectorXd base_point) {
  HomogeneousFunction h;
  h.n_ = n;
  h.k_ = k;
  h.fn_ = std::move(f);
  h.base_ = std::move(base_point);
  if (!(k > 1.0)) throw ConfigError("homogeneous degree must exceed 1");
  if (h.base_.size() != n) throw ConfigError("base point dimension mismatch");
  if (!(h.value(h.base_) > 0.0)) throw DomainError("h(base point) must be positive");
  // Euler identity dh(xi) = k h at the base point guards against a wrong k.
  RJet j = h.jet(h.base_, 1);
  double dhxi = 0.0;
  std::vector<int> alpha(n, 0);
  for (int i = 0; i < n; ++i) {
    alpha.assign(n, 0);
    alpha[i] = 1;
    dhxi += h.base_[i] * j.partial(alpha);
  }
  if (std::abs(dhxi - k * j.value()) > 1e-9 * std::abs(k * j.value()))
    throw ConfigError("closure violates the Euler identity for the stated degree");
  return h;
}

const Polynomial& HomogeneousFunction::poly() const {
  if (!poly_) throw ConfigError("homogeneous function has no polynomial form");
  return *poly_;
}

RJet HomogeneousFunction::jet(const Eigen::VectorXd& x, int order) const {
  check_dim(*this, x);
  auto space = JetSpace::of(n_);
  std::vector<RJet> vars;
  vars.reserve(n_);
  for (int i = 0; i < n_; ++i) vars.push_back(RJet::variable(space, order, i, x[i]));
  if (poly_) return poly_->eval(std::span<const RJet>(vars));
  return fn_(vars);
}

double HomogeneousFunction::value(const Eigen::VectorXd& x) const {
  if (poly_) {
    return poly_->eval(std::span<const double>(x.data(), static_cast<size_t>(x.size())));
  }
  return jet(x, 0).value();
}

Eigen::VectorXd HomogeneousFunction::gradient(const Eigen::VectorXd& x) const {
  RJet j = jet(x, 1);
  Eigen::VectorXd g(n_);
  std::vector<int> alpha(n_, 0);
  for (int i = 0; i < n_; ++i) {
    alpha.assign(n_, 0);
    alpha[i] = 1;
    g[i] = j.partial(alpha);
  }
  return g;
}

Eigen::MatrixXd HomogeneousFunction::hessian(const Eigen::VectorXd& x) const {
  return -neg_hessian_of_jet(jet(x, 2), n_);
}

bool HomogeneousFunction::contains(const Eigen::VectorXd& x) const {
  if (x.size() != n_) return false;
  for (int s = 0; s <= kSegmentSamples; ++s) {
    double t = static_cast<double>(s) / kSegmentSamples;
    Eigen::VectorXd p = base_ + t * (x - base_);
    if (!(value(p) > 0.0)) return false;
  }
  return true;
}

double HomogeneousFunction::uc_margin(const Eigen::VectorXd& x, double c) const {
  double h = value(x);
  return c <= 0.0 ? h + c : h - c * (k_ - 1.0);
}

Eigen::MatrixXd metric_gU(const HomogeneousFunction& h, const Eigen::VectorXd& x) {
  check_dim(h, x);
  if (!h.contains(x)) throw DomainError("point outside the cone domain U");
  return neg_hessian_of_jet(h.jet(x, 2), h.dim());
}

bool domain_Uc_contains(const HomogeneousFunction& h, double c, const Eigen::VectorXd& x) {
  check_dim(h, x);
  if (!h.contains(x)) throw DomainError("point outside the cone domain U");
  return h.uc_margin(x, c) > 0.0;
}

Eigen::MatrixXd metric_gprime_c(const HomogeneousFunction& h, double c,
                                const Eigen::VectorXd& x) {
  if (!domain_Uc_contains(h, c, x)) throw DomainError("point outside U_c");
  return neg_hessian_of_jet(log_h_plus_c_jet(h, c, x, 2), h.dim());
}

ConeDecomposition cone_decomposition(const HomogeneousFunction& h, double c,
                                     const Eigen::VectorXd& x) {
  if (!domain_Uc_contains(h, c, x)) throw DomainError("point outside U_c");
  const int n = h.dim();
  const double k = h.degree();
  const double hv = h.value(x);
  const Eigen::VectorXd dh = h.gradient(x);
  const Eigen::MatrixXd gU = neg_hessian_of_jet(h.jet(x, 2), n);

  ConeDecomposition out;
  out.xi = x;
  const Eigen::VectorXd gU_xi = gU * x;
  const double gU_xixi = x.dot(gU_xi);
  if (gU_xixi == 0.0) throw EvalError("degenerate cone direction: g_U(xi, xi) = 0");
  out.g_check = gU - (gU_xi * gU_xi.transpose()) / gU_xixi;

  const Eigen::MatrixXd dh2 = dh * dh.transpose();
  const Eigen::MatrixXd gprime = neg_hessian_of_jet(log_h_plus_c_jet(h, 0.0, x, 2), n);
  const Eigen::MatrixXd gprime_c = neg_hessian_of_jet(log_h_plus_c_jet(h, c, x, 2), n);

  out.residual_gu = (gU - (out.g_check - (k - 1.0) / (k * hv) * dh2)).cwiseAbs().maxCoeff();
  out.residual_gprime =
      (gprime - (out.g_check / hv + dh2 / (k * hv * hv))).cwiseAbs().maxCoeff();
  const double hc = hv + c;
  out.residual_gprime_c =
      (gprime_c -
       (out.g_check / hc + (hv - c * (k - 1.0)) / (k * hv) * dh2 / (hc * hc)))
          .cwiseAbs()
          .maxCoeff();
  return out;
}

double scaling_pullback_residual(const HomogeneousFunction& h, double c, double lambda,
                                 const Eigen::VectorXd& x) {
  if (!(lambda > 0.0)) throw DomainError("scaling factor must be positive");
  const double k = h.degree();
  const double c_back = c * std::pow(lambda, -k);
  Eigen::MatrixXd pulled = lambda * lambda * metric_gprime_c(h, c, lambda * x);
  Eigen::MatrixXd target = metric_gprime_c(h, c_back, x);
  return (pulled - target).cwiseAbs().maxCoeff();
}

Signature signature(const Eigen::MatrixXd& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                    Eigen::EigenvaluesOnly);
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  double cut = tol * scale;
  Signature s;
  for (double ev : es.eigenvalues()) {
    if (ev > cut)
      ++s.n_plus;
    else if (ev < -cut)
      ++s.n_minus;
    else
      ++s.n_zero;
  }
  return s;
}

}  // namespace specgeo
