#include "specgeo/special_kahler.hpp"

#include <cmath>

#include "specgeo/metric_field.hpp"

namespace specgeo {

namespace {

constexpr Complex kI(0.0, 1.0);

std::vector<CJet> seed_vars(const Eigen::VectorXcd& z, int order) {
  auto space = JetSpace::of(static_cast<int>(z.size()));
  std::vector<CJet> vars;
  vars.reserve(z.size());
  for (int i = 0; i < z.size(); ++i)
    vars.push_back(CJet::variable(space, order, i, z[i]));
  return vars;
}

double cond_estimate(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

double cond_estimate(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

Prepotential Prepotential::cubic(Polynomial h) {
  Prepotential F;
  F.n_ = h.nvars();
  F.kind_ = Kind::Cubic;
  if (!h.is_homogeneous(3)) throw ConfigError("cubic prepotential needs a degree-3 polynomial");
  F.base_ = [h = std::move(h)](std::span<const CJet> z) { return -h.eval(z); };
  return F;
}

Prepotential Prepotential::quadratic(Eigen::MatrixXcd a, Complex C) {
  Prepotential F;
  if (a.rows() != a.cols() || a.rows() == 0) throw ConfigError("quadratic coefficient matrix must be square");
  F.n_ = static_cast<int>(a.rows());
  F.kind_ = Kind::Quadratic;
  F.shift_ = 0.5 * C;
  Eigen::MatrixXcd sym = 0.5 * (a + a.transpose());
  F.base_ = [sym](std::span<const CJet> z) {
    const int n = static_cast<int>(sym.rows());
    CJet acc(z[0].space_ptr(), z[0].order());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) acc += sym(i, j) * (z[i] * z[j]);
    }
    return acc;
  };
  return F;
}

Prepotential Prepotential::general(int n, EvalFn f) {
  Prepotential F;
  F.n_ = n;
  F.kind_ = Kind::General;
  F.base_ = std::move(f);
  return F;
}

Prepotential Prepotential::with_shift(Complex delta) const {
  if (kind_ == Kind::Conified)
    throw ConfigError("a conified prepotential cannot carry an additive constant");
  Prepotential F = *this;
  F.shift_ += delta;
  return F;
}

Prepotential Prepotential::conified() const {
  Prepotential F;
  F.n_ = n_ + 1;
  F.kind_ = Kind::Conified;
  F.inner_ = std::make_shared<Prepotential>(*this);
  return F;
}

const Prepotential& Prepotential::inner() const {
  if (kind_ != Kind::Conified) throw ConfigError("not a conified prepotential");
  return *inner_;
}

CJet Prepotential::eval(std::span<const CJet> z) const {
  if (static_cast<int>(z.size()) != n_) throw ConfigError("prepotential arity mismatch");
  if (kind_ == Kind::Conified) {
    const CJet& z0 = z[0];
    if (z0.value() == Complex(0.0))
      throw EvalError("conified prepotential evaluated at Z^0 = 0");
    std::vector<CJet> ratio;
    ratio.reserve(n_ - 1);
    for (int i = 1; i < n_; ++i) ratio.push_back(z[i] / z0);
    return z0 * z0 * inner_->eval(std::span<const CJet>(ratio));
  }
  CJet out = base_(z);
  out += shift_;
  return out;
}

CJet Prepotential::jet_at(const Eigen::VectorXcd& z, int order) const {
  auto vars = seed_vars(z, order);
  return eval(vars);
}

Complex Prepotential::value(const Eigen::VectorXcd& z) const { return jet_at(z, 0).value(); }

Eigen::VectorXcd Prepotential::gradient(const Eigen::VectorXcd& z) const {
  CJet j = jet_at(z, 1);
  Eigen::VectorXcd g(n_);
  std::vector<int> alpha(n_, 0);
  for (int i = 0; i < n_; ++i) {
    alpha.assign(n_, 0);
    alpha[i] = 1;
    g[i] = j.partial(alpha);
  }
  return g;
}

Eigen::MatrixXcd Prepotential::hessian(const Eigen::VectorXcd& z) const {
  CJet j = jet_at(z, 2);
  Eigen::MatrixXcd m(n_, n_);
  std::vector<int> alpha(n_, 0);
  for (int i = 0; i < n_; ++i) {
    for (int jj = i; jj < n_; ++jj) {
      alpha.assign(n_, 0);
      alpha[i] += 1;
      alpha[jj] += 1;
      Complex v = j.partial(alpha);
      m(i, jj) = v;
      m(jj, i) = v;
    }
  }
  return m;
}

AskData ask_data(const Prepotential& F, const Eigen::VectorXcd& z) {
  const int n = F.dim();
  AskData out;
  out.z = z;
  CJet j = F.jet_at(z, 2);
  out.F = j.value();
  out.w.resize(n);
  std::vector<int> alpha(n, 0);
  for (int i = 0; i < n; ++i) {
    alpha.assign(n, 0);
    alpha[i] = 1;
    out.w[i] = j.partial(alpha);
  }
  Eigen::MatrixXcd hess = F.hessian(z);
  out.g = hess.imag();
  out.K = 0.0;
  for (int i = 0; i < n; ++i) out.K += std::imag(std::conj(z[i]) * out.w[i]);
  Complex ztw = (z.transpose() * out.w)(0, 0);
  out.f = 2.0 * out.F - ztw;
  double scale = std::max(1.0, out.g.cwiseAbs().maxCoeff());
  out.g_degenerate = !(cond_estimate(out.g) < 1e12) || out.g.cwiseAbs().maxCoeff() < 1e-14 * scale;
  return out;
}

ConicalPotential conical_potential(const Prepotential& Fhat, const Eigen::VectorXcd& Z) {
  if (Fhat.kind() != Prepotential::Kind::Conified)
    throw ConfigError("conical potential needs a conified prepotential");
  if (Z[0] == Complex(0.0)) throw EvalError("Z^0 = 0 is outside the cone chart");
  const int N = Fhat.dim();
  Eigen::VectorXcd grad = Fhat.gradient(Z);
  ConicalPotential out;
  out.khat = 0.0;
  for (int I = 0; I < N; ++I) out.khat += std::imag(std::conj(Z[I]) * grad[I]);

  Eigen::VectorXcd z = Z.tail(N - 1) / Z[0];
  AskData ask = ask_data(Fhat.inner(), z);
  double factor = std::norm(Z[0]);
  out.factorization_residual = std::abs(out.khat - factor * (ask.K + std::imag(ask.f)));
  return out;
}

Nondegeneracy nondegeneracy(const Prepotential& F, const Eigen::VectorXcd& z) {
  const int n = F.dim();
  Nondegeneracy out;
  Prepotential Fhat = F.conified();
  Eigen::VectorXcd Z(n + 1);
  Z[0] = 1.0;
  Z.tail(n) = z;
  Eigen::MatrixXd cone_hess = Fhat.hessian(Z).imag();
  out.cone_hessian_cond = cond_estimate(cone_hess);
  out.kahlerian = out.cone_hessian_cond < 1e12;

  AskData ask = ask_data(F, z);
  out.khat = ask.K + std::imag(ask.f);
  double scale = std::max({1.0, std::abs(ask.K), std::abs(ask.f)});
  out.khat_nonzero = std::abs(out.khat) > 1e-12 * scale;

  if (out.khat_nonzero) {
    PskMetric m = psk_metric_detail(F, z);
    out.psk_hessian_cond = cond_estimate(m.hermitian);
    out.omega_bar_nondeg = out.psk_hessian_cond < 1e12;
  }
  return out;
}

PskMetric psk_metric_detail(const Prepotential& F, const Eigen::VectorXcd& z) {
  const int n = F.dim();
  PskMetric out;

  // Route 1: real jets in the 2n real coordinates (y, x), z = y + i x.
  {
    auto space = JetSpace::of(2 * n);
    std::vector<CJet> zj;
    zj.reserve(n);
    for (int i = 0; i < n; ++i) {
      CJet y = complexify(RJet::variable(space, 3, i, z[i].real()));
      CJet x = complexify(RJet::variable(space, 3, n + i, z[i].imag()));
      zj.push_back(y + kI * x);
    }
    CJet Fj = F.eval(zj);
    // w_i = dF/dz^i via the Wirtinger combination of real-variable derivatives
    std::vector<CJet> w;
    w.reserve(n);
    for (int i = 0; i < n; ++i) {
      w.push_back((Fj.derivative(i) - kI * Fj.derivative(n + i)) * Complex(0.5));
    }
    CJet fj = Fj.truncated(2) * Complex(2.0);
    RJet Kj(space, 2);
    for (int i = 0; i < n; ++i) {
      fj -= zj[i].truncated(2) * w[i];
      Kj += imag_part(conj(zj[i].truncated(2)) * w[i]);
    }
    RJet u = Kj + imag_part(fj);
    double u0 = u.value();
    if (u0 == 0.0) throw EvalError("K + Im f vanishes: degenerate conification");
    out.khat_sign = u0 > 0.0 ? 1 : -1;
    RJet Kprime = -log(u * static_cast<double>(out.khat_sign));
    out.hermitian.resize(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double yy = Kprime.derivative(i).derivative(j).value();
        double xx = Kprime.derivative(n + i).derivative(n + j).value();
        double yx = Kprime.derivative(i).derivative(n + j).value();
        double xy = Kprime.derivative(n + i).derivative(j).value();
        out.hermitian(i, j) = 0.25 * Complex(yy + xx, yx - xy);
      }
    }
  }

  // Route 2: cone-slice formula from the conified prepotential at (1, z).
  {
    Prepotential Fhat = F.conified();
    Eigen::VectorXcd Z(n + 1);
    Z[0] = 1.0;
    Z.tail(n) = z;
    CJet j = Fhat.jet_at(Z, 2);
    const int N = n + 1;
    std::vector<int> alpha(N, 0);
    Eigen::VectorXcd grad(N);
    for (int I = 0; I < N; ++I) {
      alpha.assign(N, 0);
      alpha[I] = 1;
      grad[I] = j.partial(alpha);
    }
    Eigen::MatrixXcd hess(N, N);
    for (int I = 0; I < N; ++I) {
      for (int J = I; J < N; ++J) {
        alpha.assign(N, 0);
        alpha[I] += 1;
        alpha[J] += 1;
        Complex v = j.partial(alpha);
        hess(I, J) = v;
        hess(J, I) = v;
      }
    }
    double khat = 0.0;
    for (int I = 0; I < N; ++I) khat += std::imag(std::conj(Z[I]) * grad[I]);
    // Khat_i = (sum_I conj(Z^I) Fhat_{Ii} - conj(Fhat_i)) / (2i)
    Eigen::VectorXcd dkhat(n);
    for (int i = 0; i < n; ++i) {
      Complex acc = 0.0;
      for (int I = 0; I < N; ++I) acc += std::conj(Z[I]) * hess(I, i + 1);
      dkhat[i] = (acc - std::conj(grad[i + 1])) / (2.0 * kI);
    }
    out.slice_hermitian.resize(n, n);
    for (int i = 0; i < n; ++i) {
      for (int jj = 0; jj < n; ++jj) {
        double ghat = std::imag(hess(i + 1, jj + 1));
        out.slice_hermitian(i, jj) =
            -ghat / khat + dkhat[i] * std::conj(dkhat[jj]) / (khat * khat);
      }
    }
  }

  out.cross_residual = (out.hermitian - out.slice_hermitian).cwiseAbs().maxCoeff();
  return out;
}

Eigen::MatrixXcd psk_metric(const Prepotential& F, const Eigen::VectorXcd& z) {
  PskMetric m = psk_metric_detail(F, z);
  double scale = std::max(1.0, m.hermitian.cwiseAbs().maxCoeff());
  if (!(m.cross_residual <= 1e-8 * scale))
    throw EvalError("projective metric routes disagree beyond tolerance");
  return m.hermitian;
}

int totally_complex_rank(const Prepotential& F, const Eigen::VectorXcd& z, double tol) {
  const int n = F.dim();
  Eigen::MatrixXcd hess = F.hessian(z);
  // columns of d(phi)/dz^a stacked as (z-block, w-block)
  Eigen::MatrixXcd dphi(2 * n, n);
  dphi.topRows(n) = Eigen::MatrixXcd::Identity(n, n);
  dphi.bottomRows(n) = hess;
  Eigen::MatrixXd jac(2 * n, 2 * n);
  jac.leftCols(n) = dphi.real();
  jac.rightCols(n) = -dphi.imag();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  double smax = svd.singularValues().maxCoeff();
  int rank = 0;
  for (double s : svd.singularValues()) {
    if (s > tol * std::max(1.0, smax)) ++rank;
  }
  return rank;
}

GroupElement normalize_pair(const Prepotential& F, const Eigen::VectorXcd& z0) {
  const int n = F.dim();
  AskData ask = ask_data(F, z0);
  Eigen::VectorXcd phi(2 * n);
  phi.head(n) = ask.z;
  phi.tail(n) = ask.w;
  // translate phi(z0) to the real point 0; then Im((x.f)(0)) = Im(f) - 2 Im(s)
  Complex s(0.0, 0.5 * (std::imag(ask.f) - 1.0));
  return GroupElement(Eigen::MatrixXcd::Identity(2 * n, 2 * n), s, -phi);
}

double khat_pairing(const Eigen::VectorXcd& P) {
  const int N = static_cast<int>(P.size()) / 2;
  // coordinate order (z^0, w_0, z^1..z^n, w_1..w_n)
  double acc = std::imag(std::conj(P[0]) * P[1]);
  const int n = N - 1;
  for (int i = 0; i < n; ++i) acc += std::imag(std::conj(P[2 + i]) * P[2 + n + i]);
  return acc;
}

Eigen::VectorXcd cone_embedding(const Prepotential& F, const Eigen::VectorXcd& z,
                                Complex z0) {
  const int n = F.dim();
  AskData ask = ask_data(F, z);
  Eigen::VectorXcd P(2 * n + 2);
  P[0] = z0;
  P[1] = z0 * ask.f;
  P.segment(2, n) = z0 * ask.z;
  P.segment(2 + n, n) = z0 * ask.w;
  return P;
}

Eigen::MatrixXd hermitian_to_real_form(const Eigen::MatrixXcd& H) {
  const int n = static_cast<int>(H.rows());
  Eigen::MatrixXd S = H.real();
  Eigen::MatrixXd T = H.imag();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = S;
  out.bottomRightCorner(n, n) = S;
  out.topRightCorner(n, n) = T;
  out.bottomLeftCorner(n, n) = -T;
  return out;
}

}  // namespace specgeo
