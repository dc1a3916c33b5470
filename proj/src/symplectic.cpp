#include "specgeo/symplectic.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "specgeo/errors.hpp"
#include "specgeo/special_kahler.hpp"

namespace specgeo {

namespace {

bool is_real(const Eigen::MatrixXcd& m, double tol = 0.0) {
  return m.imag().cwiseAbs().maxCoeff() <= tol;
}

Subgroup infer_subgroup(const Eigen::MatrixXcd& X, Complex s, const Eigen::VectorXcd& v) {
  if (!is_real(X)) return Subgroup::ComplexG;
  bool central_real = s.imag() == 0.0 && v.imag().cwiseAbs().maxCoeff() == 0.0;
  return central_real ? Subgroup::RealG : Subgroup::SpecialKahler;
}

}  // namespace

Eigen::MatrixXd omega0(int n) {
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  o.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  o.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return o;
}

Eigen::MatrixXd omega_hat(int n) {
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * n + 2, 2 * n + 2);
  o(0, 1) = 1.0;
  o(1, 0) = -1.0;
  o.bottomRightCorner(2 * n, 2 * n) = omega0(n);
  return o;
}

Complex symplectic_pairing(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const int n = static_cast<int>(a.size()) / 2;
  Complex acc = 0.0;
  for (int i = 0; i < n; ++i) acc += a[i] * b[n + i] - a[n + i] * b[i];
  return acc;
}

GroupElement::GroupElement(Eigen::MatrixXcd X, Complex s, Eigen::VectorXcd v,
                           double symplectic_tol)
    : X_(std::move(X)), s_(s), v_(std::move(v)) {
  if (X_.rows() != X_.cols() || X_.rows() % 2 != 0 || X_.rows() == 0)
    throw ConfigError("X must be a 2n x 2n matrix");
  n_ = static_cast<int>(X_.rows()) / 2;
  if (v_.size() != 2 * n_) throw ConfigError("v must have length 2n");
  Eigen::MatrixXcd o = omega0(n_).cast<Complex>();
  double defect = (X_.transpose() * o * X_ - o).cwiseAbs().maxCoeff();
  if (!(defect <= symplectic_tol))
    throw ConfigError("X is not symplectic: X^t Omega_0 X - Omega_0 defect " +
                      std::to_string(defect));
  flag_ = infer_subgroup(X_, s_, v_);
}

GroupElement GroupElement::identity(int n) {
  return GroupElement(Eigen::MatrixXcd::Identity(2 * n, 2 * n), 0.0,
                      Eigen::VectorXcd::Zero(2 * n));
}

Eigen::VectorXcd GroupElement::apply(const Eigen::VectorXcd& q) const {
  return X_ * q + v_;
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
  if (a.n() != b.n()) throw ConfigError("group elements of different dimension");
  Eigen::VectorXcd Xbv = a.X() * b.v();
  return GroupElement(a.X() * b.X(),
                      a.s() + b.s() + 0.5 * symplectic_pairing(a.v(), Xbv),
                      Xbv + a.v());
}

GroupElement group_inv(const GroupElement& a) {
  // X^{-1} = -Omega_0 X^t Omega_0 for symplectic X
  Eigen::MatrixXcd o = omega0(a.n()).cast<Complex>();
  Eigen::MatrixXcd Xinv = -o * a.X().transpose() * o;
  return GroupElement(Xinv, -a.s(), -(Xinv * a.v()));
}

Eigen::MatrixXcd rho(const GroupElement& a) {
  const int n = a.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n + 2, 2 * n + 2);
  Eigen::VectorXcd vhat = a.X().transpose() * omega0(n).cast<Complex>() * a.v();
  m(0, 0) = 1.0;
  m(1, 0) = -2.0 * a.s();
  m(1, 1) = 1.0;
  m.block(1, 2, 1, 2 * n) = vhat.transpose();
  m.block(2, 0, 2 * n, 1) = a.v();
  m.block(2, 2, 2 * n, 2 * n) = a.X();
  return m;
}

GroupElement random_sp(int n, Rng& rng, double scale, Subgroup flavor) {
  if (flavor != Subgroup::ComplexG) {
    // real Hamiltonian path keeps the entries exactly real
    Eigen::MatrixXd S(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      for (int j = i; j < 2 * n; ++j) {
        double e = rng.uniform(-0.5, 0.5) * scale;
        S(i, j) = e;
        S(j, i) = e;
      }
    }
    Eigen::MatrixXd X = Eigen::MatrixXd(omega0(n) * S).exp();
    return GroupElement(X.cast<Complex>(), 0.0, Eigen::VectorXcd::Zero(2 * n));
  }
  Eigen::MatrixXcd S(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = i; j < 2 * n; ++j) {
      Complex e(rng.uniform(-0.5, 0.5) * scale, rng.uniform(-0.5, 0.5) * scale);
      S(i, j) = e;
      S(j, i) = e;
    }
  }
  Eigen::MatrixXcd X = Eigen::MatrixXcd(omega0(n).cast<Complex>() * S).exp();
  return GroupElement(std::move(X), 0.0, Eigen::VectorXcd::Zero(2 * n));
}

GroupElement random_element(int n, Rng& rng, Subgroup flavor, double scale) {
  GroupElement sp = random_sp(n, rng, scale, flavor);
  Complex s(rng.uniform(-1.0, 1.0), 0.0);
  Eigen::VectorXcd v(2 * n);
  for (int i = 0; i < 2 * n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  if (flavor != Subgroup::RealG) {
    s += Complex(0.0, rng.uniform(-1.0, 1.0));
    for (int i = 0; i < 2 * n; ++i) v[i] += Complex(0.0, rng.uniform(-1.0, 1.0));
  }
  return GroupElement(sp.X(), s, v);
}

PotentialSample act_potential(const GroupElement& a, const PotentialSample& sample) {
  PotentialSample out;
  out.q = a.apply(sample.q);
  out.f = sample.f + symplectic_pairing(out.q, a.v()) - 2.0 * a.s();
  if (sample.df) {
    Eigen::MatrixXcd o = omega0(a.n()).cast<Complex>();
    Eigen::MatrixXcd Xinv = -o * a.X().transpose() * o;
    out.df = Xinv.transpose() * (*sample.df) + o * a.v();
  }
  return out;
}

namespace {

// phi = (z, dF) and its tangent map at a point, from an order-2 jet of F.
struct PhiJet {
  Eigen::VectorXcd phi;       // 2n
  Eigen::MatrixXcd dphi;      // 2n x n columns d(phi)/dz^a
};

PhiJet phi_jet(const Prepotential& F, const Eigen::VectorXcd& z) {
  const int n = F.dim();
  CJet j = F.jet_at(z, 2);
  PhiJet out;
  out.phi.resize(2 * n);
  out.dphi = Eigen::MatrixXcd::Zero(2 * n, n);
  std::vector<int> alpha(n, 0);
  for (int i = 0; i < n; ++i) {
    out.phi[i] = z[i];
    alpha.assign(n, 0);
    alpha[i] = 1;
    out.phi[n + i] = j.partial(alpha);
    out.dphi(i, i) = 1.0;
    for (int a = 0; a < n; ++a) {
      alpha.assign(n, 0);
      alpha[i] += 1;
      alpha[a] += 1;
      out.dphi(n + i, a) = j.partial(alpha);
    }
  }
  return out;
}

}  // namespace

PrepotentialAction act_prepotential(const GroupElement& a, const Prepotential& F,
                                    const Eigen::VectorXcd& z,
                                    const Eigen::VectorXcd& z_ref) {
  const int n = F.dim();
  if (a.n() != n) throw ConfigError("group element dimension mismatch");
  if (totally_complex_rank(F, z) != 2 * n)
    throw DomainError("the immersion is not totally complex at z");

  auto formula_at = [&](const Eigen::VectorXcd& p) {
    PhiJet pj = phi_jet(F, p);
    Eigen::VectorXcd phi_p = a.apply(pj.phi);
    Complex Fv = F.value(p);
    Complex ztw = (pj.phi.head(n).transpose() * pj.phi.tail(n))(0, 0);
    Complex zptwp = (phi_p.head(n).transpose() * phi_p.tail(n))(0, 0);
    Complex Fp = Fv - 0.5 * ztw + 0.5 * zptwp +
                 0.5 * symplectic_pairing(phi_p, a.v()) - a.s();
    return std::tuple{pj, phi_p, Fv, ztw, zptwp, Fp};
  };

  auto [pj, phi_p, Fv, ztw, zptwp, Fp] = formula_at(z);

  PrepotentialAction out;
  out.phi_prime = phi_p;
  out.F_value = Fv;
  out.F_prime = Fp;

  // Prepotential property of the transformed pair: dF' = sum w'_i dz'^i on
  // the 1-jet at z.
  {
    Eigen::MatrixXcd dphi_p = a.X() * pj.dphi;
    // dF' along z^a from the formula, via complex jets of all ingredients
    auto space = JetSpace::of(n);
    std::vector<CJet> vars;
    for (int i = 0; i < n; ++i) vars.push_back(CJet::variable(space, 3, i, z[i]));
    CJet Fj = F.eval(vars);
    std::vector<CJet> w(n, CJet(space, 2));
    for (int i = 0; i < n; ++i) w[i] = Fj.derivative(i);
    std::vector<CJet> zp(n, CJet(space, 2)), wp(n, CJet(space, 2));
    for (int r = 0; r < n; ++r) {
      CJet zr(space, 2), wr(space, 2);
      for (int ccol = 0; ccol < n; ++ccol) {
        zr += a.X()(r, ccol) * vars[ccol].truncated(2) + a.X()(r, n + ccol) * w[ccol];
        wr += a.X()(n + r, ccol) * vars[ccol].truncated(2) + a.X()(n + r, n + ccol) * w[ccol];
      }
      zp[r] = zr + a.v()[r];
      wp[r] = wr + a.v()[n + r];
    }
    CJet Fpj(space, 2);
    {
      CJet ztwj(space, 2), zptwpj(space, 2), omj(space, 2);
      for (int i = 0; i < n; ++i) {
        ztwj += vars[i].truncated(2) * w[i];
        zptwpj += zp[i] * wp[i];
        omj += zp[i] * a.v()[n + i] - wp[i] * a.v()[i];
      }
      Fpj = Fj.truncated(2) - 0.5 * ztwj + 0.5 * zptwpj + 0.5 * omj - a.s();
    }
    double res = 0.0;
    for (int aa = 0; aa < n; ++aa) {
      Complex lhs = Fpj.derivative(aa).value();
      Complex rhs = 0.0;
      for (int i = 0; i < n; ++i) rhs += wp[i].value() * zp[i].derivative(aa).value();
      res = std::max(res, std::abs(lhs - rhs));
    }
    out.prepotential_residual = res;
  }

  // Independent route: F'_int(z) = F'(z_ref) + int w'^t dz' along the
  // straight segment from z_ref to z (composite Gauss-Legendre; the
  // integrand is polynomial for polynomial F).
  {
    auto [pj0, phi_p0, Fv0, ztw0, zptwp0, Fp0] = formula_at(z_ref);
    static const double kNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                     0.5384693101056831, 0.9061798459386640};
    static const double kWeights[5] = {0.2369268850561891, 0.4786286704993665,
                                       0.5688888888888889, 0.4786286704993665,
                                       0.2369268850561891};
    const int panels = 8;
    Eigen::VectorXcd dz = z - z_ref;
    Complex integral = 0.0;
    for (int p = 0; p < panels; ++p) {
      double ta = static_cast<double>(p) / panels;
      double tb = static_cast<double>(p + 1) / panels;
      for (int q = 0; q < 5; ++q) {
        double t = 0.5 * (ta + tb) + 0.5 * (tb - ta) * kNodes[q];
        Eigen::VectorXcd zt = z_ref + t * dz;
        PhiJet pt = phi_jet(F, zt);
        Eigen::VectorXcd phit = a.apply(pt.phi);
        Eigen::MatrixXcd dphit = a.X() * pt.dphi;  // d(phi')/dz^a
        Complex integrand = 0.0;
        for (int i = 0; i < n; ++i) {
          Complex dzp_dt = (dphit.row(i) * dz)(0, 0);
          integrand += phit[n + i] * dzp_dt;
        }
        integral += 0.5 * (tb - ta) * kWeights[q] * integrand;
      }
    }
    Complex F_int = Fp0 + integral;
    Complex lhs = F_int - 0.5 * zptwp;
    Complex rhs = (Fv - 0.5 * ztw) + 0.5 * symplectic_pairing(phi_p, a.v()) - a.s();
    out.dewit_residual = std::abs(lhs - rhs);
  }
  return out;
}

}  // namespace specgeo
