#include "specgeo/metric_field.hpp"

#include <cmath>
#include <sstream>

namespace specgeo {

namespace {

// Gauss-Jordan inversion of a matrix of jets, pivoting on the constant terms.
std::vector<RJet> invert_jet_matrix(std::vector<RJet> m, int n) {
  auto space = m[0].space_ptr();
  int order = m[0].order();
  std::vector<RJet> inv;
  inv.reserve(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      inv.push_back(RJet::constant(space, order, i == j ? 1.0 : 0.0));
    }
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[r * n + col].value()) > std::abs(m[pivot * n + col].value())) pivot = r;
    }
    if (std::abs(m[pivot * n + col].value()) < 1e-300)
      throw SingularMatrixError("metric matrix is numerically singular");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(m[pivot * n + j], m[col * n + j]);
        std::swap(inv[pivot * n + j], inv[col * n + j]);
      }
    }
    RJet d = reciprocal(m[col * n + col]);
    for (int j = 0; j < n; ++j) {
      m[col * n + j] = m[col * n + j] * d;
      inv[col * n + j] = inv[col * n + j] * d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      RJet f = m[r * n + col];
      if (f.value() == 0.0) {
        bool zero = true;
        for (int idx = 0; idx < f.size() && zero; ++idx) zero = (f[idx] == 0.0);
        if (zero) continue;
      }
      for (int j = 0; j < n; ++j) {
        m[r * n + j] -= f * m[col * n + j];
        inv[r * n + j] -= f * inv[col * n + j];
      }
    }
  }
  return inv;
}

// Gamma^k_{ij} as jets of the requested order.
std::vector<RJet> christoffel_jets(const MetricField& g, const Eigen::VectorXd& x,
                                   int order) {
  const int n = g.dim();
  std::vector<RJet> gm = g.entries(x, order + 1);
  guarded_inverse(g.value(x));  // condition guard before committing to jets

  std::vector<RJet> gtrunc;
  gtrunc.reserve(n * n);
  for (auto& e : gm) gtrunc.push_back(e.truncated(order));
  std::vector<RJet> ginv = invert_jet_matrix(gtrunc, n);

  // dg[l][i][j] = d_l g_{ij}
  std::vector<RJet> dg;
  dg.reserve(n * n * n);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) dg.push_back(gm[i * n + j].derivative(l));
    }
  }
  auto dgat = [&](int l, int i, int j) -> const RJet& { return dg[(l * n + i) * n + j]; };

  std::vector<RJet> gamma;
  gamma.reserve(n * n * n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        RJet acc(gm[0].space_ptr(), order);
        for (int l = 0; l < n; ++l) {
          acc += ginv[k * n + l] * (dgat(i, j, l) + dgat(j, i, l) - dgat(l, i, j));
        }
        gamma.push_back(acc * 0.5);
      }
    }
  }
  return gamma;
}

}  // namespace

std::vector<RJet> MetricField::entries(const Eigen::VectorXd& x, int order) const {
  if (x.size() != dim_) throw DomainError("point dimension mismatch");
  if (order > 2) throw OrderError("metric entries carry jets up to order 2");
  return eval_(x, order);
}

Eigen::MatrixXd MetricField::value(const Eigen::VectorXd& x) const {
  auto e = entries(x, 0);
  Eigen::MatrixXd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) m(i, j) = e[i * dim_ + j].value();
  }
  return 0.5 * (m + m.transpose());
}

MetricField MetricField::euclidean(int n) {
  return MetricField(n, "euclidean", [n](const Eigen::VectorXd&, int order) {
    auto space = JetSpace::of(n);
    std::vector<RJet> out;
    out.reserve(n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        out.push_back(RJet::constant(space, order, i == j ? 1.0 : 0.0));
      }
    }
    return out;
  });
}

MetricField MetricField::gprime_c(HomogeneousFunction h, double c) {
  const int n = h.dim();
  std::ostringstream name;
  name << "gprime_c(c=" << c << ")";
  auto fn = [h = std::move(h), c, n](const Eigen::VectorXd& x, int order) {
    // local guard only; component membership is the callers' op-level check
    if (!(h.value(x) > 0.0)) throw DomainError("h is not positive");
    RJet hj = h.jet(x, order + 2);
    if (!(hj.value() + c > 0.0)) throw EvalError("h + c is not positive (singular locus)");
    RJet u = log(hj + c);
    std::vector<RJet> out;
    out.reserve(n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out.push_back(-(u.derivative(i).derivative(j)));
    }
    return out;
  };
  return MetricField(n, name.str(), std::move(fn));
}

MetricField MetricField::deformed_rmap(HomogeneousFunction h, double c) {
  const int n = h.dim();
  MetricField block = gprime_c(std::move(h), c);
  std::ostringstream name;
  name << "deformed_rmap(c=" << c << ")";
  auto fn = [block = std::move(block), n](const Eigen::VectorXd& yx, int order) {
    auto space = JetSpace::of(2 * n);
    Eigen::VectorXd x = yx.tail(n);
    std::vector<RJet> g = block.entries(x, order);
    // re-embed the x-only jets into the (y, x) variables
    std::vector<RJet> out(4 * n * n, RJet(space, order));
    std::vector<int> alpha(2 * n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        RJet src = g[i * n + j];
        RJet dst(space, order);
        for (int idx = 0; idx < src.size(); ++idx) {
          auto exps = src.space().exponents(idx);
          std::fill(alpha.begin(), alpha.end(), 0);
          for (int v = 0; v < n; ++v) alpha[n + v] = exps[v];
          int didx = space->index_of(alpha);
          dst[didx] = 0.25 * src[idx];
        }
        out[i * (2 * n) + j] = dst;
        out[(n + i) * (2 * n) + (n + j)] = dst;
      }
    }
    return out;
  };
  return MetricField(2 * n, name.str(), std::move(fn));
}

MetricField MetricField::scaled(MetricField g, double factor) {
  int n = g.dim();
  std::string name = g.descriptor() + "*scale";
  auto fn = [g = std::move(g), factor](const Eigen::VectorXd& x, int order) {
    auto out = g.entries(x, order);
    for (auto& e : out) e *= factor;
    return out;
  };
  return MetricField(n, std::move(name), std::move(fn));
}

Eigen::MatrixXd guarded_inverse(const Eigen::MatrixXd& m, double max_cond) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) throw SingularMatrixError("matrix is singular");
  Eigen::MatrixXd inv = lu.inverse();
  double cond = m.cwiseAbs().rowwise().sum().maxCoeff() *
                inv.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(cond < max_cond)) {
    std::ostringstream msg;
    msg << "matrix inversion rejected: condition number " << cond << " exceeds " << max_cond;
    throw SingularMatrixError(msg.str());
  }
  return inv;
}

Christoffels christoffel(const MetricField& g, const Eigen::VectorXd& x) {
  const int n = g.dim();
  auto jets = christoffel_jets(g, x, 0);
  Christoffels out;
  out.n = n;
  out.a.resize(n * n * n);
  for (size_t i = 0; i < jets.size(); ++i) out.a[i] = jets[i].value();
  return out;
}

RiemannTensor riemann(const MetricField& g, const Eigen::VectorXd& x) {
  const int n = g.dim();
  auto gamma = christoffel_jets(g, x, 1);
  auto G = [&](int k, int i, int j) -> const RJet& { return gamma[(k * n + i) * n + j]; };
  auto Gv = [&](int k, int i, int j) { return G(k, i, j).value(); };
  // linear coefficient = first derivative
  auto dG = [&](int d, int k, int i, int j) { return G(k, i, j)[1 + d]; };

  RiemannTensor R;
  R.n = n;
  R.a.resize(static_cast<size_t>(n) * n * n * n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double v = dG(i, l, j, k) - dG(j, l, i, k);
          for (int m = 0; m < n; ++m) {
            v += Gv(l, i, m) * Gv(m, j, k) - Gv(l, j, m) * Gv(m, i, k);
          }
          R.a[((l * n + k) * n + i) * n + j] = v;
        }
      }
    }
  }
  return R;
}

Eigen::MatrixXd ricci(const MetricField& g, const Eigen::VectorXd& x) {
  const int n = g.dim();
  RiemannTensor R = riemann(g, x);
  Eigen::MatrixXd ric(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += R.at(i, k, i, j);
      ric(k, j) = v;
    }
  }
  return ric;
}

double scalar_curvature(const MetricField& g, const Eigen::VectorXd& x) {
  Eigen::MatrixXd ginv = guarded_inverse(g.value(x));
  Eigen::MatrixXd ric = ricci(g, x);
  return (ginv.array() * ric.array()).sum();
}

}  // namespace specgeo
