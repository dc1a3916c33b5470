#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "specgeo/homogeneous.hpp"
#include "specgeo/jet.hpp"

namespace specgeo {

// Field of symmetric bilinear forms whose entries are jet-evaluable up to
// order 2 (enough for one curvature pass; entries of g'_c come from order-4
// jets of log(h+c)).
class MetricField {
public:
  // Row-major dim x dim matrix of jets of the metric components at x.
  using EvalFn = std::function<std::vector<RJet>(const Eigen::VectorXd&, int order)>;

  MetricField(int dim, std::string descriptor, EvalFn eval)
      : dim_(dim), descriptor_(std::move(descriptor)), eval_(std::move(eval)) {}

  int dim() const { return dim_; }
  const std::string& descriptor() const { return descriptor_; }

  std::vector<RJet> entries(const Eigen::VectorXd& x, int order) const;
  Eigen::MatrixXd value(const Eigen::VectorXd& x) const;

  static MetricField euclidean(int n);
  // g'_c = -Hess log(h+c) on {h > 0, h + c > 0}.
  static MetricField gprime_c(HomogeneousFunction h, double c);
  // Deformed tangent-bundle metric 1/4 blockdiag(g'_c, g'_c) in coordinates
  // (y, x); depends on x = Im z only.
  static MetricField deformed_rmap(HomogeneousFunction h, double c);
  // Constant conformal rescaling.
  static MetricField scaled(MetricField g, double factor);

private:
  int dim_;
  std::string descriptor_;
  EvalFn eval_;
};

// Levi-Civita connection coefficients, Gamma^k_{ij} symmetric in (i, j).
struct Christoffels {
  int n = 0;
  std::vector<double> a;  // k*n*n + i*n + j
  double at(int k, int i, int j) const { return a[(k * n + i) * n + j]; }
};

// R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
//           + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}.
struct RiemannTensor {
  int n = 0;
  std::vector<double> a;  // ((l*n + k)*n + i)*n + j
  double at(int l, int k, int i, int j) const { return a[((l * n + k) * n + i) * n + j]; }
};

Christoffels christoffel(const MetricField& g, const Eigen::VectorXd& x);
RiemannTensor riemann(const MetricField& g, const Eigen::VectorXd& x);
Eigen::MatrixXd ricci(const MetricField& g, const Eigen::VectorXd& x);
// scal = g^{kj} R_{kj} with R_{kj} = R^i_{kij}; the half-plane metric
// (dx^2+dy^2)/y^2 comes out with scal = -2.
double scalar_curvature(const MetricField& g, const Eigen::VectorXd& x);

// Inverse of the value matrix with a condition-number guard (default 1e12).
Eigen::MatrixXd guarded_inverse(const Eigen::MatrixXd& m, double max_cond = 1e12);

}  // namespace specgeo
