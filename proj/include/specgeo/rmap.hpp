#pragma once

#include <Eigen/Dense>

#include "specgeo/homogeneous.hpp"
#include "specgeo/special_kahler.hpp"

namespace specgeo {

// Real coordinate order is (y^1..y^n, x^1..x^n) for z = y + i x with the
// complex structure acting by J d/dy^i = d/dx^i, J d/dx^i = -d/dy^i.

// blockdiag(-Hess h(x), -Hess h(x)) induced by F = -h.
Eigen::MatrixXd rigid_rmap_metric(const HomogeneousFunction& h, const Eigen::VectorXcd& z);

// Agreement of the block matrix with Im F_ij of F = -h in real form.
double rigid_rmap_cross_residual(const HomogeneousFunction& h, const Eigen::VectorXcd& z);

struct DeformedRmapMetric {
  Eigen::MatrixXd path_a;  // 1/4 blockdiag(g'_c(x), g'_c(x))
  Eigen::MatrixXd path_b;  // real form of the projective metric of F = -h - 2ic
  double residual = 0.0;
};

// Both construction routes of the deformed metric; path B needs a cubic
// polynomial h.
DeformedRmapMetric deformed_rmap_metric_detail(const HomogeneousFunction& h, double c,
                                               const Eigen::VectorXcd& z);
// Path A alone (valid for any homogeneous degree k > 1).
Eigen::MatrixXd deformed_rmap_metric(const HomogeneousFunction& h, double c,
                                     const Eigen::VectorXcd& z);

// | Im h(z) - sum Im(conj(z^i) dh/dz^i) + 4 h(Im z) |, an identity for
// homogeneous cubics.
double imh_identity_residual(const HomogeneousFunction& h, const Eigen::VectorXcd& z);

// Defect of the elementary-deformation form of the deformed metric,
//   g_c = g/(4(h+c)) + ((dK_c)^2 + (dK_c o J)^2) / (4 K_c^2),
// with K_c = -4(h(Im z) + c) and g the rigid block metric; the g-term
// coefficient is -1/K_c (see the note in the implementation).
double elementary_deformation_residual(const HomogeneousFunction& h, double c,
                                       const Eigen::VectorXcd& z);

}  // namespace specgeo
