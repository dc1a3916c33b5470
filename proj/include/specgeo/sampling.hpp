#pragma once

#include <Eigen/Dense>

#include "specgeo/homogeneous.hpp"
#include "specgeo/rng.hpp"

namespace specgeo {

// Deterministic rejection sampling around a scaled base point. The base is
// first pushed up the cone until U_c has comfortable margin, then points are
// drawn from a ball and accepted when they clear a fraction of that margin.
Eigen::VectorXd sample_point_Uc(const HomogeneousFunction& h, double c, Rng& rng);

inline Eigen::VectorXd sample_point_U(const HomogeneousFunction& h, Rng& rng) {
  return sample_point_Uc(h, 0.0, rng);
}

// z = y + i x with x sampled in U_c and y uniform in [-1, 1]^n.
Eigen::VectorXcd sample_complex_point(const HomogeneousFunction& h, double c, Rng& rng);

// Rescales x along the cone so that h = target (stays inside U).
Eigen::VectorXd rescale_to_level(const HomogeneousFunction& h, const Eigen::VectorXd& x,
                                 double target);

}  // namespace specgeo
