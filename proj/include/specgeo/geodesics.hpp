#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specgeo/metric_field.hpp"

namespace specgeo {

enum class Termination { time_exhausted, boundary_proximity, step_underflow };

struct PathSample {
  double t;
  Eigen::VectorXd x;
  Eigen::VectorXd v;
};

struct Path {
  std::vector<PathSample> samples;
  double length = 0.0;
  Termination termination = Termination::time_exhausted;
};

struct IntegrateOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  double min_step = 1e-12;
  int max_steps = 2'000'000;
  // Accepted-step predicate; returning true ends the integration with
  // Termination::boundary_proximity.
  std::function<bool(const Eigen::VectorXd&)> stop;
};

// Solves x'' + Gamma(x)(x', x') = 0 with an embedded Dormand-Prince 4(5)
// pair and PI step control.
Path integrate_geodesic(const MetricField& g, const Eigen::VectorXd& x0,
                        const Eigen::VectorXd& v0, double t_max,
                        const IntegrateOptions& opts = {});

struct Curve {
  std::function<Eigen::VectorXd(double)> point;
  std::function<Eigen::VectorXd(double)> velocity;
};

struct LengthOptions {
  double rel_tol = 1e-8;
  // open right end: approach t1 through dyadic refinement
  bool improper_end = false;
  // monotonically growing totals past the cap are reported as diverging;
  // dyadic refinement resolves ~40 of length for log-type divergences, so
  // the cap sits well below that
  double divergence_cap = 25.0;
};

struct LengthResult {
  double value = 0.0;
  bool diverged = false;
};

// Riemannian length of the curve over [t0, t1) by adaptive quadrature.
// Monotone growth past the cap yields the "diverging" verdict instead of a
// value.
LengthResult curve_length(const MetricField& g, const Curve& curve, double t0, double t1,
                          const LengthOptions& opts = {});

struct ProbeThresholds {
  double boundary_factor = 1e-8;  // stop at margin < factor * initial margin
  double bound_cap = 20.0;        // bound level certifying divergent length
};

struct ProbeSpec {
  std::string name;
  Eigen::VectorXd start;
  // Empty direction selects the scaling ray through the start point;
  // otherwise a geodesic is launched with this initial velocity.
  std::optional<Eigen::VectorXd> direction;
  double c = 0.0;
  double t_max = 10.0;
  ProbeThresholds thresholds;
};

struct ProbeCheckpoint {
  double t;
  double length;       // accumulated curve length up to t
  double bound;        // (1/sqrt k) |log(h+c) - log(h+c)_initial|
  double margin;       // h + c (c <= 0) or h - c(k-1) (c > 0)
  bool length_ge_bound;
};

struct ProbeReport {
  std::string name;
  std::string curve;    // "scaling_ray" or "geodesic"
  double c = 0.0;
  std::string verdict;  // complete_trend | incomplete_witness | no_boundary_reached
  double length = 0.0;
  double bound = 0.0;
  double final_margin = 0.0;
  double energy_drift = 0.0;  // geodesic probes only
  std::vector<ProbeCheckpoint> checkpoints;
};

// Length-versus-bound witnesses for the completeness trichotomy of g'_c.
ProbeReport completeness_probe(const HomogeneousFunction& h, double c,
                               const ProbeSpec& spec);

}  // namespace specgeo
