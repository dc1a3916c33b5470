#include "specgeo/geodesics.hpp"

#include <cmath>

namespace specgeo {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

using Vec = Eigen::VectorXd;

Vec geodesic_rhs(const MetricField& g, const Vec& state) {
  const int n = g.dim();
  Vec x = state.head(n);
  Vec v = state.tail(n);
  Christoffels G = christoffel(g, x);
  Vec out(2 * n);
  out.head(n) = v;
  for (int k = 0; k < n; ++k) {
    double a = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a += G.at(k, i, j) * v[i] * v[j];
    }
    out[n + k] = -a;
  }
  return out;
}

double speed(const MetricField& g, const Vec& x, const Vec& v) {
  return std::sqrt(std::max(0.0, v.dot(g.value(x) * v)));
}

// Adaptive Simpson on a closed interval with a recursion cap.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  double err = left + right - whole;
  if (depth <= 0 || std::abs(err) < 15.0 * tol) return left + right + err / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

// rel_tol is relative to the integral's own coarse estimate.
double quad(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double coarse = std::abs((b - a) / 6.0 * (fa + 4 * fm + fb));
  double tol = rel_tol * std::max(coarse, 1e-12);
  return adaptive_simpson(f, a, b, fa, fm, fb, tol, 36);
}

}  // namespace

Path integrate_geodesic(const MetricField& g, const Eigen::VectorXd& x0,
                        const Eigen::VectorXd& v0, double t_max,
                        const IntegrateOptions& opts) {
  const int n = g.dim();
  if (x0.size() != n || v0.size() != n) throw DomainError("state dimension mismatch");
  if (v0.norm() == 0.0) throw DomainError("geodesic needs a non-zero initial velocity");
  if (opts.stop && opts.stop(x0)) throw DomainError("start point already past the boundary");

  Path path;
  Vec s(2 * n);
  s << x0, v0;
  double t = 0.0;
  double h = opts.initial_step;
  double err_prev = 1.0;
  path.samples.push_back({t, x0, v0});
  double sp_prev = speed(g, x0, v0);

  Vec k1 = geodesic_rhs(g, s);
  auto rk_step = [&](const Vec& y, const Vec& f1, double hh, Vec& ynew, Vec& f7) {
    Vec k2 = geodesic_rhs(g, y + hh * (kA21 * f1));
    Vec k3 = geodesic_rhs(g, y + hh * (kA31 * f1 + kA32 * k2));
    Vec k4 = geodesic_rhs(g, y + hh * (kA41 * f1 + kA42 * k2 + kA43 * k3));
    Vec k5 = geodesic_rhs(g, y + hh * (kA51 * f1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    Vec k6 =
        geodesic_rhs(g, y + hh * (kA61 * f1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
    ynew = y + hh * (kB1 * f1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    f7 = geodesic_rhs(g, ynew);
    Vec errv = hh * (kE1 * f1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * f7);
    double scale = opts.abs_tol + opts.rel_tol * std::max(y.cwiseAbs().maxCoeff(),
                                                          ynew.cwiseAbs().maxCoeff());
    return errv.cwiseAbs().maxCoeff() / scale;
  };
  auto accept = [&](const Vec& snew, double hh) {
    t += hh;
    s = snew;
    Vec x = s.head(n), v = s.tail(n);
    double sp = speed(g, x, v);
    path.length += 0.5 * (sp_prev + sp) * hh;
    sp_prev = sp;
    path.samples.push_back({t, x, v});
  };

  int steps = 0;
  while (t < t_max && steps++ < opts.max_steps) {
    h = std::min(h, t_max - t);
    Vec snew, k7;
    double err = rk_step(s, k1, h, snew, k7);
    if (err <= 1.0) {
      if (opts.stop && opts.stop(snew.head(n))) {
        // localize the boundary crossing inside this step
        double lo = 0.0, hi = h;
        Vec s_hit = snew, k7_hit = k7;
        for (int it = 0; it < 60 && (hi - lo) > 1e-3 * h; ++it) {
          double mid = 0.5 * (lo + hi);
          Vec smid, kmid;
          rk_step(s, k1, mid, smid, kmid);
          if (opts.stop(smid.head(n))) {
            hi = mid;
            s_hit = smid;
          } else {
            lo = mid;
          }
        }
        rk_step(s, k1, hi, s_hit, k7_hit);
        accept(s_hit, hi);
        path.termination = Termination::boundary_proximity;
        return path;
      }
      accept(snew, h);
      k1 = k7;  // FSAL
      // PI controller
      double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.7 / 5.0) *
                   std::pow(err_prev, 0.4 / 5.0);
      h *= std::clamp(fac, 0.2, 5.0);
      err_prev = std::max(err, 1e-10);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
    }
    if (h < opts.min_step) {
      path.termination = Termination::step_underflow;
      return path;
    }
  }
  path.termination = Termination::time_exhausted;
  return path;
}

LengthResult curve_length(const MetricField& g, const Curve& curve, double t0, double t1,
                          const LengthOptions& opts) {
  auto integrand = [&](double t) {
    Eigen::VectorXd x = curve.point(t);
    Eigen::VectorXd v = curve.velocity(t);
    return speed(g, x, v);
  };
  LengthResult out;
  if (!opts.improper_end) {
    out.value = quad(integrand, t0, t1, opts.rel_tol);
    return out;
  }
  // Dyadic approach to the open end at t1.
  double total = 0.0;
  double a = t0;
  double span = t1 - t0;
  double prev_piece = 0.0;
  for (int j = 1; j <= 60; ++j) {
    double b = t1 - span * std::pow(2.0, -j);
    if (b <= a) break;
    double piece = quad(integrand, a, b, opts.rel_tol);
    total += piece;
    if (total > opts.divergence_cap && piece >= prev_piece * 0.999 && j > 8) {
      out.diverged = true;
      out.value = total;
      return out;
    }
    if (j > 4 && std::abs(piece) < opts.rel_tol * std::max(1.0, std::abs(total))) {
      out.value = total;
      return out;
    }
    prev_piece = piece;
    a = b;
  }
  out.value = total;
  return out;
}

ProbeReport completeness_probe(const HomogeneousFunction& h, double c,
                               const ProbeSpec& spec) {
  ProbeReport report;
  report.name = spec.name;
  report.c = c;
  const double k = h.degree();
  const double m0 = h.uc_margin(spec.start, c);
  if (!(m0 > 0.0)) throw DomainError("probe start point outside U_c");

  MetricField g = MetricField::gprime_c(h, c);

  if (!spec.direction) {
    // Scaling ray x(t) = t * start, t decreasing from 1 toward the boundary.
    report.curve = "scaling_ray";
    const double h0 = h.value(spec.start);
    const double hc0 = h0 + c;
    const double offset = c <= 0.0 ? c : -c * (k - 1.0);
    auto t_of_margin = [&](double m) { return std::pow((m - offset) / h0, 1.0 / k); };
    Curve ray{[&](double t) { return (t * spec.start).eval(); },
              [&](double) { return spec.start; }};

    if (c > 0.0) {
      // The metric degenerates along the ray at the boundary; the length down
      // to it is finite, which is the incompleteness witness.
      double t_star = t_of_margin(0.0);
      LengthResult full = curve_length(g, ray, t_star, 1.0, {.rel_tol = 1e-9});
      report.length = full.value;
      report.final_margin = 0.0;
      report.bound = std::abs(std::log(std::pow(t_star, k) * h0 + c) - std::log(hc0)) /
                     std::sqrt(k);
      report.verdict = "incomplete_witness";
      return report;
    }

    // For c < 0 the margin h + c cancels in double precision once it drops
    // to ~eps * |c|; checkpoints stop at a safe floor above that.
    const double m_floor = c < 0.0 ? 64.0 * 2.22e-16 * std::abs(c) : 0.0;
    const double m_stop = std::max(spec.thresholds.boundary_factor * m0, m_floor);
    double length = 0.0;
    bool all_above = true;
    // boundary parameter along the ray (t* = 0 for c = 0)
    const double t_star = c < 0.0 ? t_of_margin(0.0) : 0.0;
    // distance above t* solved from margin(t* + delta) = m without
    // cancellation: (1 + delta/t*)^k = 1 + m/|c| via expm1/log1p
    auto delta_of_margin = [&](double m) {
      if (c == 0.0) return t_of_margin(m);
      return t_star * std::expm1(std::log1p(m / (-c)) / k);
    };
    // log-reparametrized ray t = t* + e^u keeps the integrand smooth all the
    // way into the boundary layer
    Curve log_ray{[&](double u) { return ((t_star + std::exp(u)) * spec.start).eval(); },
                  [&](double u) { return (std::exp(u) * spec.start).eval(); }};
    double delta_hi = 1.0 - t_star;
    for (double m_target = 0.1 * m0; m_target >= 0.999e-1 * m_stop; m_target *= 0.1) {
      double delta_lo = delta_of_margin(m_target);
      // the margin carries relative FP noise ~ eps |c| / m; do not ask the
      // quadrature for more than the integrand can resolve
      double noise = c < 0.0 ? 2.22e-16 * std::abs(c) / m_target : 0.0;
      double rel = std::max(1e-9, 50.0 * noise);
      LengthResult piece = curve_length(g, log_ray, std::log(delta_lo),
                                        std::log(delta_hi), {.rel_tol = rel});
      length += piece.value;
      double bound = std::abs(std::log(m_target) - std::log(m0)) / std::sqrt(k);
      bool ok = length >= bound * (1.0 - 1e-6);
      all_above = all_above && ok;
      report.checkpoints.push_back({t_star + delta_lo, length, bound, m_target, ok});
      delta_hi = delta_lo;
      if (m_target <= m_stop) break;
    }
    report.length = length;
    report.final_margin = report.checkpoints.empty() ? m0 : report.checkpoints.back().margin;
    report.bound = report.checkpoints.empty() ? 0.0 : report.checkpoints.back().bound;
    if (c < 0.0) {
      report.verdict = (all_above && report.bound > spec.thresholds.bound_cap)
                           ? "complete_trend"
                           : "inconclusive";
    } else {
      report.verdict = report.length >= spec.thresholds.bound_cap ? "complete_trend"
                                                                  : "no_boundary_reached";
    }
    return report;
  }

  // Geodesic probe.
  report.curve = "geodesic";
  IntegrateOptions opts;
  const double m_stop = spec.thresholds.boundary_factor * m0;
  opts.stop = [&](const Eigen::VectorXd& x) { return h.uc_margin(x, c) < m_stop; };
  Path path = integrate_geodesic(g, spec.start, *spec.direction, spec.t_max, opts);
  report.length = path.length;
  report.final_margin = h.uc_margin(path.samples.back().x, c);
  double e0 = spec.direction->dot(g.value(spec.start) * (*spec.direction));
  const auto& last = path.samples.back();
  double e1 = last.v.dot(g.value(last.x) * last.v);
  report.energy_drift = std::abs(e1 - e0) / std::abs(e0);
  double hc_final = h.value(last.x) + c;
  double bound = std::abs(std::log(hc_final) - std::log(h.value(spec.start) + c)) /
                 std::sqrt(k);
  report.bound = bound;
  if (path.termination == Termination::boundary_proximity) {
    if (c < 0.0) {
      report.verdict =
          report.length >= bound * (1.0 - 1e-6) ? "complete_trend" : "inconclusive";
    } else {
      report.verdict = c > 0.0 ? "incomplete_witness" : "boundary_reached";
    }
  } else {
    report.verdict = "no_boundary_reached";
  }
  return report;
}

}  // namespace specgeo
