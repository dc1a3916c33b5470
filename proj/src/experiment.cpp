#include "specgeo/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "specgeo/metric_field.hpp"
#include "specgeo/rmap.hpp"
#include "specgeo/sampling.hpp"

namespace specgeo {

namespace {

constexpr Complex kI(0.0, 1.0);

Polynomial builtin_polynomial(const std::string& name) {
  if (name == "xyz") {
    return Polynomial(3, {{{1, 1, 1}, 1.0}});
  }
  if (name == "x(xy-zz)") {
    return Polynomial(3, {{{2, 1, 0}, 1.0}, {{1, 0, 2}, -1.0}});
  }
  throw ConfigError("unknown builtin polynomial: " + name);
}

Eigen::VectorXd builtin_base(const std::string& name) {
  Eigen::VectorXd b(3);
  if (name == "xyz") {
    b << 1.0, 1.0, 1.0;
  } else {
    b << 1.0, 2.0, 1.0;
  }
  return b;
}

// Closed-form scalar curvature of g'_c for the two builtin cubics.
double closed_form_scal(const std::string& builtin, double h, double c) {
  if (builtin == "x(xy-zz)") {
    return -3.0 * (h * h - 11.0 * c * h + 6.0 * c * c) / (4.0 * (h - 2.0 * c) * (h - 2.0 * c));
  }
  if (builtin == "xyz") {
    return 3.0 * c * (4.0 * h * h - 3.0 * c * h + 2.0 * c * c) /
           (2.0 * h * (h - 2.0 * c) * (h - 2.0 * c));
  }
  throw ConfigError("no closed-form curvature for " + builtin);
}

Eigen::VectorXd parse_vector(const json& a) {
  if (!a.is_array() || a.empty()) throw ConfigError("expected a non-empty array of numbers");
  Eigen::VectorXd v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = a[i].get<double>();
  return v;
}

Eigen::MatrixXd parse_matrix(const json& a) {
  if (!a.is_array() || a.empty()) throw ConfigError("expected a matrix");
  const int r = static_cast<int>(a.size());
  const int c = static_cast<int>(a[0].size());
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(a[i].size()) != c) throw ConfigError("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = a[i][j].get<double>();
  }
  return m;
}

std::string builtin_of(const json& spec) {
  if (spec.contains("builtin")) return spec["builtin"].get<std::string>();
  return "";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << contents;
}

struct Gate {
  json failures = json::array();
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void check_leq(double value, double limit, const std::string& what) {
    if (!(value <= limit)) {
      failures.push_back(what + ": " + format_number(value) + " > " + format_number(limit));
    }
  }
};

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Polynomial parse_polynomial(const json& spec) {
  std::string b = builtin_of(spec);
  if (!b.empty()) return builtin_polynomial(b);
  if (!spec.contains("terms")) throw ConfigError("polynomial spec needs terms or builtin");
  int n = spec.contains("n") ? spec["n"].get<int>()
                             : static_cast<int>(spec["terms"][0]["powers"].size());
  std::vector<PolyTerm> terms;
  for (const auto& t : spec["terms"]) {
    PolyTerm term;
    term.coeff = t["coeff"].get<double>();
    for (const auto& p : t["powers"]) term.powers.push_back(p.get<int>());
    terms.push_back(std::move(term));
  }
  return Polynomial(n, std::move(terms));
}

HomogeneousFunction parse_homogeneous(const json& spec) {
  Polynomial p = parse_polynomial(spec);
  Eigen::VectorXd base;
  if (spec.contains("base_point")) {
    base = parse_vector(spec["base_point"]);
  } else if (!builtin_of(spec).empty()) {
    base = builtin_base(builtin_of(spec));
  } else {
    throw ConfigError("polynomial spec needs a base_point");
  }
  return HomogeneousFunction::polynomial(std::move(p), std::move(base));
}

Prepotential parse_prepotential(const json& spec) {
  std::string kind = spec.value("kind", "");
  Complex shift(spec.value("shift_real", 0.0), spec.value("shift_imag", 0.0));
  // "coeffs" is the generic field; "h" (cubic) and "a_re"/"a_im" (quadratic)
  // are accepted equivalents
  if (kind == "cubic") {
    const json& h = spec.contains("h") ? spec.at("h") : spec.at("coeffs");
    return Prepotential::cubic(parse_polynomial(h)).with_shift(shift);
  }
  if (kind == "quadratic") {
    const json& co = spec.contains("coeffs") ? spec.at("coeffs") : spec;
    Eigen::MatrixXd re = parse_matrix(co.at("a_re"));
    Eigen::MatrixXd im = co.contains("a_im") ? parse_matrix(co.at("a_im"))
                                             : Eigen::MatrixXd::Zero(re.rows(), re.cols());
    Eigen::MatrixXcd a = re.cast<Complex>() + kI * im.cast<Complex>();
    // stored constant is F's additive shift; the conventional C is twice it
    return Prepotential::quadratic(a, 2.0 * shift);
  }
  if (kind == "conified") {
    return parse_prepotential(spec.at("inner")).conified();
  }
  throw ConfigError("prepotential kind must be cubic, quadratic or conified");
}

ProbeSpec parse_probe(const json& spec) {
  ProbeSpec p;
  p.name = spec.value("name", "probe");
  p.start = parse_vector(spec.at("start"));
  const auto& dir = spec.at("direction");
  if (dir.is_string()) {
    if (dir.get<std::string>() != "scaling_ray")
      throw ConfigError("direction must be a vector or \"scaling_ray\"");
  } else {
    p.direction = parse_vector(dir);
  }
  p.c = spec.at("c").get<double>();
  p.t_max = spec.value("t_max", 10.0);
  if (spec.contains("thresholds")) {
    const auto& t = spec["thresholds"];
    p.thresholds.boundary_factor = t.value("boundary_factor", 1e-8);
    p.thresholds.bound_cap = t.value("bound_cap", 20.0);
  }
  return p;
}

json probe_report_to_json(const ProbeReport& r) {
  json out;
  out["name"] = r.name;
  out["curve"] = r.curve;
  out["c"] = r.c;
  out["verdict"] = r.verdict;
  out["length"] = r.length;
  out["bound"] = r.bound;
  out["final_margin"] = r.final_margin;
  if (r.curve == "geodesic") out["energy_drift"] = r.energy_drift;
  json cps = json::array();
  for (const auto& cp : r.checkpoints) {
    cps.push_back({{"t", cp.t},
                   {"length", cp.length},
                   {"bound", cp.bound},
                   {"margin", cp.margin},
                   {"length_ge_bound", cp.length_ge_bound}});
  }
  out["checkpoints"] = cps;
  return out;
}

namespace {

ExperimentResult run_curvature_table(const ExperimentConfig& cfg) {
  const json& config = cfg.config;
  double tol = cfg.tol > 0 ? cfg.tol : 1e-6;
  if (!config.contains("c_list") || !config["c_list"].is_array() || config["c_list"].empty())
    throw ConfigError("curvature-table needs a non-empty c_list");
  if (!config.contains("polynomials") || config["polynomials"].empty())
    throw ConfigError("curvature-table needs polynomials");
  int samples = config.value("samples", 25);

  Gate gate;
  std::string csv;
  int n_cols = -1;
  std::string header;
  uint64_t case_index = 0;
  double max_rel_err = 0.0;

  for (const auto& pspec : config["polynomials"]) {
    HomogeneousFunction h = parse_homogeneous(pspec);
    std::string name = pspec.value("name", builtin_of(pspec));
    std::string builtin = builtin_of(pspec);
    bool check = pspec.value("check_closed_form", !builtin.empty());
    if (check && builtin.empty())
      throw ConfigError("closed-form check is only available for builtin cubics");
    if (n_cols < 0) {
      n_cols = h.dim();
      header = "name,c";
      for (int i = 0; i < n_cols; ++i) header += ",x" + std::to_string(i + 1);
      header += ",h,scal_numeric,scal_closed_form,abs_err\n";
      csv = header;
    } else if (n_cols != h.dim()) {
      throw ConfigError("all polynomials in one run must share the dimension");
    }

    for (const auto& cj : config["c_list"]) {
      double c = cj.get<double>();
      MetricField g = MetricField::gprime_c(h, c);
      Rng rng(cfg.seed + 1000003 * case_index++);
      for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x = sample_point_Uc(h, c, rng);
        double scal = scalar_curvature(g, x);
        double hv = h.value(x);
        csv += name + "," + format_number(c);
        for (int i = 0; i < n_cols; ++i) csv += "," + format_number(x[i]);
        csv += "," + format_number(hv) + "," + format_number(scal);
        if (check) {
          double cf = closed_form_scal(builtin, hv, c);
          double err = std::abs(scal - cf);
          double rel = err / std::max(1.0, std::abs(cf));
          max_rel_err = std::max(max_rel_err, rel);
          csv += "," + format_number(cf) + "," + format_number(err);
          gate.check_leq(rel, tol, name + " closed-form mismatch at c=" + format_number(c));
        } else {
          csv += ",,";
        }
        csv += "\n";
      }
    }
  }

  ExperimentResult res;
  std::string csv_path = cfg.out_dir + "/curvature_table.csv";
  write_file(csv_path, csv);
  res.files.push_back(csv_path);
  res.summary["command"] = "curvature-table";
  res.summary["seed"] = cfg.seed;
  res.summary["tolerance"] = tol;
  res.summary["max_rel_err"] = max_rel_err;
  res.summary["failures"] = gate.failures;
  res.exit_code = gate.failures.empty() ? 0 : 1;
  return res;
}

double element_distance(const GroupElement& a, const GroupElement& b) {
  double d = (a.X() - b.X()).cwiseAbs().maxCoeff();
  d = std::max(d, std::abs(a.s() - b.s()));
  d = std::max(d, (a.v() - b.v()).cwiseAbs().maxCoeff());
  return d;
}

ExperimentResult run_group_fuzz(const ExperimentConfig& cfg) {
  const json& config = cfg.config;
  double tol = cfg.tol > 0 ? cfg.tol : 1e-10;
  int n = config.value("n", 3);
  int count = config.value("count", 200);
  double scale = config.value("scale", 0.5);
  if (count < 1) throw ConfigError("group-fuzz needs count >= 1");

  Rng rng(cfg.seed);
  const Subgroup flavors[3] = {Subgroup::RealG, Subgroup::SpecialKahler, Subgroup::ComplexG};
  const Eigen::MatrixXcd ohat = omega_hat(n).cast<Complex>();
  GroupElement e = GroupElement::identity(n);

  double assoc = 0, inverse = 0, hom = 0, symp = 0, plane = 0, w0 = 0;
  for (int i = 0; i < count; ++i) {
    Subgroup fl = flavors[i % 3];
    GroupElement a = random_element(n, rng, fl, scale);
    GroupElement b = random_element(n, rng, fl, scale);
    GroupElement c = random_element(n, rng, fl, scale);
    assoc = std::max(assoc, element_distance(group_mul(group_mul(a, b), c),
                                             group_mul(a, group_mul(b, c))));
    inverse = std::max(inverse, element_distance(group_mul(a, group_inv(a)), e));
    inverse = std::max(inverse, element_distance(group_mul(group_inv(a), a), e));
    Eigen::MatrixXcd ra = rho(a);
    hom = std::max(hom, (rho(group_mul(a, b)) - ra * rho(b)).cwiseAbs().maxCoeff());
    symp = std::max(symp, (ra.transpose() * ohat * ra - ohat).cwiseAbs().maxCoeff());
    // z^0 row and the d/dw_0 column must be untouched
    Eigen::VectorXcd row0 = ra.row(0);
    row0[0] -= 1.0;
    plane = std::max(plane, row0.cwiseAbs().maxCoeff());
    Eigen::VectorXcd col1 = ra.col(1);
    col1[1] -= 1.0;
    w0 = std::max(w0, col1.cwiseAbs().maxCoeff());
  }

  Gate gate;
  gate.check_leq(assoc, tol, "associativity");
  gate.check_leq(inverse, tol, "inverse law");
  gate.check_leq(hom, tol, "rho homomorphism");
  gate.check_leq(symp, tol, "rho symplecticity");
  gate.check_leq(plane, tol, "hyperplane z0=1 preservation");
  gate.check_leq(w0, tol, "dw0 distribution preservation");

  ExperimentResult res;
  res.summary["command"] = "group-fuzz";
  res.summary["seed"] = cfg.seed;
  res.summary["n"] = n;
  res.summary["count"] = count;
  res.summary["scale"] = scale;
  res.summary["tolerance"] = tol;
  res.summary["max_residuals"] = {{"associativity", assoc}, {"inverse", inverse},
                                  {"rho_homomorphism", hom}, {"rho_symplectic", symp},
                                  {"hyperplane", plane},     {"w0_distribution", w0}};
  res.summary["failures"] = gate.failures;
  res.exit_code = gate.failures.empty() ? 0 : 1;
  std::string path = cfg.out_dir + "/group_fuzz.json";
  write_file(path, res.summary.dump(2) + "\n");
  res.files.push_back(path);
  return res;
}

ExperimentResult run_conify_check(const ExperimentConfig& cfg) {
  const json& config = cfg.config;
  double tol = cfg.tol > 0 ? cfg.tol : 1e-12;
  if (!config.contains("prepotentials") || config["prepotentials"].empty())
    throw ConfigError("conify-check needs prepotentials");
  int samples = config.value("samples", 100);

  Gate gate;
  json cases = json::array();
  uint64_t case_index = 0;
  for (const auto& pspec : config["prepotentials"]) {
    Prepotential F = parse_prepotential(pspec);
    const int n = F.dim();
    Prepotential Fhat = F.conified();
    Rng rng(cfg.seed + 7919 * case_index++);

    Eigen::VectorXd im_center = pspec.contains("sample") && pspec["sample"].contains("im_center")
                                    ? parse_vector(pspec["sample"]["im_center"])
                                    : Eigen::VectorXd::Ones(n);
    Eigen::VectorXd re_center = pspec.contains("sample") && pspec["sample"].contains("re_center")
                                    ? parse_vector(pspec["sample"]["re_center"])
                                    : Eigen::VectorXd::Zero(n);
    double radius = pspec.contains("sample") ? pspec["sample"].value("radius", 0.4) : 0.4;

    double homog = 0, factor = 0;
    int kahlerian_true = 0, khat_nonzero_true = 0, omega_true = 0;
    for (int s = 0; s < samples; ++s) {
      Eigen::VectorXcd z(n);
      for (int i = 0; i < n; ++i)
        z[i] = Complex(re_center[i] + radius * rng.uniform(-1.0, 1.0),
                       im_center[i] + radius * rng.uniform(-1.0, 1.0));
      Complex z0 = std::polar(0.5 + rng.uniform(), rng.uniform(0.0, 6.283185307179586));
      Eigen::VectorXcd Z(n + 1);
      Z[0] = z0;
      Z.tail(n) = z0 * z;

      Complex lambda = std::polar(0.5 + rng.uniform(), rng.uniform(0.0, 6.283185307179586));
      Complex fz = Fhat.value(Z);
      Complex flz = Fhat.value(lambda * Z);
      double scale_h = std::max(1.0, std::abs(fz));
      homog = std::max(homog, std::abs(flz - lambda * lambda * fz) / scale_h);

      ConicalPotential cp = conical_potential(Fhat, Z);
      factor = std::max(factor, cp.factorization_residual /
                                    std::max(1.0, std::abs(cp.khat)));

      Nondegeneracy nd = nondegeneracy(F, z);
      kahlerian_true += nd.kahlerian ? 1 : 0;
      khat_nonzero_true += nd.khat_nonzero ? 1 : 0;
      omega_true += nd.omega_bar_nondeg ? 1 : 0;
    }
    gate.check_leq(homog, tol, "degree-2 homogeneity");
    gate.check_leq(factor, tol, "Khat factorization");
    cases.push_back({{"name", pspec.value("name", "prepotential")},
                     {"samples", samples},
                     {"max_homogeneity_residual", homog},
                     {"max_factorization_residual", factor},
                     {"kahlerian_true", kahlerian_true},
                     {"khat_nonzero_true", khat_nonzero_true},
                     {"omega_bar_nondeg_true", omega_true}});
  }

  ExperimentResult res;
  res.summary["command"] = "conify-check";
  res.summary["seed"] = cfg.seed;
  res.summary["tolerance"] = tol;
  res.summary["cases"] = cases;
  res.summary["failures"] = gate.failures;
  res.exit_code = gate.failures.empty() ? 0 : 1;
  std::string path = cfg.out_dir + "/conify_check.json";
  write_file(path, res.summary.dump(2) + "\n");
  res.files.push_back(path);
  return res;
}

ExperimentResult run_rmap_check(const ExperimentConfig& cfg) {
  const json& config = cfg.config;
  double tol = cfg.tol > 0 ? cfg.tol : 1e-10;
  if (!config.contains("cases") || config["cases"].empty())
    throw ConfigError("rmap-check needs cases");

  Gate gate;
  json cases = json::array();
  uint64_t case_index = 0;
  for (const auto& cspec : config["cases"]) {
    HomogeneousFunction h = parse_homogeneous(cspec.at("h"));
    bool cubic = h.degree() == 3.0;
    if (!cspec.contains("c_list") || cspec["c_list"].empty())
      throw ConfigError("rmap-check case needs a non-empty c_list");
    int samples = cspec.value("samples", 50);
    double path_ab = 0, rigid = 0, imh = 0, eldef = 0;
    for (const auto& cj : cspec["c_list"]) {
      double c = cj.get<double>();
      Rng rng(cfg.seed + 104729 * case_index++);
      for (int s = 0; s < samples; ++s) {
        Eigen::VectorXcd z = sample_complex_point(h, c, rng);
        if (cubic) {
          DeformedRmapMetric m = deformed_rmap_metric_detail(h, c, z);
          path_ab = std::max(path_ab, m.residual);
          rigid = std::max(rigid, rigid_rmap_cross_residual(h, z));
          imh = std::max(imh, imh_identity_residual(h, z));
        }
        eldef = std::max(eldef, elementary_deformation_residual(h, c, z));
      }
    }
    if (cubic) {
      gate.check_leq(path_ab, tol, "deformed metric path A vs B");
      gate.check_leq(rigid, tol, "rigid metric cross-check");
      gate.check_leq(imh, 1e-12 * 100.0, "Im h identity");
    }
    gate.check_leq(eldef, tol, "elementary deformation identity");
    cases.push_back({{"name", cspec.value("name", "case")},
                     {"degree", h.degree()},
                     {"max_path_ab_residual", path_ab},
                     {"max_rigid_cross_residual", rigid},
                     {"max_imh_residual", imh},
                     {"max_elementary_deformation_residual", eldef}});
  }

  ExperimentResult res;
  res.summary["command"] = "rmap-check";
  res.summary["seed"] = cfg.seed;
  res.summary["tolerance"] = tol;
  res.summary["cases"] = cases;
  res.summary["failures"] = gate.failures;
  res.exit_code = gate.failures.empty() ? 0 : 1;
  std::string path = cfg.out_dir + "/rmap_check.json";
  write_file(path, res.summary.dump(2) + "\n");
  res.files.push_back(path);
  return res;
}

ExperimentResult run_completeness_probe(const ExperimentConfig& cfg) {
  const json& config = cfg.config;
  double drift_tol = cfg.tol > 0 ? cfg.tol : 1e-6;
  HomogeneousFunction h = parse_homogeneous(config.at("h"));
  if (!config.contains("probes") || config["probes"].empty())
    throw ConfigError("completeness-probe needs probes");

  Gate gate;
  json reports = json::array();
  for (const auto& pspec : config["probes"]) {
    ProbeSpec spec = parse_probe(pspec);
    ProbeReport report = completeness_probe(h, spec.c, spec);
    gate.check(report.verdict != "inconclusive", spec.name + ": inconclusive probe");
    if (report.curve == "geodesic") {
      gate.check_leq(report.energy_drift, drift_tol, spec.name + ": energy drift");
    }
    reports.push_back(probe_report_to_json(report));
  }

  ExperimentResult res;
  res.summary["command"] = "completeness-probe";
  res.summary["seed"] = cfg.seed;
  res.summary["drift_tolerance"] = drift_tol;
  res.summary["reports"] = reports;
  res.summary["failures"] = gate.failures;
  res.exit_code = gate.failures.empty() ? 0 : 1;
  std::string path = cfg.out_dir + "/probe_report.json";
  write_file(path, res.summary.dump(2) + "\n");
  res.files.push_back(path);
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.command == "curvature-table") return run_curvature_table(cfg);
  if (cfg.command == "group-fuzz") return run_group_fuzz(cfg);
  if (cfg.command == "conify-check") return run_conify_check(cfg);
  if (cfg.command == "rmap-check") return run_rmap_check(cfg);
  if (cfg.command == "completeness-probe") return run_completeness_probe(cfg);
  throw ConfigError("unknown command: " + cfg.command);
}

}  // namespace specgeo
