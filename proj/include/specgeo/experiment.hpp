#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "specgeo/geodesics.hpp"
#include "specgeo/homogeneous.hpp"
#include "specgeo/special_kahler.hpp"

namespace specgeo {

using json = nlohmann::ordered_json;

// Parsers for the on-disk JSON formats.
//
// Polynomial: {"builtin": "xyz" | "x(xy-zz)"} or
//   {"n": 3, "terms": [{"powers": [1,1,1], "coeff": 1.0}, ...],
//    "base_point": [1, 1, 1]}
Polynomial parse_polynomial(const json& spec);
HomogeneousFunction parse_homogeneous(const json& spec);

// Prepotential:
//   {"kind": "cubic", "h": <polynomial>, "shift_real": 0.0, "shift_imag": 0.0}
//   {"kind": "quadratic", "a_re": [[...]], "a_im": [[...]],
//    "shift_real": ..., "shift_imag": ...}   (the additive constant in F)
//   {"kind": "conified", "inner": <prepotential>}
Prepotential parse_prepotential(const json& spec);

// Probe: {"name": ..., "start": [...], "direction": "scaling_ray" | [...],
//         "c": ..., "t_max": ..., "thresholds": {"boundary_factor": ...,
//         "bound_cap": ...}}
ProbeSpec parse_probe(const json& spec);

json probe_report_to_json(const ProbeReport& report);

// 12-significant-digit shortest decimal used in all CSV output.
std::string format_number(double v);

struct ExperimentConfig {
  std::string command;
  json config;
  uint64_t seed = 0;
  std::string out_dir;
  // Command-primary tolerance; <= 0 keeps the per-command default.
  double tol = 0.0;
};

struct ExperimentResult {
  int exit_code = 0;  // 0 pass, 1 tolerance failure
  std::vector<std::string> files;
  json summary;
};

// Runs one of: curvature-table, group-fuzz, conify-check, rmap-check,
// completeness-probe. Writes reports under out_dir; throws ConfigError for
// malformed configs (CLI exit code 2).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace specgeo
