#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mergegram/errors.hpp"
#include "mergegram/perturb.hpp"
#include "mergegram/scales.hpp"

namespace mg {

/// Batch stability run: each trial draws a random cloud, perturbs it, and
/// compares the bottleneck distance of both invariants against the Hausdorff
/// distance between the clouds.
struct ExperimentConfig {
  std::int64_t trials = 0;
  std::int32_t n_min = 0;
  std::int32_t n_max = 0;
  std::int32_t dimension = 2;
  std::string kind;  // jitter | isometry_jitter | rotate | affine | projective
  double epsilon = 0.0;  // jitter displacement bound
  double delta = 0.0;    // affine / projective noise level
  NoiseKind noise = NoiseKind::kUniform;
  std::uint64_t seed = 0;
  ScaleConvention convention = ScaleConvention::kHalf;
  std::string out;  // report path
};

/// JSON config; ParseError messages name the offending field.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_file(const std::string& path);

struct TrialRow {
  std::int32_t n = 0;
  double hausdorff_distance = 0.0;
  double bottleneck_mergegram = 0.0;
  double bottleneck_pd0 = 0.0;
  bool inequality_ok = false;
};

struct ExperimentReport {
  std::vector<TrialRow> rows;
  std::int64_t violations = 0;
  double max_ratio = 0.0;  // max BD / HD over trials with HD > 0
};

/// Deterministic for a fixed config: trial t draws from the forked stream
/// seed.fork(t) regardless of scheduling.
ExperimentReport run_experiment(const ExperimentConfig& config);

void write_report_tsv(std::ostream& out, const ExperimentReport& report);
std::string summary_line(const ExperimentReport& report);

}  // namespace mg
