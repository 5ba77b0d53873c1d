#include "mergegram/experiment.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "mergegram/errors.hpp"
#include "mergegram/invariants.hpp"
#include "mergegram/metrics.hpp"
#include "mergegram/rng.hpp"

namespace mg {

namespace {

constexpr double kSlack = 1e-9;

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ParseError("config field '" + field + "': " + why);
}

std::int64_t integer_field(const json& j, const std::string& field, std::int64_t lo,
                           std::int64_t hi) {
  if (!j.contains(field)) bad_field(field, "missing");
  if (!j[field].is_number_integer()) bad_field(field, "must be an integer");
  const std::int64_t v = j[field].get<std::int64_t>();
  if (v < lo || v > hi)
    bad_field(field, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

double number_field(const json& j, const std::string& field, double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number()) bad_field(field, "must be a number");
  const double v = j[field].get<double>();
  if (!std::isfinite(v) || v < 0.0) bad_field(field, "must be finite and non-negative");
  return v;
}

std::string string_field(const json& j, const std::string& field) {
  if (!j.contains(field)) bad_field(field, "missing");
  if (!j[field].is_string()) bad_field(field, "must be a string");
  return j[field].get<std::string>();
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  ExperimentConfig config;
  config.trials = integer_field(j, "trials", 1, 1000000);
  config.n_min = static_cast<std::int32_t>(integer_field(j, "n_min", 1, 100000));
  config.n_max = static_cast<std::int32_t>(integer_field(j, "n_max", 1, 100000));
  if (config.n_min > config.n_max) bad_field("n_min", "must not exceed n_max");
  config.dimension = static_cast<std::int32_t>(integer_field(j, "dimension", 1, 64));

  config.kind = string_field(j, "kind");
  const bool planar_kind = config.kind == "rotate" || config.kind == "affine" ||
                           config.kind == "projective";
  if (config.kind != "jitter" && config.kind != "isometry_jitter" && !planar_kind)
    bad_field("kind", "must be jitter, isometry_jitter, rotate, affine or projective");
  if (planar_kind && config.dimension != 2) bad_field("dimension", "must be 2 for this kind");
  if ((config.kind == "affine" || config.kind == "projective") && config.n_min < 2)
    bad_field("n_min", "must be at least 2 for this kind");

  config.epsilon = number_field(j, "epsilon", 0.0);
  config.delta = number_field(j, "delta", 0.0);

  if (j.contains("noise")) {
    const std::string noise = string_field(j, "noise");
    if (noise == "uniform")
      config.noise = NoiseKind::kUniform;
    else if (noise == "gaussian")
      config.noise = NoiseKind::kGaussian;
    else
      bad_field("noise", "must be uniform or gaussian");
  }
  if (config.kind == "projective" && config.noise == NoiseKind::kUniform &&
      config.delta > 0.5)
    bad_field("delta", "must be at most 0.5 for uniform projective noise");

  if (!j.contains("seed")) bad_field("seed", "missing (runs must be reproducible)");
  if (!j["seed"].is_number_integer()) bad_field("seed", "must be an integer");
  config.seed = j["seed"].get<std::uint64_t>();

  if (j.contains("convention")) {
    const std::string convention = string_field(j, "convention");
    if (convention == "half")
      config.convention = ScaleConvention::kHalf;
    else if (convention == "full")
      config.convention = ScaleConvention::kFull;
    else
      bad_field("convention", "must be half or full");
  }

  config.out = string_field(j, "out");
  if (config.out.empty()) bad_field("out", "must be a non-empty path");
  return config;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_experiment_config(in);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const SplitMix64 master(config.seed);
  ExperimentReport report;
  report.rows.reserve(config.trials);

  for (std::int64_t trial = 0; trial < config.trials; ++trial) {
    SplitMix64 rng = master.fork(static_cast<std::uint64_t>(trial));
    const std::int32_t n =
        config.n_min +
        static_cast<std::int32_t>(rng.below(config.n_max - config.n_min + 1));

    std::vector<Point> points(n);
    for (Point& p : points) {
      p.coords.resize(config.dimension);
      for (double& c : p.coords) c = rng.uniform(0.0, 10.0);
    }
    const PointCloud cloud(std::move(points));

    PointCloud perturbed = [&] {
      if (config.kind == "jitter") return jitter(cloud, config.epsilon, rng.next());
      if (config.kind == "isometry_jitter") {
        const PointCloud moved = random_isometry(cloud, rng.next(), true);
        return jitter(moved, config.epsilon, rng.next());
      }
      if (config.kind == "rotate")
        return rotate_cloud(cloud, rng.uniform(0.0, 2.0 * 3.14159265358979323846));
      if (config.kind == "affine")
        return affine_distort(cloud, config.delta, config.noise, rng.next());
      return projective_distort(cloud, config.delta, config.noise, rng.next());
    }();

    const SpanningTree tree_a = build_mst(pairwise_distances(cloud));
    const SpanningTree tree_b = build_mst(pairwise_distances(perturbed));
    const Mergegram mg_a = mergegram(single_linkage(tree_a, config.convention));
    const Mergegram mg_b = mergegram(single_linkage(tree_b, config.convention));
    const PersistenceDiagram pd_a = persistence0d_from_mst(tree_a, config.convention);
    const PersistenceDiagram pd_b = persistence0d_from_mst(tree_b, config.convention);

    TrialRow row;
    row.n = n;
    row.hausdorff_distance = hausdorff(cloud, perturbed);
    row.bottleneck_mergegram = bottleneck(mg_a, mg_b);
    row.bottleneck_pd0 = bottleneck(pd_a, pd_b);
    row.inequality_ok = row.bottleneck_mergegram <= row.hausdorff_distance + kSlack &&
                        row.bottleneck_pd0 <= row.hausdorff_distance + kSlack;
    if (!row.inequality_ok) ++report.violations;
    if (row.hausdorff_distance > 0.0)
      report.max_ratio =
          std::max(report.max_ratio,
                   std::max(row.bottleneck_mergegram, row.bottleneck_pd0) /
                       row.hausdorff_distance);
    report.rows.push_back(row);
  }
  return report;
}

void write_report_tsv(std::ostream& out, const ExperimentReport& report) {
  out << "# n\tHD\tBD_mergegram\tBD_pd0\tinequality_ok\n";
  for (const TrialRow& row : report.rows)
    out << row.n << '\t' << format_scale(row.hausdorff_distance) << '\t'
        << format_scale(row.bottleneck_mergegram) << '\t'
        << format_scale(row.bottleneck_pd0) << '\t' << (row.inequality_ok ? 1 : 0)
        << '\n';
}

std::string summary_line(const ExperimentReport& report) {
  return "violations: " + std::to_string(report.violations) +
         ", max BD/HD ratio: " + format_scale(report.max_ratio);
}

}  // namespace mg
