#include "mergegram/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mergegram/errors.hpp"
#include "mergegram/experiment.hpp"
#include "mergegram/invariants.hpp"
#include "mergegram/io.hpp"
#include "mergegram/metrics.hpp"
#include "mergegram/perturb.hpp"
#include "mergegram/reconstruct.hpp"
#include "mergegram/rng.hpp"

namespace mg {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitGeneralPosition = 4;

ScaleConvention parse_convention(const std::string& name) {
  return name == "full" ? ScaleConvention::kFull : ScaleConvention::kHalf;
}

NoiseKind parse_noise(const std::string& name) {
  return name == "gaussian" ? NoiseKind::kGaussian : NoiseKind::kUniform;
}

nlohmann::json dendrogram_json(const Dendrogram& d) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::int32_t id = 0; id < static_cast<std::int32_t>(d.nodes.size()); ++id) {
    const ClusterNode& node = d.nodes[id];
    nlohmann::json entry;
    entry["id"] = id;
    entry["birth"] = node.birth;
    if (node.death == kInfinity)
      entry["death"] = "inf";
    else
      entry["death"] = node.death;
    entry["children"] = node.children;
    nodes.push_back(std::move(entry));
  }
  nlohmann::json tree;
  tree["point_count"] = d.point_count;
  tree["root"] = d.root;
  tree["nodes"] = std::move(nodes);
  return tree;
}

struct ComputeArgs {
  std::string in;
  std::string invariant;
  std::string out;
  std::string convention = "half";
  int k = 4;
};

int cmd_compute(const ComputeArgs& args, std::ostream& out) {
  const PointCloud cloud = read_cloud_file(args.in);
  const ScaleConvention convention = parse_convention(args.convention);

  if (args.invariant == "nnk") {
    const NnDistanceSet nn = nn_distances(cloud, args.k);
    write_nn_file(args.out, nn);
    out << "nn(" << args.k << "): " << nn.rows.size() << " rows -> " << args.out << '\n';
    return kExitOk;
  }

  const SpanningTree tree = build_mst(pairwise_distances(cloud));
  const Diagram diagram = args.invariant == "mergegram"
                              ? mergegram(single_linkage(tree, convention))
                              : persistence0d_from_mst(tree, convention);
  write_diagram_file(args.out, diagram);
  out << args.invariant << ": " << diagram.pairs().size() << " distinct pairs, total multiplicity "
      << diagram.total_multiplicity() << " -> " << args.out << '\n';
  return kExitOk;
}

struct DistanceArgs {
  std::string mode;
  std::string file1;
  std::string file2;
};

int cmd_distance(const DistanceArgs& args, std::ostream& out) {
  double value;
  if (args.mode == "bottleneck") {
    const Diagram first = read_diagram_file(args.file1);
    const Diagram second = read_diagram_file(args.file2);
    value = bottleneck(first, second);
  } else {
    const PointCloud first = read_cloud_file(args.file1);
    const PointCloud second = read_cloud_file(args.file2);
    value = hausdorff(first, second);
  }
  out << format_scale(value) << '\n';
  return kExitOk;
}

struct ReconstructArgs {
  std::string in;
  std::string out_path;
};

int cmd_reconstruct(const ReconstructArgs& args, std::ostream& out) {
  const Mergegram input = read_diagram_file(args.in);
  const Dendrogram tree = reconstruct_dendrogram(input);
  const nlohmann::json j = dendrogram_json(tree);
  if (args.out_path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    std::ofstream file(args.out_path);
    if (!file) throw ParseError("cannot write " + args.out_path);
    file << j.dump(2) << '\n';
    out << "reconstructed " << tree.nodes.size() << " nodes -> " << args.out_path << '\n';
  }
  return kExitOk;
}

struct PerturbArgs {
  std::string in;
  std::string kind;
  std::string out;
  std::string noise = "uniform";
  double delta = 0.0;
  std::uint64_t seed = 0;
  bool reflect = false;
};

int cmd_perturb(const PerturbArgs& args, std::ostream& out) {
  const PointCloud cloud = read_cloud_file(args.in);
  PointCloud result = [&] {
    if (args.kind == "rotate") {
      SplitMix64 rng(args.seed);
      return rotate_cloud(cloud, rng.uniform(0.0, 2.0 * 3.14159265358979323846));
    }
    if (args.kind == "affine")
      return affine_distort(cloud, args.delta, parse_noise(args.noise), args.seed);
    if (args.kind == "projective")
      return projective_distort(cloud, args.delta, parse_noise(args.noise), args.seed);
    if (args.kind == "jitter") return jitter(cloud, args.delta, args.seed);
    return random_isometry(cloud, args.seed, args.reflect);
  }();
  write_cloud_file(args.out, result);
  out << args.kind << ": " << result.size() << " points -> " << args.out << '\n';
  return kExitOk;
}

int cmd_experiment(const std::string& config_path, std::ostream& out) {
  const ExperimentConfig config = parse_experiment_config_file(config_path);
  const ExperimentReport report = run_experiment(config);
  std::ofstream file(config.out);
  if (!file) throw ParseError("cannot write " + config.out);
  write_report_tsv(file, report);
  out << summary_line(report) << '\n';
  out << "report: " << config.out << '\n';
  return report.violations == 0 ? kExitOk : kExitDomain;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mergegram: isometry invariants of point clouds via single-linkage clustering"};
  app.require_subcommand(1);

  ComputeArgs compute_args;
  CLI::App* compute = app.add_subcommand(
      "compute", "Compute an invariant of a cloud file and write it as TSV");
  compute->add_option("--in", compute_args.in, "cloud CSV file")->required();
  compute->add_option("--invariant", compute_args.invariant, "mergegram | pd0 | nnk")
      ->required()
      ->check(CLI::IsMember({"mergegram", "pd0", "nnk"}));
  compute->add_option("--out", compute_args.out, "output TSV path")->required();
  compute->add_option("--convention", compute_args.convention, "half | full (default half)")
      ->check(CLI::IsMember({"half", "full"}));
  compute->add_option("--k", compute_args.k, "neighbour count for nnk (default 4)")
      ->check(CLI::PositiveNumber);

  DistanceArgs distance_args;
  CLI::App* distance = app.add_subcommand(
      "distance", "Bottleneck distance between diagram files or Hausdorff between clouds");
  distance->add_option("--mode", distance_args.mode, "bottleneck | hausdorff")
      ->required()
      ->check(CLI::IsMember({"bottleneck", "hausdorff"}));
  distance->add_option("file1", distance_args.file1)->required();
  distance->add_option("file2", distance_args.file2)->required();

  ReconstructArgs reconstruct_args;
  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "Rebuild the dendrogram of a general-position mergegram as JSON");
  reconstruct->add_option("--in", reconstruct_args.in, "mergegram TSV file")->required();
  reconstruct->add_option("--out", reconstruct_args.out_path,
                          "JSON output path (stdout when omitted)");

  PerturbArgs perturb_args;
  CLI::App* perturb = app.add_subcommand("perturb", "Write a distorted copy of a cloud");
  perturb->add_option("--in", perturb_args.in, "cloud CSV file")->required();
  perturb
      ->add_option("--kind", perturb_args.kind,
                   "rotate | affine | projective | jitter | isometry")
      ->required()
      ->check(CLI::IsMember({"rotate", "affine", "projective", "jitter", "isometry"}));
  perturb->add_option("--delta", perturb_args.delta,
                      "noise level (jitter displacement bound)");
  perturb->add_option("--noise", perturb_args.noise, "uniform | gaussian (default uniform)")
      ->check(CLI::IsMember({"uniform", "gaussian"}));
  perturb->add_option("--seed", perturb_args.seed, "PRNG seed (required; no wall-clock default)")
      ->required();
  perturb->add_flag("--reflect", perturb_args.reflect, "allow reflections for isometry");
  perturb->add_option("--out", perturb_args.out, "output cloud CSV path")->required();

  std::string config_path;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "Run a batch stability experiment from a JSON config");
  experiment->add_option("--config", config_path, "experiment config JSON")->required();

  std::vector<const char*> argv;
  argv.push_back("mergegram");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (compute->parsed()) return cmd_compute(compute_args, out);
    if (distance->parsed()) return cmd_distance(distance_args, out);
    if (reconstruct->parsed()) return cmd_reconstruct(reconstruct_args, out);
    if (perturb->parsed()) return cmd_perturb(perturb_args, out);
    return cmd_experiment(config_path, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const NotGeneralPosition& e) {
    err << "error: " << e.what() << '\n';
    return kExitGeneralPosition;
  } catch (const DanglingBirth& e) {
    err << "error: " << e.what() << '\n';
    return kExitGeneralPosition;
  } catch (const LeafDeficit& e) {
    err << "error: " << e.what() << '\n';
    return kExitGeneralPosition;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace mg
