// Command-line driver for the projection toolkit.

#include "cyclex/config.hpp"
#include "cyclex/experiment.hpp"
#include "cyclex/geometry.hpp"
#include "cyclex/impossibility.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cyclex;

Vector parse_csv_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
      throw Error("malformed number '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw Error("empty coordinate list");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string join_vector(const Vector& v) {
  std::string out;
  for (Eigen::Index k = 0; k < v.size(); ++k) out += (k ? "," : "") + format_double(v[k]);
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read " << config_path << '\n';
    return kExitValidation;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg;
  try {
    cfg = validate_config(buf.str());
  } catch (const ConfigValidation& e) {
    for (const auto& p : e.problems()) std::cerr << "error: " << p << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (seed) cfg.seed = *seed;
  const auto outcome = run_experiment(cfg, out_dir);
  for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
  if (!outcome.message.empty()) {
    std::cerr << (outcome.status == kExitNotConverged ? "warning: " : "error: ") << outcome.message
              << '\n';
  }
  return outcome.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclex: periodic projections, cycles and product-space solvers"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "run an experiment described by a JSON config");
  run->add_option("--config", config_path, "experiment config (JSON)")->required();
  run->add_option("--out-dir", out_dir, "directory for CSV/JSON artifacts");
  run->add_option("--seed", seed, "override the config seed");

  std::string set_json, point_text;
  auto* proj = app.add_subcommand("project", "project a point onto a convex set");
  proj->add_option("--set", set_json, "set descriptor (JSON)")->required();
  proj->add_option("--point", point_text, "comma-separated coordinates")->required();

  std::string x_text, y_text, plane_text;
  std::size_t n = 3;
  auto* spi = app.add_subcommand("spiral", "print the polygonal spiral from y towards x as CSV");
  spi->add_option("--x", x_text, "inner target (comma-separated)")->required();
  spi->add_option("--y", y_text, "outer start (comma-separated)")->required();
  spi->add_option("--n", n, "number of rays")->required()->check(CLI::PositiveNumber);
  spi->add_option("--plane", plane_text, "plane hint for antipodal x, y");

  std::string candidate = "perimeter", z_text = "1,0";
  std::size_t m = 3, samples = 16;
  double rho = 2.0;
  std::uint64_t falsify_seed = 0;
  auto* fal = app.add_subcommand("falsify", "run the cycle-characterization loop on a candidate");
  fal->add_option("--candidate", candidate, "candidate functional")
      ->check(CLI::IsMember(candidates::builtin_names()));
  fal->add_option("--m", m, "number of sets (>= 3)");
  fal->add_option("--rho", rho, "sphere radius (> 1)");
  fal->add_option("--z", z_text, "unit vector z (comma-separated)");
  fal->add_option("--samples", samples, "random sphere probes");
  fal->add_option("--seed", falsify_seed, "seed for the sphere probes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, seed);
    if (*proj) {
      const ConvexSet set = parse_set(nlohmann::json::parse(set_json));
      std::cout << join_vector(project(set, parse_csv_vector(point_text))) << '\n';
      return kExitOk;
    }
    if (*spi) {
      SpiralSpec spec{parse_csv_vector(x_text), parse_csv_vector(y_text), n, std::nullopt};
      if (!plane_text.empty()) spec.plane_hint = parse_csv_vector(plane_text);
      write_spiral_csv(std::cout, spiral(spec));
      return kExitOk;
    }
    if (*fal) {
      const auto report = falsify_candidate(candidates::builtin(candidate), m,
                                            parse_csv_vector(z_text), rho, samples, falsify_seed);
      std::cout << report_json(report).dump(2) << '\n';
      return report.falsified() ? kExitOk : kExitNotConverged;
    }
  } catch (const ConfigValidation& e) {
    for (const auto& p : e.problems()) std::cerr << "error: " << p << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
