#include "cyclex/experiment.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <system_error>

namespace cyclex {
namespace {

using nlohmann::ordered_json;

ordered_json vec_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (double c : v) a.push_back(c);
  return a;
}

ordered_json points_json(const std::vector<Vector>& pts) {
  ordered_json a = ordered_json::array();
  for (const auto& p : pts) a.push_back(vec_json(p));
  return a;
}

class ArtifactWriter {
public:
  ArtifactWriter(const std::filesystem::path& dir, ExperimentOutcome& outcome)
      : dir_(dir), outcome_(outcome) {
    std::filesystem::create_directories(dir_);
  }

  template <class Fn>
  void text(const std::string& name, Fn&& body) {
    if (name.empty()) return;
    const auto path = dir_ / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    body(os);
    if (!os) throw Error("failed writing " + path.string());
    outcome_.files.push_back(path);
  }

  void json(const std::string& name, const ordered_json& doc) {
    text(name, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

private:
  std::filesystem::path dir_;
  ExperimentOutcome& outcome_;
};

Family make_family(const ExperimentConfig& cfg) { return Family(cfg.family); }

void emit_periodic(ArtifactWriter& out, const ExperimentConfig& cfg, const PeriodicResult& run,
                   const Family& family, const DistancePair* pair) {
  out.text(cfg.output.csv, [&](std::ostream& os) {
    write_trajectory_csv(os, run.trajectory, family.dim());
  });
  ordered_json doc = cycle_json(run);
  if (pair) doc["distance"] = (run.cycle.points[0] - run.cycle.points[1]).norm();
  out.json(cfg.output.json, doc);
}

void emit_product(ArtifactWriter& out, const ExperimentConfig& cfg, const ProductResult& result,
                  const Family& family) {
  out.text(cfg.output.csv, [&](std::ostream& os) {
    write_iteration_csv(os, result.log, family.size(), family.dim());
  });
  Vector mean = Vector::Zero(family.dim());
  for (const auto& b : result.solution) mean += b;
  mean /= static_cast<double>(family.size());
  ordered_json doc = solution_json(result, mean);
  doc["kind"] = to_string(cfg.kind);
  if (cfg.kind == ExperimentKind::parallel) doc["variant"] = to_string(cfg.variant);
  if (cfg.kind == ExperimentKind::theorem31) doc["objective_kind"] = to_string(cfg.objective);
  out.json(cfg.output.json, doc);
}

ExperimentOutcome dispatch(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  ExperimentOutcome outcome;
  ArtifactWriter out(dir, outcome);

  switch (cfg.kind) {
    case ExperimentKind::periodic:
    case ExperimentKind::pair_distance: {
      const Family family = make_family(cfg);
      const bool pair = cfg.kind == ExperimentKind::pair_distance;
      try {
        if (pair) {
          const auto result = min_distance_pair(family[0], family[1], cfg.start[0], cfg.solver);
          emit_periodic(out, cfg, result.run, family, &result);
        } else {
          emit_periodic(out, cfg, run_periodic(family, cfg.start[0], cfg.solver), family, nullptr);
        }
      } catch (const PeriodicNotConverged& e) {
        DistancePair dummy;
        emit_periodic(out, cfg, e.result(), family, pair ? &dummy : nullptr);
        outcome.status = kExitNotConverged;
        outcome.message = e.what();
      }
      break;
    }
    case ExperimentKind::theorem31:
    case ExperimentKind::parallel: {
      const Family family = make_family(cfg);
      try {
        if (cfg.kind == ExperimentKind::parallel) {
          emit_product(out, cfg, solve_parallel(family, cfg.start, cfg.solver, cfg.variant), family);
        } else {
          const SmoothObjective obj =
              cfg.objective == ObjectiveKind::pairwise_squared ? SmoothObjective::pairwise_squared(family.size())
              : cfg.objective == ObjectiveKind::cyclic_squared ? SmoothObjective::cyclic_squared(family.size())
                                                               : SmoothObjective::quadratic_to_target(cfg.target);
          emit_product(out, cfg, solve_theorem31(family, obj, cfg.start, cfg.solver), family);
        }
      } catch (const ProductNotConverged& e) {
        emit_product(out, cfg, e.result(), family);
        outcome.status = kExitNotConverged;
        outcome.message = e.what();
      }
      break;
    }
    case ExperimentKind::spiral: {
      const SpiralResult s = spiral(cfg.spiral);
      out.text(cfg.output.csv, [&](std::ostream& os) { write_spiral_csv(os, s); });
      ordered_json doc;
      doc["alpha"] = s.alpha;
      doc["n"] = cfg.spiral.n;
      doc["initial_norm"] = cfg.spiral.y.norm();
      doc["final_norm"] = s.final_norm;
      doc["target_norm"] = cfg.spiral.x.norm();
      doc["final_point"] = vec_json(s.points.back());
      out.json(cfg.output.json, doc);
      break;
    }
    case ExperimentKind::falsify: {
      const auto& f = cfg.falsify;
      const auto report = falsify_candidate(candidates::builtin(f.candidate), f.m, f.z, f.rho,
                                            f.sphere_samples, cfg.seed);
      out.json(cfg.output.json, report_json(report));
      if (!report.falsified()) {
        outcome.status = kExitNotConverged;
        outcome.message = report.verdict;
      }
      break;
    }
    case ExperimentKind::gap: {
      const Family family = make_family(cfg);
      try {
        out.json(cfg.output.json, gap_json(candidate_gap(family, cfg.objective, cfg.start[0], cfg.solver)));
      } catch (const NotConverged& e) {
        ordered_json doc;
        doc["stop_reason"] = "max_iterations";
        doc["message"] = e.what();
        out.json(cfg.output.json, doc);
        outcome.status = kExitNotConverged;
        outcome.message = e.what();
      }
      break;
    }
  }
  return outcome;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format double");
  return std::string(buf, end);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory, std::size_t dim) {
  os << "sweep,n_inner,set_index";
  for (std::size_t k = 0; k < dim; ++k) os << ",x_" << k;
  os << '\n';
  for (const auto& e : trajectory.iterates) {
    os << e.sweep << ',' << e.inner << ',' << e.set_index + 1;
    for (double c : e.x) os << ',' << format_double(c);
    os << '\n';
  }
}

void write_iteration_csv(std::ostream& os, const std::vector<IterationRecord>& log,
                         std::size_t blocks, std::size_t dim) {
  os << "iter,objective_value,displacement,stationarity_residual";
  for (std::size_t i = 0; i < blocks; ++i)
    for (std::size_t k = 0; k < dim; ++k) os << ",y" << i + 1 << '_' << k;
  os << '\n';
  for (const auto& rec : log) {
    os << rec.iter << ',' << format_double(rec.objective) << ',' << format_double(rec.displacement)
       << ',' << format_double(rec.stationarity);
    for (const auto& b : rec.x)
      for (double c : b) os << ',' << format_double(c);
    os << '\n';
  }
}

void write_spiral_csv(std::ostream& os, const SpiralResult& s) {
  const auto dim = s.points.front().size();
  os << 'k';
  for (Eigen::Index k = 0; k < dim; ++k) os << ",x_" << k;
  os << ",norm\n";
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    os << k;
    for (double c : s.points[k]) os << ',' << format_double(c);
    os << ',' << format_double(s.points[k].norm()) << '\n';
  }
}

ordered_json cycle_json(const PeriodicResult& run) {
  ordered_json doc;
  doc["points"] = points_json(run.cycle.points);
  doc["residual"] = run.cycle.residual;
  doc["sweeps"] = run.trajectory.sweeps_used;
  doc["stop_reason"] = to_string(run.trajectory.stop_reason);
  return doc;
}

ordered_json solution_json(const ProductResult& result, const Vector& fair_point) {
  ordered_json doc;
  doc["points"] = points_json(result.solution);
  doc["residual"] = result.stationarity;
  doc["iterations"] = result.iterations;
  doc["stop_reason"] = to_string(result.stop_reason);
  doc["objective"] = result.objective;
  doc["fair_point"] = vec_json(fair_point);
  return doc;
}

ordered_json report_json(const FalsificationReport& report) {
  ordered_json doc;
  doc["candidate"] = report.candidate;
  doc["chain"] = report.chain;
  doc["violated_link"] = report.violated_link;
  doc["gap"] = report.gap;
  doc["verdict"] = report.verdict;
  ordered_json links = ordered_json::array();
  for (const auto& l : report.links) {
    ordered_json lj;
    lj["link"] = l.name;
    lj["holds"] = l.holds;
    lj["gap"] = l.gap;
    links.push_back(lj);
  }
  doc["links"] = links;
  return doc;
}

ordered_json gap_json(const CandidateGap& gap) {
  ordered_json doc;
  doc["cycle"] = {{"points", points_json(gap.cycle.points)}, {"residual", gap.cycle.residual}};
  doc["minimizer"] = points_json(gap.minimizer);
  doc["gap"] = gap.gap;
  doc["displacement"] = gap.displacement;
  return doc;
}

std::vector<Vector> points_from_json(const nlohmann::json& doc) {
  std::vector<Vector> pts;
  for (const auto& p : doc.at("points")) {
    Vector v(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) v[k] = p[k].get<double>();
    pts.push_back(v);
  }
  return pts;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir) {
  try {
    return dispatch(config, out_dir);
  } catch (const NotConverged& e) {
    return {kExitNotConverged, {}, e.what()};
  } catch (const std::filesystem::filesystem_error& e) {
    return {kExitValidation, {}, e.what()};
  } catch (const Error& e) {
    return {kExitValidation, {}, e.what()};
  }
}

}  // namespace cyclex
