#include "cyclex/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace cyclex {
namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

/// Accumulates problems against dotted/bracketed field paths.
class Reader {
public:
  explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

  void fail(const std::string& path, const std::string& msg) { problems_.push_back(path + msg); }

  std::optional<double> number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      fail(path, " must be a number");
      return std::nullopt;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      fail(path, " must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::size_t> count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) {
      fail(path, " must be a positive integer");
      return std::nullopt;
    }
    return static_cast<std::size_t>(j.get<long long>());
  }

  std::optional<Vector> vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
      fail(path, " must be a nonempty array of numbers");
      return std::nullopt;
    }
    Vector v(j.size());
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto c = number(j[i], path + "[" + std::to_string(i) + "]");
      if (c) {
        v[i] = *c;
      } else {
        ok = false;
      }
    }
    return ok ? std::optional<Vector>(v) : std::nullopt;
  }

  std::optional<std::string> string(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail(path, " must be a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  bool require(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) {
      fail(path + "." + key, " is required");
      return false;
    }
    return true;
  }

  void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
      if (!known.count(key)) fail(path.empty() ? key : path + "." + key, " is not a recognized field");
    }
  }

private:
  std::vector<std::string>& problems_;
};

std::pair<std::size_t, std::size_t> line_column(const std::string& raw, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, raw.size()); ++i) {
    if (raw[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

ExperimentKind parse_kind(const std::string& s, bool& ok) {
  ok = true;
  if (s == "periodic") return ExperimentKind::periodic;
  if (s == "pair_distance") return ExperimentKind::pair_distance;
  if (s == "theorem31") return ExperimentKind::theorem31;
  if (s == "parallel") return ExperimentKind::parallel;
  if (s == "spiral") return ExperimentKind::spiral;
  if (s == "falsify") return ExperimentKind::falsify;
  if (s == "gap") return ExperimentKind::gap;
  ok = false;
  return ExperimentKind::periodic;
}

bool needs_family(ExperimentKind k) {
  return k != ExperimentKind::spiral && k != ExperimentKind::falsify;
}

bool is_product(ExperimentKind k) {
  return k == ExperimentKind::theorem31 || k == ExperimentKind::parallel;
}

OutputPaths default_outputs(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::periodic:
    case ExperimentKind::pair_distance: return {"trajectory.csv", "cycle.json"};
    case ExperimentKind::theorem31:
    case ExperimentKind::parallel: return {"iterations.csv", "solution.json"};
    case ExperimentKind::spiral: return {"spiral.csv", "spiral.json"};
    case ExperimentKind::falsify: return {"", "report.json"};
    case ExperimentKind::gap: return {"", "gap.json"};
  }
  return {};
}

void parse_solver(Reader& r, const json& j, ExperimentConfig& cfg) {
  const std::string p = "solver";
  if (!j.is_object()) {
    r.fail(p, " must be an object");
    return;
  }
  r.reject_unknown(j,
                   {"gamma", "lambda", "sweep_tol", "cycle_tol", "fixpoint_tol", "max_sweeps",
                    "max_iters", "backend", "record"},
                   p);
  auto positive = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    if (auto v = r.number(j[key], p + "." + key)) {
      if (*v > 0.0) {
        slot = *v;
      } else {
        r.fail(p + "." + key, " must be > 0");
      }
    }
  };
  positive("gamma", cfg.solver.gamma);
  positive("sweep_tol", cfg.solver.sweep_tol);
  positive("cycle_tol", cfg.solver.cycle_tol);
  positive("fixpoint_tol", cfg.solver.fixpoint_tol);
  if (j.contains("lambda")) {
    if (auto v = r.number(j["lambda"], p + ".lambda")) {
      if (*v >= 0.0) {
        cfg.lambda = *v;
        cfg.solver.lambda = RelaxationSchedule::constant(*v);
      } else {
        r.fail(p + ".lambda", " must be >= 0");
      }
    }
  }
  if (j.contains("max_sweeps")) {
    if (auto v = r.count(j["max_sweeps"], p + ".max_sweeps")) cfg.solver.max_sweeps = *v;
  }
  if (j.contains("max_iters")) {
    if (auto v = r.count(j["max_iters"], p + ".max_iters")) cfg.solver.max_iters = *v;
  }
  if (j.contains("backend")) {
    if (auto s = r.string(j["backend"], p + ".backend")) {
      if (*s == "serial") {
        cfg.solver.backend = Backend::serial;
      } else if (*s == "openmp") {
        cfg.solver.backend = Backend::openmp;
      } else {
        r.fail(p + ".backend", " must be \"serial\" or \"openmp\"");
      }
    }
  }
  if (j.contains("record")) {
    if (j["record"].is_boolean()) {
      cfg.solver.record = j["record"].get<bool>();
    } else {
      r.fail(p + ".record", " must be a boolean");
    }
  }
}

/// A start/target is either one vector (replicated over the blocks) or one
/// vector per block.
std::optional<ProductPoint> parse_tuple(Reader& r, const json& j, const std::string& path,
                                        std::size_t blocks) {
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    ProductPoint out;
    bool ok = true;
    if (j.size() != blocks) {
      r.fail(path, " has " + std::to_string(j.size()) + " blocks, expected " +
                       std::to_string(blocks));
      return std::nullopt;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (auto v = r.vector(j[i], path + "[" + std::to_string(i) + "]")) {
        out.push_back(*v);
      } else {
        ok = false;
      }
    }
    return ok ? std::optional<ProductPoint>(out) : std::nullopt;
  }
  if (auto v = r.vector(j, path)) return replicate(*v, blocks);
  return std::nullopt;
}

void check_dim(Reader& r, const ProductPoint& pts, std::size_t dim, const std::string& path) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (static_cast<std::size_t>(pts[i].size()) != dim) {
      r.fail(path, ": dimension " + std::to_string(pts[i].size()) +
                       " does not match the family dimension " + std::to_string(dim));
      return;
    }
  }
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::periodic: return "periodic";
    case ExperimentKind::pair_distance: return "pair_distance";
    case ExperimentKind::theorem31: return "theorem31";
    case ExperimentKind::parallel: return "parallel";
    case ExperimentKind::spiral: return "spiral";
    case ExperimentKind::falsify: return "falsify";
    case ExperimentKind::gap: return "gap";
  }
  return "unknown";
}

ConfigValidation::ConfigValidation(std::vector<std::string> problems)
    : Error("invalid configuration: " + join(problems)), problems_(std::move(problems)) {}

std::optional<ConvexSet> parse_set(const json& j, const std::string& path,
                                   std::vector<std::string>& problems) {
  Reader r(problems);
  const std::size_t before = problems.size();
  if (!j.is_object()) {
    r.fail(path, " must be an object");
    return std::nullopt;
  }
  if (!r.require(j, "type", path)) return std::nullopt;
  const auto type = r.string(j["type"], path + ".type");
  if (!type) return std::nullopt;

  auto vec = [&](const char* key) -> std::optional<Vector> {
    if (!r.require(j, key, path)) return std::nullopt;
    return r.vector(j[key], path + "." + key);
  };
  auto num = [&](const char* key) -> std::optional<double> {
    if (!r.require(j, key, path)) return std::nullopt;
    return r.number(j[key], path + "." + key);
  };

  std::optional<ConvexSet::Variant> shape;
  if (*type == "singleton") {
    r.reject_unknown(j, {"type", "point"}, path);
    if (auto p = vec("point")) shape = Singleton{*p};
  } else if (*type == "segment") {
    r.reject_unknown(j, {"type", "a", "b"}, path);
    auto a = vec("a");
    auto b = vec("b");
    if (a && b) shape = Segment{*a, *b};
  } else if (*type == "ray") {
    r.reject_unknown(j, {"type", "direction"}, path);
    if (auto d = vec("direction")) shape = Ray{*d};
  } else if (*type == "ball") {
    r.reject_unknown(j, {"type", "center", "radius"}, path);
    auto c = vec("center");
    auto rad = num("radius");
    if (rad && *rad < 0.0) {
      r.fail(path + ".radius", " must be \xE2\x89\xA5 0");
      rad.reset();
    }
    if (c && rad) shape = Ball{*c, *rad};
  } else if (*type == "box") {
    r.reject_unknown(j, {"type", "lower", "upper"}, path);
    auto lo = vec("lower");
    auto hi = vec("upper");
    if (lo && hi) shape = Box{*lo, *hi};
  } else if (*type == "halfspace") {
    r.reject_unknown(j, {"type", "normal", "offset"}, path);
    auto a = vec("normal");
    auto b = num("offset");
    if (a && b) shape = Halfspace{*a, *b};
  } else if (*type == "affine") {
    r.reject_unknown(j, {"type", "anchor", "basis"}, path);
    auto p = vec("anchor");
    std::vector<Vector> basis;
    bool ok = r.require(j, "basis", path);
    if (ok && !j["basis"].is_array()) {
      r.fail(path + ".basis", " must be an array of vectors");
      ok = false;
    }
    if (ok) {
      for (std::size_t i = 0; i < j["basis"].size(); ++i) {
        if (auto v = r.vector(j["basis"][i], path + ".basis[" + std::to_string(i) + "]")) {
          basis.push_back(*v);
        } else {
          ok = false;
        }
      }
    }
    if (p && ok) shape = AffineSubspace{*p, basis};
  } else if (*type == "ellipsoid") {
    r.reject_unknown(j, {"type", "center", "axes"}, path);
    auto c = vec("center");
    auto a = vec("axes");
    if (c && a) shape = Ellipsoid{*c, *a};
  } else {
    r.fail(path + ".type", " '" + *type + "' is not a known set type");
  }

  if (!shape || problems.size() != before) return std::nullopt;
  try {
    return ConvexSet(std::move(*shape));
  } catch (const InvalidSet& e) {
    r.fail(path, std::string(": ") + e.what());
    return std::nullopt;
  }
}

ConvexSet parse_set(const json& j) {
  std::vector<std::string> problems;
  auto set = parse_set(j, "set", problems);
  if (!set) throw ConfigValidation(problems);
  return *set;
}

nlohmann::ordered_json to_json(const ConvexSet& set) {
  using oj = nlohmann::ordered_json;
  auto arr = [](const Vector& v) { return std::vector<double>(v.begin(), v.end()); };
  oj j;
  j["type"] = set.type_name();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Singleton>) {
          j["point"] = arr(s.point);
        } else if constexpr (std::is_same_v<T, Segment>) {
          j["a"] = arr(s.a);
          j["b"] = arr(s.b);
        } else if constexpr (std::is_same_v<T, Ray>) {
          j["direction"] = arr(s.direction);
        } else if constexpr (std::is_same_v<T, Ball>) {
          j["center"] = arr(s.center);
          j["radius"] = s.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          j["lower"] = arr(s.lower);
          j["upper"] = arr(s.upper);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          j["normal"] = arr(s.normal);
          j["offset"] = s.offset;
        } else if constexpr (std::is_same_v<T, AffineSubspace>) {
          j["anchor"] = arr(s.anchor);
          oj basis = oj::array();
          for (const auto& e : s.basis) basis.push_back(arr(e));
          j["basis"] = basis;
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          j["center"] = arr(s.center);
          j["axes"] = arr(s.axes);
        }
      },
      set.shape());
  return j;
}

ExperimentConfig validate_config(const std::string& raw) {
  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(raw, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("config is not valid JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }

  std::vector<std::string> problems;
  Reader r(problems);
  ExperimentConfig cfg;
  if (!doc.is_object()) throw ConfigValidation({"config must be a JSON object"});

  r.reject_unknown(doc,
                   {"kind", "family", "start", "solver", "objective", "target", "variant",
                    "spiral", "falsify", "output", "seed"},
                   "");

  bool kind_ok = false;
  if (!doc.contains("kind")) {
    r.fail("kind", " is required");
  } else if (auto s = r.string(doc["kind"], "kind")) {
    cfg.kind = parse_kind(*s, kind_ok);
    if (!kind_ok) {
      r.fail("kind", " must be one of periodic, pair_distance, theorem31, parallel, spiral, "
                     "falsify, gap");
    }
  }
  if (!kind_ok) throw ConfigValidation(problems);

  const ExperimentKind kind = cfg.kind;
  if (is_product(kind) || kind == ExperimentKind::gap) cfg.solver = SolverConfig::product_defaults();
  if (kind == ExperimentKind::periodic || kind == ExperimentKind::pair_distance ||
      kind == ExperimentKind::gap) {
    cfg.solver.sweep_tol = defaults::kSweepTol;
  }
  if (kind == ExperimentKind::gap) cfg.objective = ObjectiveKind::cyclic_squared;

  if (doc.contains("seed")) {
    if (doc["seed"].is_number_unsigned() || (doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0)) {
      cfg.seed = doc["seed"].get<std::uint64_t>();
    } else {
      r.fail("seed", " must be a nonnegative integer");
    }
  }
  if (doc.contains("solver")) parse_solver(r, doc["solver"], cfg);

  // Family and start.
  std::size_t dim = 0;
  bool family_ok = false;
  if (needs_family(kind)) {
    if (!doc.contains("family") || !doc["family"].is_array()) {
      r.fail("family", " must be an array of set descriptors");
    } else {
      const json& fam = doc["family"];
      family_ok = true;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        const std::string path = "family[" + std::to_string(i) + "]";
        auto set = parse_set(fam[i], path, problems);
        if (!set) {
          family_ok = false;
          continue;
        }
        if (cfg.family.empty()) {
          dim = set->dim();
        } else if (set->dim() != dim) {
          r.fail(path, ": dimension " + std::to_string(set->dim()) +
                           " does not match family[0] dimension " + std::to_string(dim));
          family_ok = false;
          continue;
        }
        cfg.family.push_back(*set);
      }
      const std::size_t m = fam.size();
      if (kind == ExperimentKind::pair_distance && m != 2) {
        r.fail("family", " must contain exactly 2 sets for pair_distance");
      } else if (m < 2) {
        r.fail("family", " must contain at least 2 sets");
      }
      if (kind == ExperimentKind::parallel && m < 3 &&
          (!doc.contains("variant") || doc["variant"] == "others_mean")) {
        r.fail("family", " must contain at least 3 sets for the others_mean variant");
      }
    }
  } else if (doc.contains("family")) {
    r.fail("family", " is not used by kind " + std::string(to_string(kind)));
  }

  if (needs_family(kind) && family_ok) {
    const std::size_t m = cfg.family.size();
    const std::size_t blocks = is_product(kind) ? m : 1;
    if (doc.contains("start")) {
      if (auto start = parse_tuple(r, doc["start"], "start", blocks)) {
        check_dim(r, *start, dim, "start");
        cfg.start = *start;
      }
    } else {
      cfg.start = replicate(Vector::Zero(dim), blocks);
    }
  }

  if (doc.contains("objective")) {
    if (kind != ExperimentKind::theorem31 && kind != ExperimentKind::gap) {
      r.fail("objective", " is only used by theorem31 and gap");
    } else if (auto s = r.string(doc["objective"], "objective")) {
      if (*s == "pairwise2") {
        cfg.objective = ObjectiveKind::pairwise_squared;
      } else if (*s == "cyclic2") {
        cfg.objective = ObjectiveKind::cyclic_squared;
      } else if (*s == "quadratic" && kind == ExperimentKind::theorem31) {
        cfg.objective = ObjectiveKind::quadratic_to_target;
      } else {
        r.fail("objective", kind == ExperimentKind::gap
                                ? " must be pairwise2 or cyclic2"
                                : " must be pairwise2, cyclic2 or quadratic");
      }
    }
  }
  if (cfg.objective == ObjectiveKind::quadratic_to_target) {
    if (!doc.contains("target")) {
      r.fail("target", " is required for the quadratic objective");
    } else if (family_ok) {
      if (auto t = parse_tuple(r, doc["target"], "target", cfg.family.size())) {
        check_dim(r, *t, dim, "target");
        cfg.target = *t;
      }
    }
  } else if (doc.contains("target")) {
    r.fail("target", " is only used by the quadratic objective");
  }

  if (doc.contains("variant")) {
    if (kind != ExperimentKind::parallel) {
      r.fail("variant", " is only used by kind parallel");
    } else if (auto s = r.string(doc["variant"], "variant")) {
      if (*s == "others_mean") {
        cfg.variant = ParallelVariant::others_mean;
      } else if (*s == "full_mean") {
        cfg.variant = ParallelVariant::full_mean;
      } else {
        r.fail("variant", " must be others_mean or full_mean");
      }
    }
  }

  if (kind == ExperimentKind::spiral) {
    if (!doc.contains("spiral") || !doc["spiral"].is_object()) {
      r.fail("spiral", " must be an object with x, y and n");
    } else {
      const json& s = doc["spiral"];
      r.reject_unknown(s, {"x", "y", "n", "plane"}, "spiral");
      std::optional<Vector> x, y;
      if (r.require(s, "x", "spiral")) x = r.vector(s["x"], "spiral.x");
      if (r.require(s, "y", "spiral")) y = r.vector(s["y"], "spiral.y");
      if (r.require(s, "n", "spiral")) {
        if (auto n = r.count(s["n"], "spiral.n")) cfg.spiral.n = *n;
      }
      if (s.contains("plane")) {
        if (auto p = r.vector(s["plane"], "spiral.plane")) cfg.spiral.plane_hint = *p;
      }
      if (x && y) {
        if (x->size() != y->size()) {
          r.fail("spiral.x", ": dimension does not match spiral.y");
        } else if (x->norm() == 0.0) {
          r.fail("spiral.x", " must be nonzero");
        } else if (!(x->norm() < y->norm())) {
          r.fail("spiral.x", " must be strictly shorter than spiral.y");
        }
        cfg.spiral.x = *x;
        cfg.spiral.y = *y;
      }
    }
  } else if (doc.contains("spiral")) {
    r.fail("spiral", " is only used by kind spiral");
  }

  if (kind == ExperimentKind::falsify) {
    if (!doc.contains("falsify") || !doc["falsify"].is_object()) {
      r.fail("falsify", " must be an object");
    } else {
      const json& f = doc["falsify"];
      r.reject_unknown(f, {"candidate", "m", "z", "rho", "sphere_samples"}, "falsify");
      if (f.contains("candidate")) {
        if (auto s = r.string(f["candidate"], "falsify.candidate")) {
          const auto names = candidates::builtin_names();
          if (std::find(names.begin(), names.end(), *s) == names.end()) {
            r.fail("falsify.candidate", " must be one of perimeter, cyclic2, pairwise2, constant, tuple_norm");
          }
          cfg.falsify.candidate = *s;
        }
      }
      if (f.contains("m")) {
        if (auto m = r.count(f["m"], "falsify.m")) {
          if (*m < 3) r.fail("falsify.m", " must be at least 3");
          cfg.falsify.m = *m;
        }
      }
      cfg.falsify.z = Vector::Unit(2, 0);
      if (f.contains("z")) {
        if (auto z = r.vector(f["z"], "falsify.z")) {
          if (z->size() < 2) {
            r.fail("falsify.z", " must have dimension >= 2");
          } else if (std::abs(z->norm() - 1.0) > 1e-12) {
            r.fail("falsify.z", " must have unit norm");
          }
          cfg.falsify.z = *z;
        }
      }
      if (f.contains("rho")) {
        if (auto rho = r.number(f["rho"], "falsify.rho")) {
          if (!(*rho > 1.0)) r.fail("falsify.rho", " must exceed 1");
          cfg.falsify.rho = *rho;
        }
      }
      if (f.contains("sphere_samples")) {
        if (auto s = r.count(f["sphere_samples"], "falsify.sphere_samples")) {
          if (*s < 2) r.fail("falsify.sphere_samples", " must be at least 2");
          cfg.falsify.sphere_samples = *s;
        }
      }
    }
  } else if (doc.contains("falsify")) {
    r.fail("falsify", " is only used by kind falsify");
  }

  cfg.output = default_outputs(kind);
  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) {
      r.fail("output", " must be an object");
    } else {
      r.reject_unknown(o, {"csv", "json"}, "output");
      if (o.contains("csv")) {
        if (auto s = r.string(o["csv"], "output.csv")) cfg.output.csv = *s;
      }
      if (o.contains("json")) {
        if (auto s = r.string(o["json"], "output.json")) cfg.output.json = *s;
      }
    }
  }

  if (!problems.empty()) throw ConfigValidation(problems);
  return cfg;
}

}  // namespace cyclex
