#pragma once

#include "cyclex/errors.hpp"
#include "cyclex/geometry.hpp"
#include "cyclex/impossibility.hpp"
#include "cyclex/product.hpp"
#include "cyclex/solver_config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cyclex {

enum class ExperimentKind { periodic, pair_distance, theorem31, parallel, spiral, falsify, gap };

const char* to_string(ExperimentKind kind);

struct FalsifySettings {
  std::string candidate = "perimeter";
  std::size_t m = 3;
  Vector z;
  double rho = 2.0;
  std::size_t sphere_samples = 16;
};

struct OutputPaths {
  std::string csv;
  std::string json;
};

/// Fully validated experiment description.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::periodic;
  std::vector<ConvexSet> family;
  /// Single start vector for sweep kinds; one block per set for product kinds.
  ProductPoint start;
  SolverConfig solver;
  double lambda = 1.0;
  ObjectiveKind objective = ObjectiveKind::pairwise_squared;
  ProductPoint target;
  ParallelVariant variant = ParallelVariant::others_mean;
  SpiralSpec spiral;
  FalsifySettings falsify;
  OutputPaths output;
  std::uint64_t seed = 0;
};

/// Carries every validation problem found, each naming the offending field.
class ConfigValidation : public Error {
public:
  explicit ConfigValidation(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

private:
  std::vector<std::string> problems_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses and validates a JSON experiment description. Throws ParseError for
/// malformed JSON and ConfigValidation listing all problems otherwise.
ExperimentConfig validate_config(const std::string& raw);

/// Parses a ConvexSet descriptor such as {"type":"ball","center":[0,0],"radius":1}.
/// Problems are appended to `problems` prefixed with `path`.
std::optional<ConvexSet> parse_set(const nlohmann::json& j, const std::string& path,
                                   std::vector<std::string>& problems);

/// Convenience wrapper throwing ConfigValidation.
ConvexSet parse_set(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ConvexSet& set);

}  // namespace cyclex
