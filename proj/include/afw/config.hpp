#pragma once

#include "afw/engine.hpp"
#include "afw/simplex.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace afw {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { Quadratic, Linear, PolytopeQuadratic };
enum class Algorithm { FW, AFW };

std::string_view to_string(ProblemKind kind);
std::string_view to_string(Algorithm algorithm);

struct StartSpec {
  enum class Kind { Barycenter, Vertex, Weights } kind = Kind::Barycenter;
  Index vertex = 0;
  Vector weights;
};

/// Parsed experiment file.
///
/// Format: one `key = value` per line, `#` starts a comment. Values are
/// numbers, bare words, or JSON arrays; matrices are arrays of rows and atom
/// lists are arrays of atoms.
struct ExperimentConfig {
  ProblemKind problem = ProblemKind::Quadratic;
  std::optional<std::string> generator;
  std::uint64_t seed = 0;
  Index n = 0;
  Index dim = 2;
  Index face_size = 1;
  Index other_atoms = 3;

  Matrix Q;
  Vector b;
  Vector c;
  std::optional<double> lipschitz;
  /// Columns are atoms.
  Matrix atoms;

  Algorithm algorithm = Algorithm::AFW;
  StepRule rule = StepRule::Lipschitz;
  StartSpec x0;
  double gap_tol = 1e-10;
  std::int64_t max_iters = 10000;
  double zero_tol = 1e-8;
  std::vector<Vector> reference;
  std::optional<Vector> reference_y;
  std::optional<double> f_star;
  std::optional<std::string> output;

  // Inputs for bound reports.
  std::optional<double> q;
  std::optional<double> theta;
  std::optional<double> p;
  std::optional<double> tau;
  std::optional<double> f_min;
  std::optional<double> u;
  std::optional<std::int64_t> q_eps;

  /// Raw entries in file order, echoed into trace headers.
  std::vector<std::pair<std::string, std::string>> entries;
};

ExperimentConfig parse_config(std::string_view text);
/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace afw
