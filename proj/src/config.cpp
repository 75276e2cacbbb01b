#include "afw/config.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace afw {

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Quadratic: return "quadratic";
    case ProblemKind::Linear: return "linear";
    case ProblemKind::PolytopeQuadratic: return "polytope-quadratic";
  }
  return "?";
}

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::FW ? "FW" : "AFW";
}

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

json parse_value(const std::string& key, const std::string& raw) {
  try {
    return json::parse(raw);
  } catch (const json::parse_error&) {
    if (raw.empty() || raw.front() == '[' || raw.front() == '{') {
      throw ConfigError("malformed value for '" + key + "'");
    }
    return json(raw);
  }
}

double as_real(const std::string& key, const json& v) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("'" + key + "' must be finite");
  return d;
}

std::int64_t as_int(const std::string& key, const json& v) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string as_word(const std::string& key, const json& v) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a word");
  return v.get<std::string>();
}

Vector as_vector(const std::string& key, const json& v) {
  if (!v.is_array() || v.empty()) throw ConfigError("'" + key + "' must be a nonempty array");
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Index>(i)] = as_real(key, v[i]);
  return out;
}

/// Array of equal-length arrays; element r becomes row r.
Matrix as_rows(const std::string& key, const json& v) {
  if (!v.is_array() || v.empty()) throw ConfigError("'" + key + "' must be a nonempty array of arrays");
  const Vector first = as_vector(key, v[0]);
  Matrix out(static_cast<Index>(v.size()), first.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    const Vector row = as_vector(key, v[r]);
    if (row.size() != first.size()) throw ConfigError("'" + key + "' rows differ in length");
    out.row(static_cast<Index>(r)) = row.transpose();
  }
  return out;
}

Index as_count(const std::string& key, const json& v, std::int64_t lo) {
  const std::int64_t n = as_int(key, v);
  if (n < lo) throw ConfigError("'" + key + "' must be at least " + std::to_string(lo));
  return static_cast<Index>(n);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  bool have_problem = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string raw = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
    cfg.entries.emplace_back(key, raw);
    const json v = parse_value(key, raw);

    if (key == "problem") {
      const std::string w = as_word(key, v);
      if (w == "quadratic") cfg.problem = ProblemKind::Quadratic;
      else if (w == "linear") cfg.problem = ProblemKind::Linear;
      else if (w == "polytope-quadratic") cfg.problem = ProblemKind::PolytopeQuadratic;
      else throw ConfigError("unknown problem '" + w + "'");
      have_problem = true;
    } else if (key == "generator") {
      const std::string w = as_word(key, v);
      if (w != "sc-boundary" && w != "indefinite" && w != "polytope") {
        throw ConfigError("unknown generator '" + w + "' (sc-boundary, indefinite, polytope)");
      }
      cfg.generator = w;
    } else if (key == "seed") {
      const std::int64_t s = as_int(key, v);
      if (s < 0) throw ConfigError("'seed' must be nonnegative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "n") {
      cfg.n = as_count(key, v, 2);
    } else if (key == "dim") {
      cfg.dim = as_count(key, v, 2);
    } else if (key == "face_size") {
      cfg.face_size = as_count(key, v, 1);
    } else if (key == "other_atoms") {
      cfg.other_atoms = as_count(key, v, 1);
    } else if (key == "Q") {
      cfg.Q = as_rows(key, v);
    } else if (key == "b") {
      cfg.b = as_vector(key, v);
    } else if (key == "c") {
      cfg.c = as_vector(key, v);
    } else if (key == "L") {
      cfg.lipschitz = as_real(key, v);
      if (!(*cfg.lipschitz > 0.0)) throw ConfigError("'L' must be positive");
    } else if (key == "atoms") {
      cfg.atoms = as_rows(key, v).transpose();
    } else if (key == "algorithm") {
      const std::string w = as_word(key, v);
      if (w == "AFW") cfg.algorithm = Algorithm::AFW;
      else if (w == "FW") cfg.algorithm = Algorithm::FW;
      else throw ConfigError("unknown algorithm '" + w + "' (FW, AFW)");
    } else if (key == "stepsize") {
      const std::string w = as_word(key, v);
      if (w == "lipschitz") cfg.rule = StepRule::Lipschitz;
      else if (w == "linesearch") cfg.rule = StepRule::Linesearch;
      else throw ConfigError("unknown stepsize '" + w + "' (lipschitz, linesearch)");
    } else if (key == "x0") {
      if (v.is_array()) {
        cfg.x0.kind = StartSpec::Kind::Weights;
        cfg.x0.weights = as_vector(key, v);
      } else {
        const std::string w = as_word(key, v);
        if (w == "barycenter") {
          cfg.x0.kind = StartSpec::Kind::Barycenter;
        } else if (w.rfind("vertex:", 0) == 0) {
          cfg.x0.kind = StartSpec::Kind::Vertex;
          try {
            std::size_t used = 0;
            const long long i = std::stoll(w.substr(7), &used);
            if (used != w.size() - 7 || i < 0) throw std::invalid_argument("index");
            cfg.x0.vertex = static_cast<Index>(i);
          } catch (const std::exception&) {
            throw ConfigError("'x0' vertex index must be a nonnegative integer");
          }
        } else {
          throw ConfigError("'x0' must be barycenter, vertex:<i>, or an array of weights");
        }
      }
    } else if (key == "gap_tol") {
      cfg.gap_tol = as_real(key, v);
      if (cfg.gap_tol < 0.0) throw ConfigError("'gap_tol' must be nonnegative");
    } else if (key == "max_iters") {
      cfg.max_iters = as_int(key, v);
      if (cfg.max_iters < 0) throw ConfigError("'max_iters' must be nonnegative");
    } else if (key == "zero_tol") {
      cfg.zero_tol = as_real(key, v);
      if (!(cfg.zero_tol >= 0.0)) throw ConfigError("'zero_tol' must be nonnegative");
    } else if (key == "reference") {
      const Matrix pts = as_rows(key, v);
      for (Index r = 0; r < pts.rows(); ++r) cfg.reference.emplace_back(pts.row(r).transpose());
    } else if (key == "reference_y") {
      cfg.reference_y = as_vector(key, v);
    } else if (key == "f_star") {
      cfg.f_star = as_real(key, v);
    } else if (key == "output") {
      cfg.output = as_word(key, v);
    } else if (key == "q") {
      cfg.q = as_real(key, v);
    } else if (key == "theta") {
      cfg.theta = as_real(key, v);
    } else if (key == "p") {
      cfg.p = as_real(key, v);
    } else if (key == "tau") {
      cfg.tau = as_real(key, v);
    } else if (key == "f_min") {
      cfg.f_min = as_real(key, v);
    } else if (key == "u") {
      cfg.u = as_real(key, v);
    } else if (key == "q_eps") {
      cfg.q_eps = as_int(key, v);
      if (*cfg.q_eps < 0) throw ConfigError("'q_eps' must be nonnegative");
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (cfg.generator) {
    const ProblemKind implied =
        *cfg.generator == "polytope" ? ProblemKind::PolytopeQuadratic : ProblemKind::Quadratic;
    if (have_problem && cfg.problem != implied) {
      throw ConfigError("generator '" + *cfg.generator + "' conflicts with problem");
    }
    cfg.problem = implied;
    if (*cfg.generator != "polytope" && cfg.n == 0) throw ConfigError("generator needs 'n'");
    if (cfg.Q.size() || cfg.b.size() || cfg.c.size() || cfg.atoms.size()) {
      throw ConfigError("generator problems take no explicit Q, b, c or atoms");
    }
    return cfg;
  }
  if (!have_problem) throw ConfigError("missing 'problem' or 'generator'");
  switch (cfg.problem) {
    case ProblemKind::Linear:
      if (cfg.c.size() == 0) throw ConfigError("linear problem needs 'c'");
      break;
    case ProblemKind::PolytopeQuadratic:
      if (cfg.atoms.size() == 0) throw ConfigError("polytope problem needs 'atoms'");
      [[fallthrough]];
    case ProblemKind::Quadratic:
      if (cfg.Q.size() == 0) throw ConfigError("quadratic problem needs 'Q'");
      if (cfg.b.size() == 0) cfg.b = Vector::Zero(cfg.Q.rows());
      break;
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config '" + path.string() + "'");
  return parse_config(buf.str());
}

}  // namespace afw
