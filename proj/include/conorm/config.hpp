#pragma once

// Job configuration documents (JSON) for the command-line tool.
//
//   {
//     "group":  {"preset": "GL4"}
//            or {"rank": 2, "roots": [[1,-1],[-1,1]], "coroots": [...], "simple": [0]},
//     "action": {"preset": "outer-SO"}
//            or {"group": {"cyclic": 2} | {"symmetric3": true} | {"table": [[...]]},
//                "diagrams": [matrix, ...], "twists": [{"num": [...], "den": 2}, ...]},
//     "frobenius": {"q": 3, "tau": matrix, "source_tau": matrix},
//     "qs": [2, 3], "normal_subgroup": [0, 2], "points": [{"num": [...], "den": 3}],
//     "isogeny": "SL2-PGL2", "product": {"r": 2, "m": 1}, "trivial_order": 2
//   }
//
// Matrices are row-major arrays.  Errors carry the JSON pointer of the
// offending value.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "conorm/classes.hpp"
#include "conorm/error.hpp"

namespace conorm {

class ConfigError : public Error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : Error((path.empty() ? std::string("/") : path) + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ExplicitDatum {
  std::size_t rank = 0;
  std::vector<Vec> roots;
  std::vector<Vec> coroots;
  std::optional<std::vector<std::size_t>> simple;
};

struct GroupSpec {
  std::optional<std::string> preset;
  std::optional<ExplicitDatum> datum;
};

struct FiniteGroupSpec {
  std::string kind = "trivial";  // trivial | cyclic | symmetric3 | table
  std::size_t order = 1;
  std::vector<std::vector<std::size_t>> table;
};

struct ActionSpec {
  std::optional<std::string> preset;
  FiniteGroupSpec group;
  std::vector<std::vector<Vec>> diagrams;  // row-major
  std::vector<TorsionVector> twists;
};

struct FrobeniusSpec {
  std::int64_t q = 0;
  std::optional<std::vector<Vec>> tau;
  std::optional<std::vector<Vec>> source_tau;
};

struct JobConfig {
  GroupSpec group;
  std::optional<ActionSpec> action;
  std::optional<FrobeniusSpec> frobenius;
  std::vector<std::int64_t> qs;
  std::optional<std::vector<std::size_t>> normal_subgroup;
  std::vector<TorsionVector> points;
  std::optional<std::string> isogeny;
  std::optional<std::pair<std::size_t, std::size_t>> product;
  std::optional<std::size_t> trivial_order;
};

/// Throws ConfigError with the JSON pointer of the first problem.
JobConfig parse_config(const nlohmann::json& doc);
/// Parses text; syntax errors report the byte offset.
JobConfig parse_config_text(const std::string& text);
nlohmann::json to_json(const JobConfig& c);

nlohmann::json torsion_to_json(const TorsionVector& t);
TorsionVector torsion_from_json(const nlohmann::json& j, const std::string& path = "");
/// "0,0,1/3,2/3" -> torsion vector.
TorsionVector parse_point(const std::string& text);

/// Objects described by a configuration; ConfigError on validation failure.
BasedRootDatum resolve_group(const JobConfig& c);
/// The configured action, or the trivial action of order 1.
GammaAction resolve_action(const JobConfig& c);
/// Frobenius on a torus of the given rank; `source` picks source_tau.
FrobeniusStructure resolve_frobenius(const JobConfig& c, std::size_t rank, bool source = false);

}  // namespace conorm
