#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncft/exponent.hpp"
#include "ncft/space.hpp"
#include "ncft/verify.hpp"

namespace ncft::cli {

struct EstimateSpec {
  ConstantEstimate::Kind kind;
  Exponent p;
  OperatorSpaceDesc space;
};

struct MinkowskiSpec {
  Exponent p1;
  Exponent p2;
};

/// Grid for `ncft suite`. Group checks run for every group; the Hölder and
/// Minkowski checks are group-independent and run once.
struct SuiteConfig {
  std::vector<std::string> groups;
  int trials = 100;
  std::uint64_t seed = 0;
  std::vector<OperatorSpaceDesc> plancherel_spaces;
  std::vector<Exponent> hy_exponents;
  std::vector<OperatorSpaceDesc> hy_spaces;
  std::vector<OperatorSpaceDesc> linf_spaces;
  std::vector<Exponent> holder_exponents;
  std::vector<MinkowskiSpec> minkowski;
  std::vector<EstimateSpec> estimates;
  int level = 2;
  int budget = 32;
};

/// The acceptance grid on {Z4, S3, D4, Q8}.
SuiteConfig default_suite_config();
/// Missing keys keep their defaults; "groups": [] yields an empty run.
/// Throws PreconditionFailed for exponents outside a check's range.
SuiteConfig suite_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SuiteConfig& c);

struct SuiteReport {
  nlohmann::json results = nlohmann::json::array();
  std::vector<ConstantEstimate> estimates;
  BoundReport bounds;
  int violated = 0;

  bool ok() const { return violated == 0 && !bounds.any_flagged(); }
};

SuiteReport suite_all(const SuiteConfig& config);

/// group,kind,p,E,level,value,theorem_upper
std::string estimates_csv(const std::vector<ConstantEstimate>& estimates);

}  // namespace ncft::cli
