#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcl/gerbe.hpp"
#include "gcl/homological.hpp"

namespace gcl {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "gcl 0.3.0";

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Truncation {
  int max_level = 3;
  int max_cyclic_arity = 2;
  int exp_order_cap = -1;  // < 0: degree bound
};

struct Scenario {
  std::string name;
  Model md;
  GerbeDatum d;
  Truncation trunc;
  std::uint64_t seed = 1;
  std::string digest;  // of the canonical scenario json
};

// scalars: {"N", "num": [..], "den"} in the power basis; input also takes ints and "p/q"
json scalar_json(const CycScalar& c);
CycScalar parse_scalar(const json& j, int N);
json uscalar_json(const UScalar& u);
// forms: list of {freq, t_exps, dx_set, dt_set, coeff}, index sets 1-based
json form_json(const Form& f);
Form parse_form(const json& j, int dim, int level, int N);
json conv_json(const ConvSection& c, const GroupData& G);
ConvSection parse_conv(const json& j, const Model& md);

json scenario_json(const Scenario& s);
// schema check, model validation and verify_gerbe; throws ScenarioError
Scenario parse_scenario(const json& j, const std::string& origin = "<json>");
Scenario load_scenario(const std::string& path);

std::string digest_of(const std::string& bytes);

struct CheckResult {
  std::string id;
  bool pass = true;
  long count = 0;     // instances checked
  long nonzero = -1;  // instances with a nonzero side, when meaningful
  json witness;       // null unless failed
  json values;        // optional payload (pair, dd)
  double wall_ms = 0;
};

struct Report {
  std::string suite;
  std::string digest;
  std::vector<CheckResult> checks;

  bool pass() const;
  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void merge(const Report& o);
  // checks sorted by id; wall times only on request (they break byte identity)
  json to_json(bool timings = false) const;
  std::string summary() const;
};

}  // namespace gcl
