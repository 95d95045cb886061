#pragma once

#include <string>

#include "gcl/jlo.hpp"
#include "gcl/scenario.hpp"

namespace gcl {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int max_level = 3;  // simplex levels for compatibility and curvature checks
  int max_arity = 2;  // largest n for cyclic cochains on conv arguments
  int jobs = 1;
  int samples = 20;   // per law / per sampled family
  int exp_cap = -1;
};

SuiteOptions options_for(const Scenario& s);

// flat torus T^m with the trivial group, for the form-level laws
Model torus_model(int m);

Report cdga_suite(const Model& md, const SuiteOptions& o);
Report gerbe_suite(const Scenario& s, const SuiteOptions& o);
Report bundle_suite(const Scenario& s, const SuiteOptions& o);
Report homological_suite(const Scenario& s, const SuiteOptions& o);
Report jlo_suite(const Scenario& s, const SuiteOptions& o);
Report composite_suite(const Scenario& s, const SuiteOptions& o);
// raising exp_cap, max_level and the composite truncation leaves sampled values unchanged
Report cap_suite(const Scenario& s, const SuiteOptions& o);
Report dd_report(const Scenario& s, const SuiteOptions& o);
// args: {"schema_version", "omega": [names], "tuples": [[conv, ..], ..]}
Report pair_report(const Scenario& s, const json& args, const SuiteOptions& o);

// the named compatible test forms: one, inv1, lin, whit1, whit2 and d_<name>
std::vector<std::string> omega_names(const Model& md);
UForm omega_by_name(const Scenario& s, const std::string& name, int max_level, std::uint64_t seed);

// verify | dd | chain-check | pair | all
Report run_command(const std::string& cmd, const Scenario& s, const SuiteOptions& o, const json* args = nullptr);

}  // namespace gcl
