#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gcl/suites.hpp"

using namespace gcl;

int main(int argc, char** argv) {
  CLI::App app{"gcl: exact checks for gerbe-twisted cyclic cocycles on torus orbifold models"};
  app.require_subcommand(1, 1);

  std::string scenario_path, out_path, args_path;
  std::uint64_t seed = 0;
  int max_level = -1, max_arity = -1, jobs = 1, samples = 20;
  bool timings = false;

  for (const char* name : {"verify", "dd", "chain-check", "pair", "all"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("scenario", scenario_path, "scenario json")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "write the report here");
    sub->add_option("--seed", seed, "sampling seed (default: the scenario's)");
    sub->add_option("--max-level", max_level, "simplex level cap")->check(CLI::Range(0, 6));
    sub->add_option("--max-arity", max_arity, "cyclic arity cap")->check(CLI::Range(0, 4));
    sub->add_option("--jobs", jobs, "OpenMP threads; 1 = serial reference")->check(CLI::Range(1, 256));
    sub->add_option("--samples", samples, "samples per law")->check(CLI::Range(20, 100000));
    sub->add_option("--args", args_path, "argument tuples for pair")->check(CLI::ExistingFile);
    sub->add_flag("--timings", timings, "add wall times (reports stop being byte-stable)");
  }
  CLI11_PARSE(app, argc, argv);
  std::string cmd = app.get_subcommands().front()->get_name();

  try {
    Scenario s = load_scenario(scenario_path);
    SuiteOptions o = options_for(s);
    if (seed) o.seed = seed;
    if (max_level >= 0) o.max_level = max_level;
    if (max_arity >= 0) o.max_arity = max_arity;
    o.jobs = jobs;
    o.samples = samples;

    json args;
    if (!args_path.empty()) {
      std::ifstream in(args_path);
      try {
        args = json::parse(in);
      } catch (const json::exception& e) {
        throw ScenarioError(args_path + ": " + e.what());
      }
    }
    if (cmd == "pair" && args.is_null()) throw ScenarioError("pair needs --args");

    Report r = run_command(cmd, s, o, args.is_null() ? nullptr : &args);
    std::string text = r.to_json(timings).dump(2) + "\n";
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + out_path);
      f << text;
    } else {
      std::cout << text;
    }
    std::cerr << r.summary();
    return r.pass() ? 0 : 1;
  } catch (const ScenarioError& e) {
    std::cerr << "gcl: scenario error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gcl: " << e.what() << "\n";
    return 3;
  }
}
