// one line per acceptance criterion; exit status 0 iff all pass
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "gcl/exec.hpp"
#include "gcl/suites.hpp"

using namespace gcl;

namespace {

Scenario fixture(const std::string& name) { return load_scenario(std::string(GCL_DATA_DIR) + "/" + name + ".json"); }

struct Outcome {
  bool pass = true;
  std::string note;
};

void absorb(Outcome& o, const Report& r) {
  for (auto& c : r.checks)
    if (!c.pass) {
      o.pass = false;
      if (o.note.empty()) o.note = c.id + " " + c.witness.dump().substr(0, 300);
    }
}

long count_of(const Report& r, long CheckResult::*field) {
  long n = 0;
  for (auto& c : r.checks) n += std::max(0L, c.*field);
  return n;
}

bool run(int id, const char* what, double limit_s, const std::function<Outcome()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o.pass = false;
    o.note = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || s < limit_s;
  bool ok = o.pass && in_time;
  std::printf("criterion %d: %s  %s  (%.1f s%s)%s%s\n", id, ok ? "PASS" : "FAIL", what, s,
              limit_s > 0 ? (" / " + std::to_string((int)limit_s) + " s").c_str() : "", o.note.empty() ? "" : "  ",
              o.note.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  int jobs = default_jobs();
  bool all = true;

  all &= run(1, "cdga laws on T^1 and T^2, >= 100 forms per law", 30, [&] {
    Outcome o;
    SuiteOptions so;
    so.jobs = jobs;
    long least = 1L << 40;
    for (int m : {1, 2}) {
      Report r = cdga_suite(torus_model(m), so);
      absorb(o, r);
      for (auto& c : r.checks) least = std::min(least, c.count);
    }
    if (least < 100) o.pass = false, o.note = "fewer than 100 forms for some law";
    return o;
  });

  all &= run(2, "gerbe checks on NCT(3), Z2, Z2^2, T^1-Z2", 30, [&] {
    Outcome o;
    for (auto n : {"nct3", "point_z2", "z2z2", "t1z2"}) {
      Scenario s = fixture(n);
      SuiteOptions so = options_for(s);
      so.jobs = jobs;
      absorb(o, gerbe_suite(s, so));
    }
    return o;
  });

  all &= run(3, "vartheta/Theta compatibility, curvature, integrated Theta (k <= 3)", 120, [&] {
    Outcome o;
    for (auto n : {"t1z2", "nct3"}) {
      Scenario s = fixture(n);
      SuiteOptions so = options_for(s);
      so.jobs = jobs;
      so.max_level = 3;
      absorb(o, bundle_suite(s, so));
    }
    return o;
  });

  all &= run(4, "homological identities on NCT(3), >= 20 samples each", 120, [&] {
    Outcome o;
    Scenario s = fixture("nct3");
    SuiteOptions so = options_for(s);
    so.jobs = jobs;
    so.samples = 20;
    Report r = homological_suite(s, so);
    absorb(o, r);
    for (auto& c : r.checks)
      if (c.count < 20) o.pass = false, o.note = c.id + ": too few samples";
    return o;
  });

  all &= run(5, "JLO chain map, k <= 2, n <= 1 on point/Z2, NCT(3), T^1-Z2", 300, [&] {
    Outcome o;
    long nz = 0;
    for (auto n : {"point_z2", "nct3", "t1z2"}) {
      Scenario s = fixture(n);
      SuiteOptions so = options_for(s);
      so.jobs = jobs;
      so.max_level = 2;
      so.max_arity = 1;
      Report r = jlo_suite(s, so);
      absorb(o, r);
      nz += count_of(r, &CheckResult::nonzero);
    }
    if (o.pass) o.note = std::to_string(nz) + " nonzero instances";
    return o;
  });

  all &= run(6, "composite chain law on NCT(3), n <= 2", 600, [&] {
    Outcome o;
    Scenario s = fixture("nct3");
    SuiteOptions so = options_for(s);
    so.jobs = jobs;
    so.max_arity = 2;
    Report r = composite_suite(s, so);
    absorb(o, r);
    if (o.pass) o.note = std::to_string(count_of(r, &CheckResult::nonzero)) + " nonzero instances";
    return o;
  });

  all &= run(7, "determinism and cap independence", 0, [&] {
    Outcome o;
    Scenario s = fixture("t1z2");
    SuiteOptions so = options_for(s);
    std::string a = run_command("chain-check", s, so).to_json().dump();
    std::string b = run_command("chain-check", s, so).to_json().dump();
    so.jobs = std::max(2, jobs);
    std::string c = run_command("chain-check", s, so).to_json().dump();
    if (a != b || a != c) o.pass = false, o.note = "chain-check reports differ";
    Scenario t = fixture("nct3");
    SuiteOptions to = options_for(t);
    std::string v1 = run_command("verify", t, to).to_json().dump();
    to.jobs = std::max(2, jobs);
    if (v1 != run_command("verify", t, to).to_json().dump()) o.pass = false, o.note = "verify reports differ";
    absorb(o, cap_suite(t, to));
    absorb(o, cap_suite(s, so));
    return o;
  });

  return all ? 0 : 1;
}
