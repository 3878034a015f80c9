// Acceptance suite: runs the full verification battery at its pinned
// parameters (beta in {0.1, 1, 5}, entropy grid up to beta = 20, seed 42,
// 1e6 draws per Monte Carlo batch, truncations s_max = 40 / M = 2000) and
// prints one pass/fail line per criterion group, including the runtime
// budget where one applies. Exit code 0 iff every gating row passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "planckian/verification.hpp"

int main() {
  using namespace planckian;

  verify::VerifyConfig cfg;  // defaults are the pinned acceptance parameters
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = verify::run_verification(cfg);
  const double total_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();

  struct GroupStats {
    int rows = 0;
    int failed = 0;
    double worst_residual = 0.0;
    double elapsed_ms = 0.0;
    bool has_informational = false;
  };
  std::map<std::string, GroupStats> stats;
  for (const auto& r : report.records) {
    auto& g = stats[r.group];
    g.elapsed_ms += r.elapsed_ms;
    if (!r.gating) {
      g.has_informational = true;
      continue;
    }
    ++g.rows;
    if (!r.pass) ++g.failed;
    g.worst_residual = std::max(g.worst_residual, r.residual);
  }

  struct Criterion {
    const char* group;
    double runtime_limit_ms;  // 0 = no budget
  };
  const std::vector<Criterion> criteria{
      {"cf-factorization", 5000.0},  {"dyadic-events", 1000.0},
      {"entropy-additivity", 1000.0}, {"fluctuation-identities", 1000.0},
      {"thermo-consistency", 1000.0}, {"monte-carlo", 30000.0},
      {"zero-point", 0.0},            {"kinetic-equilibrium", 60000.0},
      {"spectral-laws", 0.0},         {"dark-variance-audit", 0.0},
  };

  bool all_pass = true;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto it = stats.find(c.group);
    bool ok = it != stats.end() && it->second.rows > 0 &&
              it->second.failed == 0;
    std::string note;
    if (it != stats.end() && c.runtime_limit_ms > 0.0) {
      if (it->second.elapsed_ms > c.runtime_limit_ms) {
        ok = false;
        note = " RUNTIME OVER BUDGET";
      }
    }
    // The audit criterion additionally requires the informational row.
    if (std::string(c.group) == "dark-variance-audit" &&
        (it == stats.end() || !it->second.has_informational)) {
      ok = false;
      note += " MISSING INFORMATIONAL ROW";
    }
    if (it == stats.end()) {
      std::printf("[FAIL] %02d %-24s no records\n", index, c.group);
      all_pass = false;
      continue;
    }
    const auto& g = it->second;
    std::string budget;
    if (c.runtime_limit_ms > 0.0) {
      budget = "  (budget " +
               std::to_string(static_cast<int>(c.runtime_limit_ms / 1000.0)) +
               " s)";
    }
    std::printf(
        "[%s] %02d %-24s rows %3d  failed %d  worst residual %.3e  "
        "%7.1f ms%s%s\n",
        ok ? "PASS" : "FAIL", index, c.group, g.rows, g.failed,
        g.worst_residual, g.elapsed_ms, budget.c_str(), note.c_str());
    all_pass = all_pass && ok;
  }

  std::printf("----\nseed %llu, %zu records, %.1f s total: %s\n",
              static_cast<unsigned long long>(report.seed),
              report.records.size(), total_ms / 1000.0,
              all_pass && report.overall_pass() ? "ACCEPTED" : "REJECTED");
  return all_pass && report.overall_pass() ? 0 : 1;
}
