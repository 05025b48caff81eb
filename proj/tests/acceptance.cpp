// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "gravgauge/verify.hpp"

namespace gg = gravgauge;

namespace {

const std::vector<std::string> kSpacetimes = {"minkowski", "sphere2", "schwarzschild", "desitter"};
constexpr double kRoundTripSeconds = 5.0;
constexpr double kAllSuitesSeconds = 300.0;

std::string strip_runtime(const std::string& s) {
  return std::regex_replace(s, std::regex("\"runtime_ms\": [^,}]*"), "\"runtime_ms\": 0");
}

const gg::CheckRecord* find(const gg::Report& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.check_id == id) return &c;
  return nullptr;
}

bool report_line(int k, bool pass, const std::string& title, const std::string& detail) {
  std::printf("CRITERION %d %s %s%s%s\n", k, pass ? "PASS" : "FAIL", title.c_str(), detail.empty() ? "" : ": ",
              detail.c_str());
  return pass;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Every listed check is present and passes on all four spacetimes.
Outcome evaluate(const std::vector<std::string>& checks, const std::map<std::string, gg::Report>& reports) {
  Outcome o;
  for (const auto& name : kSpacetimes) {
    const auto& r = reports.at(name);
    for (const auto& id : checks) {
      const auto* rec = find(r, id);
      if (!rec) {
        o.pass = false;
        o.detail += name + "/" + id + " missing; ";
      } else if (!rec->pass) {
        o.pass = false;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s/%s residual %.3e tol %.1e; ", name.c_str(), id.c_str(), rec->residual,
                      rec->tolerance);
        o.detail += buf;
      }
    }
  }
  return o;
}

bool report_checks(int k, const std::string& title, const std::vector<std::string>& checks,
                   const std::map<std::string, gg::Report>& reports) {
  const Outcome o = evaluate(checks, reports);
  return report_line(k, o.pass, title, o.pass ? "all checks within tolerance" : o.detail);
}

}  // namespace

int main() {
  std::map<std::string, gg::Report> reports;
  std::map<std::string, std::string> json;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& name : kSpacetimes) {
    gg::SuiteConfig cfg;
    cfg.spacetime = name;
    cfg.suite = "all";
    reports[name] = gg::run(cfg);
    json[name] = strip_runtime(gg::to_json(reports[name]));
  }
  const double all_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool ok = true;

  {
    bool pass = true;
    double slowest = 0.0;
    for (const auto& name : kSpacetimes) {
      const auto* rec = find(reports[name], "correspondence.round_trip");
      pass = pass && rec && rec->pass && rec->runtime_ms <= 1000.0 * kRoundTripSeconds;
      if (rec) slowest = std::max(slowest, rec->runtime_ms);
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "slowest %.0f ms, limit %.0f ms", slowest, 1000.0 * kRoundTripSeconds);
    ok &= report_line(1, pass, "metric/vielbein round trip", buf);
  }

  ok &= report_checks(2, "rotation invariance of the induced metric and connection",
                      {"gauge.rotation_invariance", "gauge.rotation_inhomogeneous_term"}, reports);
  ok &= report_checks(3, "translation base-point shift and non-normality witness",
                      {"gauge.translation_basepoint_shift", "gauge.non_normality_witness"}, reports);
  ok &= report_checks(4, "Spencer map rank, inverse and round trips",
                      {"spencer.matrix_rank", "spencer.contorsion_vs_solve", "spencer.round_trip",
                       "spencer.from_torsion_round_trip", "spencer.reference_independence"},
                      reports);

  {
    const Outcome base = evaluate({"curvature.torsion_pullback", "curvature.riemann_pullback"}, reports);
    bool pass = base.pass;
    const auto* sc = find(reports["sphere2"], "curvature.sphere_scalar");
    const auto* vr = find(reports["schwarzschild"], "curvature.vacuum_ricci");
    pass = pass && sc && sc->pass && vr && vr->pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, "sphere |Scal-2| %.3e, Schwarzschild |Ric| %.3e", sc ? sc->residual : -1.0,
                  vr ? vr->residual : -1.0);
    ok &= report_line(5, pass, "curvature pullbacks, sphere scalar, Schwarzschild Ricci",
                      base.pass ? std::string(buf) : buf + std::string("; ") + base.detail);
  }

  {
    const Outcome base = evaluate(
        {"pseudotranslation.main3_ii", "pseudotranslation.convergence_order", "pseudotranslation.main3_i"}, reports);
    bool pass = base.pass;
    const auto* br = find(reports["sphere2"], "pseudotranslation.bracket");
    pass = pass && br && br->pass;
    double order = 1e300;
    for (const auto& name : kSpacetimes)
      if (const auto* c = find(reports[name], "pseudotranslation.convergence_order")) order = std::min(order, c->residual);
    char buf[160];
    std::snprintf(buf, sizeof buf, "min order %.2f, sphere bracket %.3e", order, br ? br->residual : -1.0);
    ok &= report_line(6, pass, "pseudo-translation correspondence, rotation commutation, bracket",
                      base.pass ? std::string(buf) : buf + std::string("; ") + base.detail);
  }

  {
    const auto& r = reports["sphere2"];
    const auto* ft = find(r, "pseudotranslation.flow_torsion");
    const auto* fs = find(r, "pseudotranslation.flow_skewness");
    const auto* fh = find(r, "pseudotranslation.flow_step_halving");
    const bool pass = ft && fs && fh && ft->pass && fs->pass && fh->pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, "torsion %.3e, skewness %.3e, step halving %.3e", ft ? ft->residual : -1.0,
                  fs ? fs->residual : -1.0, fh ? fh->residual : -1.0);
    ok &= report_line(7, pass, "flow preserves torsion-free fields", buf);
  }

  ok &= report_checks(8, "Palatini density, rotation invariance, action variation",
                      {"palatini.hilbert_equality", "palatini.rotation_invariance",
                       "palatini.pseudo_translation_variation"},
                      reports);

  {
    bool same = true;
    for (const auto& name : kSpacetimes) {
      gg::SuiteConfig cfg;
      cfg.spacetime = name;
      cfg.suite = "all";
      same = same && strip_runtime(gg::to_json(gg::run(cfg))) == json[name];
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "reports %s across runs; all suites on four spacetimes in %.1f s (limit %.0f s)",
                  same ? "identical" : "differ", all_seconds, kAllSuitesSeconds);
    ok &= report_line(9, same && all_seconds <= kAllSuitesSeconds, "determinism and runtime", buf);
  }
  return ok ? 0 : 1;
}
