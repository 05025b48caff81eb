#pragma once

// Verification suites over one catalog spacetime and the report they produce.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "gravgauge/catalog.hpp"
#include "gravgauge/palatini.hpp"
#include "gravgauge/random.hpp"

namespace gravgauge {

inline constexpr const char* kVersion = "1.0.0";

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"correspondence", "gauge", "spencer", "pseudotranslation",
                                                 "palatini", "all"};
  return names;
}

struct SuiteConfig {
  std::string spacetime = "sphere2";
  std::string suite = "all";
  int grid_n = 9;
  double fd_step = 1e-3;
  double tol = 1e-5;  // pseudo-translation correspondence tolerance
  std::uint64_t seed = 1;
  std::string report_path = "report.json";
};

/// Throws InvalidArgument on an invalid configuration.
inline void validate(const SuiteConfig& c) {
  if (catalog_dimension(c.spacetime) == 0) throw InvalidArgument("unknown spacetime '" + c.spacetime + "'");
  bool known = false;
  for (const auto& s : suite_names()) known = known || s == c.suite;
  if (!known) throw InvalidArgument("unknown suite '" + c.suite + "'");
  if (c.grid_n < 5) throw InvalidArgument("grid_n must be >= 5");
  if (!(c.fd_step > 0.0)) throw InvalidArgument("fd_step must be > 0");
  if (!(c.tol > 0.0)) throw InvalidArgument("tol must be > 0");
}

/// How a residual is compared with its tolerance.
enum class Compare { at_most, at_least, above };

struct CheckRecord {
  std::string check_id;
  std::string paper_ref;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
};

struct Report {
  SuiteConfig config;
  std::vector<CheckRecord> checks;

  int passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
  }
  int failed() const { return static_cast<int>(checks.size()) - passed(); }
  bool all_pass() const { return failed() == 0; }
};

inline bool compare(double residual, double tol, Compare cmp) {
  if (!std::isfinite(residual)) return false;
  switch (cmp) {
    case Compare::at_most:
      return residual <= tol;
    case Compare::at_least:
      return residual >= tol;
    case Compare::above:
      return residual > tol;
  }
  return false;
}

inline std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

/// JSON with every real printed as %.16e.
inline std::string to_json(const Report& r) {
  using nlohmann::json;
  auto str = [](const std::string& s) { return json(s).dump(); };
  std::string out = "{\n";
  out += "  \"version\": " + str(kVersion) + ",\n";
  const auto& c = r.config;
  out += "  \"config\": {\n";
  out += "    \"spacetime\": " + str(c.spacetime) + ",\n";
  out += "    \"suite\": " + str(c.suite) + ",\n";
  out += "    \"grid_n\": " + std::to_string(c.grid_n) + ",\n";
  out += "    \"fd_step\": " + format_number(c.fd_step) + ",\n";
  out += "    \"tol\": " + format_number(c.tol) + ",\n";
  out += "    \"seed\": " + std::to_string(c.seed) + ",\n";
  out += "    \"report_path\": " + str(c.report_path) + "\n";
  out += "  },\n";
  out += "  \"checks\": [";
  for (std::size_t k = 0; k < r.checks.size(); ++k) {
    const auto& ch = r.checks[k];
    out += k == 0 ? "\n" : ",\n";
    out += "    {\"check_id\": " + str(ch.check_id) + ", \"paper_ref\": " + str(ch.paper_ref) +
           ", \"status\": " + str(ch.pass ? "pass" : "fail") + ", \"residual\": " + format_number(ch.residual) +
           ", \"tolerance\": " + format_number(ch.tolerance) + ", \"runtime_ms\": " + format_number(ch.runtime_ms) +
           "}";
  }
  out += r.checks.empty() ? "],\n" : "\n  ],\n";
  out += "  \"summary\": {\"total\": " + std::to_string(r.checks.size()) + ", \"passed\": " +
         std::to_string(r.passed()) + ", \"failed\": " + std::to_string(r.failed()) + "}\n";
  out += "}\n";
  return out;
}

inline void write_report(const Report& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open report file '" + path + "'");
  f << to_json(r);
  if (!f) throw InvalidArgument("failed writing report file '" + path + "'");
}

/// Runs checks and records them; an exception inside a check is a failure with a null residual.
class CheckRunner {
 public:
  explicit CheckRunner(std::vector<CheckRecord>& out) : out_(out) {}

  void run(const std::string& id, const std::string& ref, double tol, const std::function<double()>& body,
           Compare cmp = Compare::at_most) {
    const auto t0 = std::chrono::steady_clock::now();
    double residual;
    try {
      residual = body();
    } catch (const std::exception&) {
      residual = std::numeric_limits<double>::quiet_NaN();
    }
    const auto t1 = std::chrono::steady_clock::now();
    out_.push_back(CheckRecord{id, ref, compare(residual, tol, cmp), residual, tol,
                               std::chrono::duration<double, std::milli>(t1 - t0).count()});
  }

 private:
  std::vector<CheckRecord>& out_;
};

/// Per-suite context shared by the checks of one spacetime.
template <int N>
struct SuiteContext {
  CatalogEntry<N> entry;
  SuiteConfig config;
  Differentiator<N> d;
  AffineGaugeField<N> lc;  // the entry's vielbein with its Levi-Civita connection

  explicit SuiteContext(const CatalogEntry<N>& e, const SuiteConfig& c)
      : entry(e), config(c), d(e.chart, c.fd_step), lc(levi_civita_gauge_field(e.vielbein, d)) {}

  /// Full grid for closed-form checks.
  std::vector<Point<N>> grid() const { return entry.chart.sample_grid(config.grid_n); }
  /// Coarser grid for checks with nested derivatives; in four dimensions each extra point
  /// costs milliseconds.
  std::vector<Point<N>> nested_grid() const { return entry.chart.sample_grid(config.grid_n); }
  /// Seeded generator per check so that checks do not depend on each other's draws.
  Rng rng(std::uint64_t salt) const { return Rng(config.seed * 1000003ULL + salt); }
};

template <int N>
double sup_metric_and_connection_diff(const GravField<N>& a, const GravField<N>& b,
                                      const std::vector<Point<N>>& sample) {
  double r = 0.0;
  for (const auto& p : sample)
    r = std::max({r, max_abs_diff(a.g(p), b.g(p)), max_abs_diff(a.gamma_coord(p), b.gamma_coord(p))});
  return r;
}

/// Rotation by angle x^0 in the last two frame directions (a spatial plane for Lorentzian
/// signature): used as the documented instance of the non-normality witness.
template <int N>
RotationField<N> coordinate_angle_rotation(const Chart<N>& chart, const SignatureMetric<N>& sig) {
  auto make = [](double sign) {
    return Field<N, 2>(
        [sign](const Point<N>& p) {
          Tensor<N, 2> h = identity_tensor<N>();
          const double c = std::cos(p[0]), s = sign * std::sin(p[0]);
          h(N - 2, N - 2) = c;
          h(N - 2, N - 1) = -s;
          h(N - 1, N - 2) = s;
          h(N - 1, N - 1) = c;
          return h;
        },
        {});
  };
  return make_rotation<N>(chart, sig, make(1.0), make(-1.0));
}

template <int N>
void correspondence_suite(const SuiteContext<N>& cx, CheckRunner& run) {
  const auto& e = cx.entry;
  const auto& d = cx.d;
  run.run("correspondence.metric_from_vielbein", "metric eta(L, L) of the catalog vielbein equals the closed-form metric",
          1e-10, [&] {
            const Field<N, 2> g = metric_from_vielbein(e.vielbein);
            double r = 0.0;
            for (const auto& p : cx.grid()) r = std::max(r, max_abs_diff(g(p), e.metric.g(p)));
            return r;
          });
  run.run("correspondence.signature", "metric signature equals (p,q) at every sample point (count of mismatches)", 0.0,
          [&] {
            const Field<N, 2> g = metric_from_vielbein(e.vielbein);
            double bad = 0.0;
            for (const auto& p : cx.grid())
              if (signature_of<N>(g(p)) != std::make_pair(e.signature.p, e.signature.q)) bad += 1.0;
            return bad;
          });
  run.run("correspondence.round_trip",
          "vielbein to metric to vielbein up to rotation to metric reproduces g; the two frames differ by an isometry",
          1e-8, [&] {
            const Field<N, 2> g = metric_from_vielbein(e.vielbein);
            const Vielbein<N> v2 = frame_from_metric(g, e.signature);
            const Field<N, 2> g2 = metric_from_vielbein(v2);
            double r = 0.0;
            for (const auto& p : cx.grid()) {
              r = std::max(r, max_abs_diff(g2(p), g(p)));
              const Tensor<N, 2> h = matmul<N>(v2.theta(p), e.vielbein.e_inv(p));
              const Tensor<N, 2> hi = matmul<N>(e.vielbein.theta(p), v2.e_inv(p));
              r = std::max(r, isometry_residual<N>(h, hi, e.signature));
            }
            return r;
          });
  run.run("correspondence.metric_compatibility", "the induced connection is metric for g (Levi-Civita gauge field)",
          1e-8, [&] { return metric_compatibility_sup(iota(cx.lc, d), d, cx.nested_grid()); });
  run.run("correspondence.metric_compatibility_random",
          "the induced connection is metric for g (random eta-skew connection)", 1e-8, [&] {
            Rng rng = cx.rng(11);
            const auto a = make_gauge_field<N>(e.chart, e.vielbein, random_connection<N>(rng, e.chart, e.signature));
            return metric_compatibility_sup(iota(a, d), d, cx.nested_grid());
          });
  run.run("correspondence.surjectivity",
          "a gauge field built from (g, Levi-Civita) by the eigen-frame maps back onto (g, Levi-Civita)", 1e-8, [&] {
            const GravField<N> gf{e.metric.g, oracle::christoffel_field(e.metric, d), e.signature};
            const AffineGaugeField<N> a = gauge_field_from_grav(gf, d);
            return sup_metric_and_connection_diff(iota(a, d), gf, cx.nested_grid());
          });
  run.run("curvature.torsion_pullback",
          "pullback of the frame torsion equals the torsion of the induced connection (random torsion)", 1e-6, [&] {
            Rng rng = cx.rng(12);
            const auto a = from_torsion(e.vielbein, random_torsion<N>(rng, e.chart, 2, 0.5), d);
            const GravField<N> gf = iota(a, d);
            const Field<N, 3> tl = pullback_torsion(a, torsion(a, d));
            double r = 0.0;
            for (const auto& p : cx.nested_grid())
              r = std::max(r, max_abs_diff(tl(p), oracle::torsion_of_connection<N>(gf.gamma_coord(p))));
            return r;
          });
  run.run("curvature.riemann_pullback",
          "pullback of the frame curvature equals the Riemann tensor of the induced connection", 1e-6, [&] {
            const GravField<N> gf = iota(cx.lc, d);
            const Field<N, 4> rl = pullback_curvature(cx.lc, curvature(cx.lc, d));
            double r = 0.0;
            for (const auto& p : cx.nested_grid())
              r = std::max(r, max_abs_diff(rl(p), oracle::riemann_of_connection(gf.gamma_coord, d, p)));
            return r;
          });
  run.run("curvature.levi_civita_torsion", "the Levi-Civita gauge field has vanishing torsion", 1e-8, [&] {
    const TorsionField<N> t = torsion(cx.lc, d);
    double r = 0.0;
    for (const auto& p : cx.nested_grid()) r = std::max(r, max_abs(t.t(p)));
    return r;
  });
  run.run("curvature.symmetries", "curvature is antisymmetric in its form slots and eta-skew in its endomorphism slots",
          1e-8, [&] {
            const CurvatureField<N> c = curvature(cx.lc, d);
            double r = 0.0;
            for (const auto& p : cx.nested_grid()) r = std::max(r, curvature_symmetry_residual<N>(c.r(p), e.signature));
            return r;
          });
  run.run("curvature.scalar_vs_oracle", "scalar curvature from the frame curvature equals the oracle scalar curvature",
          1e-6, [&] {
            const CurvatureField<N> c = curvature(cx.lc, d);
            double r = 0.0;
            for (const auto& p : cx.nested_grid())
              r = std::max(r, std::abs(frame_scalar<N>(c.r(p), e.signature) - oracle::scalar(e.metric, d, p)));
            return r;
          });
  if (e.name == "sphere2")
    run.run("curvature.sphere_scalar", "unit sphere scalar curvature equals 2", 1e-6, [&] {
      const CurvatureField<N> c = curvature(cx.lc, d);
      double r = 0.0;
      for (const auto& p : cx.grid()) r = std::max(r, std::abs(frame_scalar<N>(c.r(p), e.signature) - 2.0));
      return r;
    });
  if (e.vacuum)
    run.run("curvature.vacuum_ricci", "Ricci contraction of the frame curvature vanishes on a vacuum solution", 1e-6,
            [&] {
              const CurvatureField<N> c = curvature(cx.lc, d);
              double r = 0.0;
              for (const auto& p : cx.nested_grid()) r = std::max(r, max_abs(frame_ricci<N>(c.r(p))));
              return r;
            });
}

template <int N>
void gauge_suite(const SuiteContext<N>& cx, CheckRunner& run) {
  const auto& e = cx.entry;
  const auto& d = cx.d;
  constexpr int kSeededFields = 5;
  double max_dh = 0.0;
  run.run("gauge.rotation_invariance", "rotations leave the induced (g, connection) unchanged, 5 seeded rotations",
          1e-8, [&] {
            Rng rng = cx.rng(21);
            const GravField<N> base = iota(cx.lc, d);
            double r = 0.0;
            for (int k = 0; k < kSeededFields; ++k) {
              const RotationField<N> rot = random_rotation<N>(rng, e.chart, e.signature);
              max_dh = std::max(max_dh, rotation_gradient_norm(rot, d, cx.nested_grid()));
              r = std::max(r, sup_metric_and_connection_diff(iota(act_rotation(rot, cx.lc, d), d), base,
                                                             cx.nested_grid()));
            }
            return r;
          });
  run.run("gauge.rotation_inhomogeneous_term", "largest |d h| among the seeded rotations exceeds 0.1", 0.1,
          [&] { return max_dh; }, Compare::above);
  run.run("gauge.translation_basepoint_shift", "(L - nabla xi) + nabla xi = L, 5 seeded translations", 1e-9, [&] {
    Rng rng = cx.rng(22);
    double r = 0.0;
    for (int k = 0; k < kSeededFields; ++k)
      r = std::max(r, invariance_basepoint_shift(random_translation<N>(rng, e.chart), cx.lc, d, cx.grid()));
    return r;
  });
  run.run("gauge.non_normality_witness",
          "translations are not normalized by rotations: translating a and its rotation gives different metrics", 1e-3,
          [&] {
            const RotationField<N> rot = coordinate_angle_rotation<N>(e.chart, e.signature);
            Tensor<N, 1> xi;
            for (int i = 0; i < N; ++i) xi(i) = 0.1;
            const TranslationField<N> t{constant_field<N, 1>(xi, {IndexKind::frame})};
            const Field<N, 2> g1 = metric_from_vielbein(act_translation(t, cx.lc, d).vielbein);
            const Field<N, 2> g2 = metric_from_vielbein(act_translation(t, act_rotation(rot, cx.lc, d), d).vielbein);
            double r = 0.0;
            for (const auto& p : cx.grid()) r = std::max(r, max_abs_diff(g1(p), g2(p)));
            return r;
          },
          Compare::above);
  run.run("gauge.rotation_covariance", "torsion and curvature transform covariantly under a rotation", 1e-8, [&] {
    Rng rng = cx.rng(23);
    const auto a = from_torsion(e.vielbein, random_torsion<N>(rng, e.chart, 2, 0.5), d);
    const RotationField<N> rot = random_rotation<N>(rng, e.chart, e.signature);
    const auto b = act_rotation(rot, a, d);
    const TorsionField<N> ta = torsion(a, d), tb = torsion(b, d);
    const CurvatureField<N> ra = curvature(a, d), rb = curvature(b, d);
    double r = 0.0;
    for (const auto& p : cx.nested_grid()) {
      const Tensor<N, 2> h = rot.h(p), hi = rot.h_inv(p);
      r = std::max(r, max_abs_diff(tb.t(p), rotate_torsion<N>(ta.t(p), h, hi)));
      r = std::max(r, max_abs_diff(rb.r(p), rotate_curvature<N>(ra.r(p), h, hi)));
    }
    return r;
  });
  run.run("gauge.decomposition", "a composite transformation splits uniquely into rotation then translation", 1e-12,
          [&] {
            Rng rng = cx.rng(24);
            double r = 0.0;
            for (int k = 0; k < kSeededFields; ++k) {
              const RotationField<N> rot = random_rotation<N>(rng, e.chart, e.signature);
              const TranslationField<N> t = random_translation<N>(rng, e.chart);
              const GaugeTransformation<N> f = compose(rot, t);
              for (const auto& p : cx.grid()) {
                const AffinePart<N> part = decompose(f, p);
                r = std::max({r, max_abs_diff(part.h, rot.h(p)), max_abs_diff(part.xi, t.xi(p))});
              }
            }
            return r;
          });
}

/// Applies `f` for n in {2,3,4} and signatures (n,0), (1,n-1), returning the max.
template <class F>
double over_spencer_signatures(F&& f) {
  double r = 0.0;
  r = std::max(r, f(SignatureMetric<2>(2, 0)));
  r = std::max(r, f(SignatureMetric<2>(1, 1)));
  r = std::max(r, f(SignatureMetric<3>(3, 0)));
  r = std::max(r, f(SignatureMetric<3>(1, 2)));
  r = std::max(r, f(SignatureMetric<4>(4, 0)));
  r = std::max(r, f(SignatureMetric<4>(1, 3)));
  return r;
}

inline constexpr int kSpencerSamples = 100;

template <int N>
void spencer_suite(const SuiteContext<N>& cx, CheckRunner& run) {
  const auto& e = cx.entry;
  const auto& d = cx.d;
  run.run("spencer.matrix_rank", "the Spencer matrix has full rank for n = 2, 3, 4 (total kernel dimension)", 0.0,
          [&] {
            return over_spencer_signatures([](const auto& sig) {
              return static_cast<double>(spencer_matrix_report(sig).kernel_dimension);
            });
          });
  run.run("spencer.contorsion_vs_solve", "contorsion formula equals a dense per-point linear solve, 100 torsions",
          1e-12, [&] {
            Rng rng = cx.rng(31);
            return over_spencer_signatures([&rng](const auto& sig) {
              constexpr int M = std::decay_t<decltype(sig)>::kDim;
              double r = 0.0;
              for (int k = 0; k < kSpencerSamples; ++k) {
                const Tensor<M, 3> t = random_torsion_value<M>(rng);
                r = std::max(r, max_abs_diff(spencer_inverse<M>(t, sig), spencer_inverse_by_solve<M>(t, sig)));
              }
              return r;
            });
          });
  run.run("spencer.round_trip", "spencer(spencer_inverse(T)) = T and spencer_inverse(spencer(H)) = H", 1e-12, [&] {
    Rng rng = cx.rng(32);
    return over_spencer_signatures([&rng](const auto& sig) {
      constexpr int M = std::decay_t<decltype(sig)>::kDim;
      double r = 0.0;
      for (int k = 0; k < kSpencerSamples; ++k) {
        const Tensor<M, 3> t = random_torsion_value<M>(rng);
        const Tensor<M, 3> h = random_skew_delta_value<M>(rng, sig);
        r = std::max(r, max_abs_diff(spencer<M>(spencer_inverse<M>(t, sig)), t));
        r = std::max(r, max_abs_diff(spencer_inverse<M>(spencer<M>(h), sig), h));
      }
      return r;
    });
  });
  run.run("spencer.from_torsion_round_trip", "the connection built from (L, T) has torsion T", 1e-8, [&] {
    Rng rng = cx.rng(33);
    const TorsionField<N> t = random_torsion<N>(rng, e.chart, 2, 0.5);
    const TorsionField<N> back = torsion(from_torsion(e.vielbein, t, d), d);
    double r = 0.0;
    for (const auto& p : cx.nested_grid()) r = std::max(r, max_abs_diff(back.t(p), t.t(p)));
    return r;
  });
  run.run("spencer.reference_independence",
          "the connection built from (L, T) does not depend on the reference metric connection", 1e-8, [&] {
            Rng rng = cx.rng(34);
            const TorsionField<N> t = random_torsion<N>(rng, e.chart, 2, 0.5);
            const auto ref = random_connection<N>(rng, e.chart, e.signature);
            const auto a = from_torsion(e.vielbein, t, d);
            const auto b = from_torsion_with_reference(e.vielbein, t, ref, d);
            double r = 0.0;
            for (const auto& p : cx.nested_grid()) r = std::max(r, max_abs_diff(a.conn.gamma(p), b.conn.gamma(p)));
            return r;
          });
}

/// Observed order of the pseudo-translation correspondence residual when the step is halved;
/// NaN when no component rises above rounding noise.
inline constexpr double kConvergenceCoarseStep = 4e-2;
inline constexpr double kConvergenceInset = 0.3;
/// Residuals below this are rounding noise and carry no order information.
inline constexpr double kConvergenceFloor = 1e-10;

template <int N>
double main3_convergence_order(const AffineGaugeField<N>& a, const VectorField<N>& x, int points) {
  const auto sample = a.chart.sample_grid(points, kConvergenceInset);
  const Main3Residuals c = verify_main3_ii(a, x, Differentiator<N>(a.chart, kConvergenceCoarseStep), sample);
  const Main3Residuals f = verify_main3_ii(a, x, Differentiator<N>(a.chart, 0.5 * kConvergenceCoarseStep), sample);
  double order = std::numeric_limits<double>::infinity();
  bool observed = false;
  for (const auto& [coarse, fine] : {std::pair{c.metric, f.metric}, std::pair{c.connection, f.connection}})
    if (coarse > kConvergenceFloor) {
      order = std::min(order, std::log2(coarse / fine));
      observed = true;
    }
  return observed ? order : std::numeric_limits<double>::quiet_NaN();
}

/// The bracket instance X = 0.5 sin(x^1) d_0, X' = d_1.
template <int N>
std::pair<VectorField<N>, VectorField<N>> bracket_instance() {
  auto x = coordinate_vector_field<N>([](const Point<N>& p) {
    Tensor<N, 1> v;
    v(0) = 0.5 * std::sin(p[1]);
    return v;
  });
  auto y = coordinate_vector_field<N>([](const Point<N>&) {
    Tensor<N, 1> v;
    v(1) = 1.0;
    return v;
  });
  return {x, y};
}

inline constexpr double kFlowTime = 0.1;
inline constexpr int kFlowSteps = 10;
inline constexpr double kBracketTime = 1e-2;

template <int N>
void pseudotranslation_suite(const SuiteContext<N>& cx, CheckRunner& run) {
  const auto& e = cx.entry;
  const auto& d = cx.d;
  run.run("pseudotranslation.main3_ii",
          "the projection of tau^(X) equals (L_X g, L_X connection), 3 seeded X on a field with torsion", cx.config.tol,
          [&] {
            Rng rng = cx.rng(41);
            const auto a = from_torsion(e.vielbein, random_torsion<N>(rng, e.chart, 2, 0.5), d);
            double r = 0.0;
            for (int k = 0; k < 3; ++k) {
              const Main3Residuals m = verify_main3_ii(a, random_vector_field<N>(rng, e.chart), d, cx.nested_grid());
              r = std::max({r, m.metric, m.connection});
            }
            return r;
          });
  run.run("pseudotranslation.convergence_order",
          "observed finite-difference order of the correspondence residual under step halving", 3.5,
          [&] {
            Rng rng = cx.rng(42);
            const auto a = from_torsion(e.vielbein, random_torsion<N>(rng, e.chart, 2, 0.5), d);
            return main3_convergence_order(a, random_trig_vector_field<N>(rng, e.chart), N <= 2 ? 5 : 2);
          },
          Compare::at_least);
  run.run("pseudotranslation.main3_i", "tau^(X) commutes with a point-dependent rotation", 1e-6, [&] {
    Rng rng = cx.rng(43);
    const auto a = from_torsion(e.vielbein, random_torsion<N>(rng, e.chart, 2, 0.5), d);
    const RotationField<N> rot = random_rotation<N>(rng, e.chart, e.signature);
    return verify_main3_i(a, random_vector_field<N>(rng, e.chart), rot, d, cx.nested_grid());
  });
  run.run("pseudotranslation.torsion_free_delta",
          "the eight-term delta_X T vanishes on a torsion-free field (first Bianchi identity)", 1e-6, [&] {
            Rng rng = cx.rng(44);
            const Field<N, 3> dt = delta_x_torsion(cx.lc, random_vector_field<N>(rng, e.chart), d);
            double r = 0.0;
            for (const auto& p : cx.nested_grid()) r = std::max(r, max_abs(dt(p)));
            return r;
          });
  if constexpr (N == 2) {
    struct FlowResult {
      double torsion = 0.0, skew = 0.0, halving = 0.0;
    };
    FlowResult fr;
    run.run("pseudotranslation.flow_torsion", "a torsion-free field stays torsion-free along the flow to t = 0.1", 1e-6,
            [&] {
              Rng rng = cx.rng(45);
              const VectorField<N> x = random_vector_field<N>(rng, e.chart);
              const SampledGaugeField<N> s0 = sample_gauge_field(cx.lc);
              const auto traj = flow(s0, x, kFlowTime, kFlowSteps);
              for (const auto& s : traj) {
                fr.torsion = std::max(fr.torsion, sampled_torsion_sup(s));
                fr.skew = std::max(fr.skew, sampled_skewness_sup(s));
              }
              fr.halving = sampled_distance(traj.back(), flow_endpoint(s0, x, kFlowTime, 2 * kFlowSteps));
              return fr.torsion;
            });
    run.run("pseudotranslation.flow_skewness", "the flow keeps the connection eta-skew", 1e-8,
            [&] { return fr.skew; });
    run.run("pseudotranslation.flow_step_halving", "flow endpoint changes under step halving", 1e-7,
            [&] { return fr.halving; }, Compare::at_most);
    run.run("pseudotranslation.bracket", "flow commutator of X = 0.5 sin(x^1) d_0 and X' = d_1 against L_[X,X'] g",
            1e-4, [&] {
              const auto [x, y] = bracket_instance<N>();
              return lie_bracket_tau(cx.lc, x, y, kBracketTime, d);
            });
  }
}

/// Interior sub-box: the middle half of the chart on every axis.
template <int N>
Chart<N> middle_box(const Chart<N>& c) {
  Point<N> lo, hi;
  for (int k = 0; k < N; ++k) {
    lo[k] = c.lo[k] + 0.25 * c.extent(k);
    hi[k] = c.hi[k] - 0.25 * c.extent(k);
  }
  return Chart<N>(c.name + " middle", lo, hi);
}

template <int N>
void palatini_suite(const SuiteContext<N>& cx, CheckRunner& run) {
  const auto& e = cx.entry;
  const auto& d = cx.d;
  run.run("palatini.hilbert_equality",
          "Palatini density equals the Hilbert density, relative to max(1, |Hilbert density|)", 1e-6, [&] {
            const GravField<N> gf = iota(cx.lc, d);
            double r = 0.0;
            for (const auto& p : cx.nested_grid()) {
              const double hil = kPalatiniHilbertConstant * hilbert_density(gf, d, p);
              r = std::max(r, std::abs(palatini_density(cx.lc, d, p) - hil) / std::max(1.0, std::abs(hil)));
            }
            return r;
          });
  run.run("palatini.rotation_invariance", "the density is invariant under a proper point-dependent rotation", 1e-6,
          [&] {
            Rng rng = cx.rng(51);
            const RotationField<N> rot = random_rotation<N>(rng, e.chart, e.signature);
            const auto b = act_rotation(rot, cx.lc, d);
            double r = 0.0;
            for (const auto& p : cx.nested_grid())
              r = std::max(r, std::abs(palatini_density(b, d, p) - palatini_density(cx.lc, d, p)));
            return r;
          });
  if (e.vacuum)
    run.run("palatini.vacuum_equations", "torsion and Ricci residuals of the vacuum equations", 1e-6, [&] {
      const VacuumResiduals v = vacuum_residuals(cx.lc, d, cx.nested_grid());
      return std::max(v.torsion, v.ricci);
    });
  run.run("palatini.pseudo_translation_variation",
          "variation of the action along tau^(X), X compactly supported in the middle box, relative to the "
          "term-wise magnitude",
          1e-4, [&] {
            Rng rng = cx.rng(52);
            const Chart<N> box = middle_box(e.chart);
            const VectorField<N> x = bump_vector_field(box, random_vector_field<N>(rng, e.chart, 1));
            const ActionVariation v = pseudo_translation_action_variation(cx.lc, x, box, d);
            return v.scale > 0.0 ? std::abs(v.variation) / v.scale : std::abs(v.variation);
          });
}

template <int N>
std::vector<CheckRecord> run_suites(const SuiteConfig& c) {
  const SuiteContext<N> cx(require_entry<N>(c.spacetime), c);
  std::vector<CheckRecord> out;
  CheckRunner run(out);
  const bool all = c.suite == "all";
  if (all || c.suite == "correspondence") correspondence_suite(cx, run);
  if (all || c.suite == "gauge") gauge_suite(cx, run);
  if (all || c.suite == "spencer") spencer_suite(cx, run);
  if (all || c.suite == "pseudotranslation") pseudotranslation_suite(cx, run);
  if (all || c.suite == "palatini") palatini_suite(cx, run);
  return out;
}

/// Validates the configuration and runs the selected suites; does not write the report.
inline Report run(const SuiteConfig& c) {
  validate(c);
  Report r{c, {}};
  r.checks = catalog_dimension(c.spacetime) == 2 ? run_suites<2>(c) : run_suites<4>(c);
  return r;
}

}  // namespace gravgauge
