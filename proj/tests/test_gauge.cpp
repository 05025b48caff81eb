#include <cmath>

#include "common.hpp"

using gg::Point;
using gg::Tensor;

namespace {

constexpr double kTol = 1e-8;

gg::AffineGaugeField<2> random_field(std::uint64_t seed, const gg::SignatureMetric<2>& sig) {
  gg::Rng rng(seed);
  const auto c = unit_square();
  return gg::make_gauge_field<2>(c, gg::random_vielbein<2>(rng, c, sig), gg::random_connection<2>(rng, c, sig));
}

}  // namespace

TEST(Rotation, RandomRotationsAreIsometries) {
  gg::Rng rng(1);
  const gg::Chart<4> c("box", {0, 0, 0, 0}, {1, 1, 1, 1});
  const auto sig = gg::SignatureMetric<4>::lorentzian();
  const auto r = gg::random_rotation<4>(rng, c, sig);
  for (const auto& p : c.sample_grid(3)) EXPECT_LE(gg::isometry_residual<4>(r.h(p), r.h_inv(p), sig), 1e-12);
}

TEST(Rotation, NonIsometryRejected) {
  const auto c = unit_square();
  Tensor<2, 2> two = gg::identity_tensor<2>() * 2.0, half = gg::identity_tensor<2>() * 0.5;
  EXPECT_THROW(gg::make_rotation<2>(c, gg::SignatureMetric<2>::riemannian(), gg::constant_field<2, 2>(two, {}),
                                    gg::constant_field<2, 2>(half, {})),
               gg::IsometryError);
}

TEST(Rotation, IdentityIsNoOp) {
  const auto sig = gg::SignatureMetric<2>::riemannian();
  const auto a = random_field(3, sig);
  const gg::Differentiator<2> d(a.chart);
  const auto b = gg::act_rotation(gg::identity_rotation<2>(sig), a, d);
  for (const auto& p : a.chart.sample_grid(5)) {
    EXPECT_LE(gg::max_abs_diff(b.vielbein.theta(p), a.vielbein.theta(p)), 1e-15);
    EXPECT_LE(gg::max_abs_diff(b.conn.gamma(p), a.conn.gamma(p)), 1e-15);
  }
}

TEST(Rotation, InducedMetricAndConnectionInvariant) {
  for (const auto& sig : {gg::SignatureMetric<2>::riemannian(), gg::SignatureMetric<2>(1, 1)}) {
    const auto a = random_field(5, sig);
    const gg::Differentiator<2> d(a.chart);
    gg::Rng rng(6);
    const auto r = gg::random_rotation<2>(rng, a.chart, sig);
    const auto b = gg::act_rotation(r, a, d);
    EXPECT_GT(gg::rotation_gradient_norm(r, d, a.chart.sample_grid(5)), 0.1);
    EXPECT_LE(gg::sup_metric_and_connection_diff(gg::iota(b, d), gg::iota(a, d), a.chart.sample_grid(5, 0.2)), kTol);
    for (const auto& p : a.chart.sample_grid(4)) EXPECT_LE(gg::skewness_residual<2>(b.conn.gamma(p), sig), 1e-10);
  }
}

TEST(Rotation, SignatureMismatch) {
  const auto a = random_field(5, gg::SignatureMetric<2>::riemannian());
  const gg::Differentiator<2> d(a.chart);
  EXPECT_THROW(gg::act_rotation(gg::identity_rotation<2>(gg::SignatureMetric<2>(1, 1)), a, d), gg::IsometryError);
}

TEST(Translation, ConnectionUnchangedVielbeinShifted) {
  const auto sig = gg::SignatureMetric<2>::riemannian();
  const auto a = random_field(7, sig);
  const gg::Differentiator<2> d(a.chart);
  gg::Rng rng(8);
  const auto t = gg::random_translation<2>(rng, a.chart);
  const auto b = gg::act_translation(t, a, d);
  for (const auto& p : a.chart.sample_grid(5, 0.1)) {
    EXPECT_EQ(b.conn.gamma(p).v, a.conn.gamma(p).v);
    EXPECT_LE(gg::max_abs_diff(b.vielbein.theta(p) + gg::covariant_derivative_all(b, t.xi, p, d), a.vielbein.theta(p)),
              1e-9);
  }
  EXPECT_LE(gg::invariance_basepoint_shift(t, a, d, a.chart.sample_grid(5, 0.1)), 1e-9);
}

TEST(Translation, SingularResultRejected) {
  const auto c = unit_square();
  const auto a = flat_gauge<2>(c, gg::SignatureMetric<2>::riemannian());
  const gg::Differentiator<2> d(c);
  // xi^i = x^i makes nabla xi equal to the frame, so L - nabla xi vanishes.
  const auto t = gg::make_translation<2>(c, gg::coordinate_vector_field<2>([](const Point<2>& p) {
                                           Tensor<2, 1> v;
                                           v(0) = p[0];
                                           v(1) = p[1];
                                           return v;
                                         }));
  EXPECT_THROW(gg::act_translation(t, a, d), gg::TranslatedFieldSingular);
}

TEST(Transformation, DecomposeRecoversParts) {
  gg::Rng rng(9);
  const auto c = unit_square();
  const auto sig = gg::SignatureMetric<2>(1, 1);
  const auto r = gg::random_rotation<2>(rng, c, sig);
  const auto t = gg::random_translation<2>(rng, c);
  const auto f = gg::compose(r, t);
  for (const auto& p : c.sample_grid(4)) {
    const auto parts = gg::decompose(f, p);
    EXPECT_LE(gg::max_abs_diff(parts.h, r.h(p)), 1e-14);
    EXPECT_LE(gg::max_abs_diff(parts.xi, t.xi(p)), 1e-14);
  }
}

TEST(Transformation, TranslationThenRotationMovesOffset) {
  gg::Rng rng(10);
  const auto c = unit_square();
  const auto sig = gg::SignatureMetric<2>::riemannian();
  const auto r = gg::random_rotation<2>(rng, c, sig);
  const auto t = gg::random_translation<2>(rng, c);
  const gg::GaugeTransformation<2> f{{gg::GaugeStep<2>(t), gg::GaugeStep<2>(r)}};
  const Point<2> p{0.2, 0.4};
  const auto parts = gg::decompose(f, p);
  Tensor<2, 1> expect;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) expect(i) += r.h(p)(i, j) * t.xi(p)(j);
  EXPECT_LE(gg::max_abs_diff(parts.xi, expect), 1e-14);
}

TEST(Transformation, ApplyMatchesSequentialActions) {
  const auto sig = gg::SignatureMetric<2>::riemannian();
  const auto a = random_field(15, sig);
  const gg::Differentiator<2> d(a.chart);
  gg::Rng rng(16);
  const auto r = gg::random_rotation<2>(rng, a.chart, sig);
  const auto t = gg::random_translation<2>(rng, a.chart);
  const auto b = gg::apply(gg::compose(r, t), a, d);
  const auto c = gg::act_translation(t, gg::act_rotation(r, a, d), d);
  for (const auto& p : a.chart.sample_grid(4, 0.2)) {
    EXPECT_LE(gg::max_abs_diff(b.vielbein.theta(p), c.vielbein.theta(p)), 1e-14);
    EXPECT_LE(gg::max_abs_diff(b.conn.gamma(p), c.conn.gamma(p)), 1e-14);
  }
}

TEST(Covariance, TorsionAndCurvatureRotate) {
  const auto sig = gg::SignatureMetric<2>(1, 1);
  const auto a = random_field(21, sig);
  const gg::Differentiator<2> d(a.chart);
  gg::Rng rng(22);
  const auto r = gg::random_rotation<2>(rng, a.chart, sig);
  const auto b = gg::act_rotation(r, a, d);
  const auto ta = gg::torsion(a, d), tb = gg::torsion(b, d);
  const auto ra = gg::curvature(a, d), rb = gg::curvature(b, d);
  for (const auto& p : a.chart.sample_grid(4, 0.2)) {
    EXPECT_LE(gg::max_abs_diff(tb.t(p), gg::rotate_torsion<2>(ta.t(p), r.h(p), r.h_inv(p))), kTol);
    EXPECT_LE(gg::max_abs_diff(rb.r(p), gg::rotate_curvature<2>(ra.r(p), r.h(p), r.h_inv(p))), 1e-6);
  }
}

TEST(NonNormality, TranslationDoesNotCommuteWithRotation) {
  const auto e = gg::require_entry<2>("euclidean");
  const gg::Differentiator<2> d(e.chart);
  const auto a = gg::levi_civita_gauge_field(e.vielbein, d);
  const auto rot = gg::coordinate_angle_rotation<2>(e.chart, e.signature);
  const auto t = gg::make_translation<2>(e.chart, gg::constant_field<2, 1>(Tensor<2, 1>{{0.1, 0.1}}, {}));
  const auto g1 = gg::metric_from_vielbein(gg::act_translation(t, a, d).vielbein);
  const auto g2 = gg::metric_from_vielbein(gg::act_translation(t, gg::act_rotation(rot, a, d), d).vielbein);
  double r = 0.0;
  for (const auto& p : e.chart.sample_grid(5)) r = std::max(r, gg::max_abs_diff(g1(p), g2(p)));
  EXPECT_GT(r, 1e-3);
  // A constant rotation commutes with a constant translation up to rotating xi.
  const auto g3 = gg::metric_from_vielbein(
      gg::act_translation(t, gg::act_rotation(gg::identity_rotation<2>(e.signature), a, d), d).vielbein);
  for (const auto& p : e.chart.sample_grid(5)) EXPECT_LE(gg::max_abs_diff(g1(p), g3(p)), 1e-14);
}
