#include <cmath>

#include "common.hpp"

using gg::Point;
using gg::Tensor;

TEST(Christoffel, SphereClosedForm) {
  const auto e = gg::require_entry<2>("sphere2");
  const gg::Differentiator<2> d(e.chart);
  for (const auto& p : e.chart.sample_grid(5)) {
    const auto g = gg::oracle::christoffel(e.metric, d, p);
    const double s = std::sin(p[0]), c = std::cos(p[0]);
    EXPECT_NEAR(g(0, 1, 1), -s * c, 1e-10);
    EXPECT_NEAR(g(1, 0, 1), c / s, 1e-10);
    EXPECT_NEAR(g(1, 1, 0), c / s, 1e-10);
    EXPECT_NEAR(g(0, 0, 0), 0.0, 1e-12);
    EXPECT_LE(gg::max_abs(gg::oracle::torsion_of_connection<2>(g)), 1e-15);
  }
}

TEST(Riemann, MinkowskiIsFlat) {
  const auto e = gg::require_entry<4>("minkowski");
  const gg::Differentiator<4> d(e.chart);
  EXPECT_EQ(gg::max_abs(gg::oracle::riemann(e.metric, d, {0.5, 0.5, 0.5, 0.5})), 0.0);
}

TEST(Riemann, SphereScalarAndRicci) {
  const auto e = gg::require_entry<2>("sphere2");
  const gg::Differentiator<2> d(e.chart);
  for (const auto& p : e.chart.sample_grid(5)) {
    EXPECT_NEAR(gg::oracle::scalar(e.metric, d, p), 2.0, 1e-6);
    EXPECT_LE(gg::max_abs_diff(gg::oracle::ricci(e.metric, d, p), e.metric.g(p)), 1e-6);
  }
}

TEST(Riemann, SchwarzschildVacuum) {
  const auto e = gg::require_entry<4>("schwarzschild");
  const gg::Differentiator<4> d(e.chart);
  for (const auto& p : e.chart.sample_grid(2)) EXPECT_LE(gg::max_abs(gg::oracle::ricci(e.metric, d, p)), 1e-6);
}

TEST(Riemann, DeSitterIsMaximallySymmetric) {
  // Scal = -n(n-1) H^2 with signature (+,-,-,-).
  const auto e = gg::require_entry<4>("desitter");
  const gg::Differentiator<4> d(e.chart);
  for (const auto& p : e.chart.sample_grid(2)) {
    const double s = gg::oracle::scalar(e.metric, d, p);
    EXPECT_NEAR(s, -12.0, 1e-6);
    EXPECT_LE(gg::max_abs_diff(gg::oracle::ricci(e.metric, d, p), e.metric.g(p) * (s / 4.0)), 1e-6);
  }
}

TEST(MetricCompatibility, ChristoffelIsMetric) {
  const auto e = gg::require_entry<2>("sphere2");
  const gg::Differentiator<2> d(e.chart);
  const auto gc = gg::oracle::christoffel_field(e.metric, d);
  for (const auto& p : e.chart.sample_grid(5))
    EXPECT_LE(gg::max_abs(gg::oracle::metric_compatibility(e.metric.g, gc, d, p)), 1e-8);
}

TEST(MetricSpec, DegenerateMetricThrows) {
  EXPECT_THROW(gg::oracle::inverse_metric<2>(Tensor<2, 2>{}), gg::DegenerateMetric);
}

TEST(LieDerivativeConnection, KillingFieldsPreserveLeviCivita) {
  const auto e = gg::require_entry<2>("sphere2");
  const gg::Differentiator<2> d(e.chart);
  const auto gc = gg::oracle::christoffel_field(e.metric, d);
  const auto dphi = constant_vector<2>({0.0, 1.0});
  // Rotation about the x axis.
  const auto rx = gg::coordinate_vector_field<2>([](const Point<2>& p) {
    Tensor<2, 1> v;
    v(0) = -std::sin(p[1]);
    v(1) = -std::cos(p[1]) * std::cos(p[0]) / std::sin(p[0]);
    return v;
  });
  for (const auto& p : e.chart.sample_grid(5, 0.1)) {
    EXPECT_LE(gg::max_abs(gg::oracle::lie_derivative_connection(dphi, gc, d, p)), 1e-8);
    EXPECT_LE(gg::max_abs(gg::oracle::lie_derivative_connection(rx, gc, d, p)), 1e-7);
    EXPECT_LE(gg::max_abs(gg::lie_derivative_metric(rx, e.metric.g, p, d)), 1e-9);
  }
}

TEST(LieDerivativeConnection, AffineFieldOnFlatIsZeroButQuadraticIsNot) {
  const auto c = unit_square();
  const gg::Differentiator<2> d(c);
  const auto zero = gg::constant_field<2, 3>(Tensor<2, 3>{}, {});
  const auto affine = gg::coordinate_vector_field<2>([](const Point<2>& p) {
    Tensor<2, 1> v;
    v(0) = 2.0 * p[0] - p[1];
    v(1) = 0.5 + p[0];
    return v;
  });
  EXPECT_LE(gg::max_abs(gg::oracle::lie_derivative_connection(affine, zero, d, {0.1, 0.2})), 1e-9);
  // L_X Gamma^l_{mn} = d_m d_n X^l on a flat chart.
  const auto quad = gg::coordinate_vector_field<2>([](const Point<2>& p) {
    Tensor<2, 1> v;
    v(0) = p[0] * p[1];
    return v;
  });
  const auto l = gg::oracle::lie_derivative_connection(quad, zero, d, {0.1, 0.2});
  EXPECT_NEAR(l(0, 0, 1), 1.0, 1e-9);
  EXPECT_NEAR(l(0, 1, 0), 1.0, 1e-9);
  EXPECT_NEAR(l(0, 0, 0), 0.0, 1e-9);
}
