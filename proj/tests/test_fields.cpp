#include <cmath>

#include "common.hpp"

using gg::Chart;
using gg::Differentiator;
using gg::Point;
using gg::Tensor;

namespace {

gg::Field<2, 0> scalar2(std::function<double(const Point<2>&)> f) {
  return gg::Field<2, 0>([f](const Point<2>& p) {
    Tensor<2, 0> t;
    t.v[0] = f(p);
    return t;
  }, {});
}

gg::VectorField<2> poly_field(gg::Rng& rng, const Chart<2>& c, int degree) {
  return gg::random_vector_field<2>(rng, c, degree);
}

}  // namespace

TEST(Chart, RejectsEmptyAxis) {
  EXPECT_THROW(Chart<2>("bad", {0.0, 1.0}, {1.0, 1.0}), gg::InvalidArgument);
}

TEST(Chart, SampleGridStaysInside) {
  const Chart<2> c("c", {0.0, 0.0}, {1.0, 2.0});
  const auto pts = c.sample_grid(5);
  ASSERT_EQ(pts.size(), 25u);
  for (const auto& p : pts) EXPECT_TRUE(c.contains(p));
}

TEST(Partial, BilinearIsExact) {
  const Chart<2> c("c", {0.0, 0.0}, {5.0, 5.0});
  const auto f = scalar2([](const Point<2>& p) { return p[0] * p[1]; });
  for (auto scheme : {gg::FdScheme::central2, gg::FdScheme::central4, gg::FdScheme::richardson}) {
    const Differentiator<2> d(c, 1e-3, scheme);
    EXPECT_NEAR(gg::partial(f, 0, {2.0, 3.0}, d).v[0], 3.0, 1e-12);
  }
}

TEST(Partial, ConstantIsZero) {
  const Chart<2> c = unit_square();
  const auto f = scalar2([](const Point<2>&) { return 4.2; });
  const Differentiator<2> d(c);
  EXPECT_NEAR(gg::partial(f, 1, {0.1, 0.2}, d).v[0], 0.0, 1e-12);
}

TEST(Partial, SineCentral4) {
  const gg::Chart<1> c("line", {0.0}, {1.4});
  const gg::Field<1, 0> f([](const Point<1>& p) {
    Tensor<1, 0> t;
    t.v[0] = std::sin(p[0]);
    return t;
  }, {});
  const Differentiator<1> d(c, 1e-2 / 1.4);
  EXPECT_NEAR(gg::partial(f, 0, {0.7}, d).v[0], std::cos(0.7), 1e-9);
}

TEST(Partial, ExactOnLowDegreePolynomials) {
  const Chart<2> c = unit_square();
  const auto f = scalar2([](const Point<2>& p) { return 1.0 + p[0] - 2.0 * p[0] * p[0] * p[1] + 0.5 * std::pow(p[0], 4); });
  const Differentiator<2> d4(c, 1e-2);
  const Point<2> p{0.3, -0.4};
  const double exact = 1.0 - 4.0 * p[0] * p[1] + 2.0 * std::pow(p[0], 3);
  EXPECT_NEAR(gg::partial(f, 0, p, d4).v[0], exact, 1e-12);
  const auto quad = scalar2([](const Point<2>& p) { return 3.0 * p[1] * p[1] - p[0]; });
  const Differentiator<2> d2(c, 1e-2, gg::FdScheme::central2);
  EXPECT_NEAR(gg::partial(quad, 1, p, d2).v[0], 6.0 * p[1], 1e-12);
}

TEST(Partial, RichardsonBeatsCentral4) {
  const Chart<2> c = unit_square();
  const auto f = scalar2([](const Point<2>& p) { return std::exp(p[0]) * std::sin(3.0 * p[1]); });
  const Point<2> p{0.2, 0.1};
  const double exact = 3.0 * std::exp(p[0]) * std::cos(3.0 * p[1]);
  const Differentiator<2> c4(c, 2e-2), ri(c, 2e-2, gg::FdScheme::richardson);
  const double e4 = std::abs(gg::partial(f, 1, p, c4).v[0] - exact);
  EXPECT_GT(e4, 1e-8);
  EXPECT_LT(std::abs(gg::partial(f, 1, p, ri).v[0] - exact), 0.1 * e4);
}

TEST(Partial, BoundaryMarginAndDomainErrors) {
  const Chart<2> c = unit_square();
  const Differentiator<2> d(c, 1e-2);
  const auto f = scalar2([](const Point<2>& p) { return p[0]; });
  EXPECT_THROW(gg::partial(f, 0, {0.99, 0.0}, d), gg::BoundaryMarginError);
  const auto bad = scalar2([](const Point<2>& p) { return std::log(p[0]); });
  EXPECT_THROW(gg::partial(bad, 0, {0.0, 0.0}, d), gg::NumericDomainError);
}

TEST(Field, EvaluationIsDeterministic) {
  gg::Rng rng(5);
  const auto x = poly_field(rng, unit_square(), 3);
  const Point<2> p{0.123, -0.456};
  EXPECT_EQ(x(p).v, x(p).v);
}

TEST(LieBracket, CoordinateFieldsCommute) {
  const Differentiator<2> d(unit_square());
  const auto e1 = constant_vector<2>({1.0, 0.0}), e2 = constant_vector<2>({0.0, 1.0});
  EXPECT_EQ(gg::max_abs(gg::lie_bracket(e1, e2, {0.1, 0.2}, d)), 0.0);
}

TEST(LieBracket, ShearAgainstTranslation) {
  const Differentiator<2> d(unit_square());
  const auto x = gg::coordinate_vector_field<2>([](const Point<2>& p) {
    Tensor<2, 1> v;
    v(0) = p[1];
    return v;
  });
  const auto y = constant_vector<2>({0.0, 1.0});
  const auto b = gg::lie_bracket(x, y, {0.3, -0.2}, d);
  EXPECT_NEAR(b(0), -1.0, 1e-12);
  EXPECT_NEAR(b(1), 0.0, 1e-12);
}

TEST(LieBracket, AntisymmetryAndJacobi) {
  gg::Rng rng(11);
  const Chart<2> c = unit_square();
  const Differentiator<2> d(c);
  const auto x = poly_field(rng, c, 2), y = poly_field(rng, c, 2), z = poly_field(rng, c, 2);
  for (const auto& p : c.sample_grid(5, 0.2)) {
    EXPECT_LE(gg::max_abs(gg::lie_bracket(x, y, p, d) + gg::lie_bracket(y, x, p, d)), 1e-12);
    const auto jac = gg::lie_bracket(x, gg::lie_bracket_field(y, z, d), p, d) +
                     gg::lie_bracket(y, gg::lie_bracket_field(z, x, d), p, d) +
                     gg::lie_bracket(z, gg::lie_bracket_field(x, y, d), p, d);
    EXPECT_LE(gg::max_abs(jac), 1e-9);
  }
}

TEST(LieDerivativeMetric, KillingFieldsAndDilation) {
  const Chart<2> c = unit_square();
  const Differentiator<2> d(c);
  const auto flat = gg::constant_field<2, 2>(gg::identity_tensor<2>(), {});
  const Point<2> p{0.2, -0.3};
  EXPECT_LE(gg::max_abs(gg::lie_derivative_metric(constant_vector<2>({0.3, -1.0}), flat, p, d)), 1e-12);
  const auto rot = gg::coordinate_vector_field<2>([](const Point<2>& q) {
    Tensor<2, 1> v;
    v(0) = -q[1];
    v(1) = q[0];
    return v;
  });
  EXPECT_LE(gg::max_abs(gg::lie_derivative_metric(rot, flat, p, d)), 1e-12);
  const auto dil = gg::coordinate_vector_field<2>([](const Point<2>& q) {
    Tensor<2, 1> v;
    v(0) = q[0];
    return v;
  });
  const auto l = gg::lie_derivative_metric(dil, flat, p, d);
  EXPECT_NEAR(l(0, 0), 2.0, 1e-12);
  EXPECT_NEAR(l(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(l(1, 1), 0.0, 1e-12);
}
