#include <cmath>

#include "common.hpp"

using gg::Point;
using gg::Tensor;

namespace {

struct Sphere {
  gg::CatalogEntry<2> e = gg::require_entry<2>("sphere2");
  gg::Differentiator<2> d{e.chart};
  gg::AffineGaugeField<2> lc = gg::levi_civita_gauge_field(e.vielbein, d);
  std::vector<Point<2>> sample = e.chart.sample_grid(5, 0.2);
};

}  // namespace

TEST(Tau, ConstantFieldOnFlatGaugeVanishes) {
  const auto c = unit_square();
  const auto a = flat_gauge<2>(c, gg::SignatureMetric<2>::riemannian());
  const gg::Differentiator<2> d(c);
  const auto v = gg::tau_at(a, constant_vector<2>({0.3, -0.7}), {0.1, 0.2}, d);
  EXPECT_LE(gg::max_abs(v.dL), 1e-12);
  EXPECT_LE(gg::max_abs(v.dGamma), 1e-12);
}

TEST(Tau, VielbeinSlotOnFlatGaugeIsDerivativeOfX) {
  const auto c = unit_square();
  const auto a = flat_gauge<2>(c, gg::SignatureMetric<2>::riemannian());
  const gg::Differentiator<2> d(c);
  gg::Rng rng(1);
  const auto x = gg::random_vector_field<2>(rng, c);
  const Point<2> p{0.2, -0.1};
  const auto v = gg::tau_at(a, x, p, d);
  const auto dx = gg::gradient(x, p, d);
  for (int i = 0; i < 2; ++i)
    for (int mu = 0; mu < 2; ++mu) EXPECT_NEAR(v.dL(i, mu), dx(mu, i), 1e-12);
}

TEST(Tau, ConnectionSlotIsSkew) {
  Sphere s;
  gg::Rng rng(2);
  const auto a = gg::from_torsion(s.e.vielbein, gg::random_torsion<2>(rng, s.e.chart, 2, 0.5), s.d);
  const auto x = gg::random_vector_field<2>(rng, s.e.chart);
  for (const auto& p : s.sample)
    EXPECT_LE(gg::skewness_residual<2>(gg::tau_at(a, x, p, s.d).dGamma, s.e.signature), 1e-12);
}

TEST(Main3, ProjectionMatchesLieDerivativeWithTorsion) {
  Sphere s;
  gg::Rng rng(3);
  const auto a = gg::from_torsion(s.e.vielbein, gg::random_torsion<2>(rng, s.e.chart, 2, 0.5), s.d);
  for (int k = 0; k < 3; ++k) {
    const auto r = gg::verify_main3_ii(a, gg::random_vector_field<2>(rng, s.e.chart), s.d, s.sample);
    EXPECT_LE(r.metric, 1e-5);
    EXPECT_LE(r.connection, 1e-5);
  }
}

TEST(Main3, ProjectionMatchesLieDerivativeLorentzian) {
  gg::Rng rng(4);
  const auto c = unit_square();
  const auto sig = gg::SignatureMetric<2>(1, 1);
  const auto a = gg::make_gauge_field<2>(c, gg::random_vielbein<2>(rng, c, sig), gg::random_connection<2>(rng, c, sig));
  const gg::Differentiator<2> d(c);
  const auto r = gg::verify_main3_ii(a, gg::random_vector_field<2>(rng, c), d, c.sample_grid(5, 0.2));
  EXPECT_LE(r.metric, 1e-5);
  EXPECT_LE(r.connection, 1e-5);
}

TEST(Main3, CommutesWithRotations) {
  Sphere s;
  gg::Rng rng(5);
  const auto a = gg::from_torsion(s.e.vielbein, gg::random_torsion<2>(rng, s.e.chart, 2, 0.5), s.d);
  const auto rot = gg::random_rotation<2>(rng, s.e.chart, s.e.signature);
  EXPECT_LE(gg::verify_main3_i(a, gg::random_vector_field<2>(rng, s.e.chart), rot, s.d, s.sample), 1e-6);
}

TEST(DeltaTorsion, EightTermFormVanishesWhenTorsionFree) {
  Sphere s;
  gg::Rng rng(6);
  const auto dt = gg::delta_x_torsion(s.lc, gg::random_vector_field<2>(rng, s.e.chart), s.d);
  for (const auto& p : s.sample) EXPECT_LE(gg::max_abs(dt(p)), 1e-6);
}

TEST(DeltaTorsion, ConnectionSlotIsCurvatureAlongX) {
  // On a torsion-free field d^{-1} d H = H, so the slot is H(s) = R(L(X), s) itself.
  Sphere s;
  gg::Rng rng(7);
  const auto x = gg::random_vector_field<2>(rng, s.e.chart);
  double largest = 0.0;
  for (const auto& p : s.sample) {
    const auto j = gg::jet_at(s.lc, p, s.d);
    const auto r = gg::frame_curvature<2>(j);
    const auto l = gg::frame_image<2>(j.theta, x(p));
    Tensor<2, 3> h;
    for (int m = 0; m < 2; ++m)
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          for (int a = 0; a < 2; ++a) h(m, i, k) -= l(a) * r(m, a, i, k);
    const auto expected = gg::contract_with_theta<2>(h, j.theta);
    const auto got = gg::tau_at(s.lc, x, p, s.d).dGamma;
    EXPECT_LE(gg::max_abs_diff(got, expected), 1e-12);
    largest = std::max(largest, gg::max_abs(got));
  }
  EXPECT_GT(largest, 1e-2);
}

TEST(DeltaTorsion, LiteralSlotBreaksCorrespondence) {
  // The eight-term variation vanishes on the Levi-Civita field, so using it as the
  // connection slot leaves no dGamma; the projection then misses L_X of the connection.
  Sphere s;
  gg::Rng rng(8);
  const auto x = gg::random_vector_field<2>(rng, s.e.chart);
  const auto v = gg::tau(s.lc, x, s.d);
  const gg::PseudoTranslationVector<2> literal{v.dL, gg::constant_field<2, 3>(Tensor<2, 3>{}, {})};
  const auto gf = gg::iota(s.lc, s.d);
  double with_tau = 0.0, with_literal = 0.0;
  for (const auto& p : s.sample) {
    const auto lie = gg::oracle::lie_derivative_connection(x, gf.gamma_coord, s.d, p);
    with_tau = std::max(with_tau, gg::max_abs_diff(gg::tangent_gamma_coord(s.lc, v, gf.gamma_coord, p, s.d), lie));
    with_literal =
        std::max(with_literal, gg::max_abs_diff(gg::tangent_gamma_coord(s.lc, literal, gf.gamma_coord, p, s.d), lie));
  }
  EXPECT_LE(with_tau, 1e-5);
  EXPECT_GT(with_literal, 1e-3);
}

TEST(TangentMetric, MatchesFiniteVariation) {
  gg::Rng rng(9);
  const auto sig = gg::SignatureMetric<4>::lorentzian();
  const auto th = gg::random_vielbein<4>(rng, gg::Chart<4>("b", {0, 0, 0, 0}, {1, 1, 1, 1}), sig).theta({0.5, 0.5, 0.5, 0.5});
  Tensor<4, 2> dl;
  for (auto& x : dl.v) x = gg::uniform(rng);
  const double h = 1e-4;
  const auto fd = (gg::metric_from_theta<4>(th + dl * h, sig) - gg::metric_from_theta<4>(th - dl * h, sig)) * (0.5 / h);
  EXPECT_LE(gg::max_abs_diff(gg::tangent_metric<4>(th, dl, sig), fd), 1e-10);
}

TEST(Flow, PreservesTorsionFreeAndSkew) {
  Sphere s;
  gg::Rng rng(10);
  const auto x = gg::random_vector_field<2>(rng, s.e.chart);
  const auto s0 = gg::sample_gauge_field(s.lc);
  EXPECT_LE(gg::sampled_torsion_sup(s0), 1e-6);
  const auto traj = gg::flow(s0, x, 0.1, 10);
  ASSERT_EQ(traj.size(), 11u);
  for (const auto& st : traj) {
    EXPECT_LE(gg::sampled_torsion_sup(st), 1e-6);
    EXPECT_LE(gg::sampled_skewness_sup(st), 1e-8);
  }
  EXPECT_GT(gg::sampled_distance(traj.front(), traj.back()), 1e-3);
  EXPECT_LE(gg::sampled_distance(traj.back(), gg::flow_endpoint(s0, x, 0.1, 20)), 1e-7);
}

TEST(Flow, BackwardUndoesForward) {
  Sphere s;
  gg::Rng rng(11);
  const auto x = gg::random_vector_field<2>(rng, s.e.chart);
  const auto s0 = gg::sample_gauge_field(s.lc, 17);
  const auto back = gg::flow_endpoint(gg::flow_endpoint(s0, x, 0.05, 10), x, -0.05, 10);
  EXPECT_LE(gg::sampled_distance(s0, back), 1e-6);
}

TEST(Flow, RejectsBadArguments) {
  Sphere s;
  EXPECT_THROW(gg::sample_gauge_field(s.lc, 4), gg::InvalidArgument);
  const auto s0 = gg::sample_gauge_field(s.lc, 9);
  EXPECT_THROW(gg::flow(s0, constant_vector<2>({1.0, 0.0}), 0.1, 0), gg::InvalidArgument);
}

TEST(Bracket, FlowCommutatorMatchesBracket) {
  Sphere s;
  const auto [x, y] = gg::bracket_instance<2>();
  EXPECT_LE(gg::lie_bracket_tau(s.lc, x, y, 1e-2, s.d), 1e-4);
}
