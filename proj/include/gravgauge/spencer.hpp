#pragma once

// Spencer operator (skew-symmetrization) and its inverse, the contorsion map, plus the
// torsion parameterization (L, T) -> (L, nabla).

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "gravgauge/correspondence.hpp"
#include "gravgauge/curvature.hpp"

namespace gravgauge {

/// (dH)^i_{kj} = H^i_{kj} - H^i_{jk}.
template <int N>
Tensor<N, 3> spencer(const Tensor<N, 3>& h) {
  Tensor<N, 3> out;
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k)
      for (int j = 0; j < N; ++j) out(i, k, j) = h(i, k, j) - h(i, j, k);
  return out;
}

template <int N>
TorsionField<N> spencer(const ConnectionDelta<N>& h) {
  auto hf = h.h.eval;
  return TorsionField<N>{Field<N, 3>([hf](const Point<N>& p) { return spencer<N>(hf(p)); },
                                     {IndexKind::frame, IndexKind::frame, IndexKind::frame})};
}

inline constexpr double kAntisymmetryTolerance = 1e-12;

/// Contorsion. With all indices lowered by eta (the upper index becomes the first):
///   H_{abc} = 1/2 (T_{abc} - T_{bca} + T_{cab}),
/// the unique eta-skew H with dH = T.
template <int N>
Tensor<N, 3> spencer_inverse(const Tensor<N, 3>& t, const SignatureMetric<N>& sig) {
  const double scale = std::max(1.0, max_abs(t));
  if (torsion_antisymmetry_residual<N>(t) > kAntisymmetryTolerance * scale)
    throw AntisymmetryError("spencer_inverse: torsion is not antisymmetric");
  Tensor<N, 3> low;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) low(a, b, c) = sig(a) * t(a, b, c);
  Tensor<N, 3> out;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        out(a, b, c) = sig(a) * 0.5 * (low(a, b, c) - low(b, c, a) + low(c, a, b));
  return out;
}

template <int N>
ConnectionDelta<N> spencer_inverse(const TorsionField<N>& t, const SignatureMetric<N>& sig) {
  auto tf = t.t.eval;
  return ConnectionDelta<N>{
      Field<N, 3>([tf, sig](const Point<N>& p) { return spencer_inverse<N>(tf(p), sig); },
                  {IndexKind::frame, IndexKind::frame, IndexKind::frame}),
      sig};
}

/// Canonical bases: eta-skew H (lowered H_{ikj} = -H_{jki}, i<j) and antisymmetric T
/// (T^a_{bc}, b<c). Both have dimension N * N(N-1)/2.
template <int N>
struct SpencerBasis {
  static constexpr int kDim = N * N * (N - 1) / 2;
  std::vector<Tensor<N, 3>> h;
  std::vector<std::array<int, 3>> t_index;
};

template <int N>
SpencerBasis<N> spencer_basis(const SignatureMetric<N>& sig) {
  SpencerBasis<N> b;
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        Tensor<N, 3> e;
        e(i, k, j) = sig(i);
        e(j, k, i) = -sig(j);
        b.h.push_back(e);
      }
  for (int a = 0; a < N; ++a)
    for (int c = 0; c < N; ++c)
      for (int d = c + 1; d < N; ++d) b.t_index.push_back({a, c, d});
  return b;
}

template <int N>
Eigen::MatrixXd spencer_matrix(const SignatureMetric<N>& sig) {
  const auto b = spencer_basis<N>(sig);
  constexpr int dim = SpencerBasis<N>::kDim;
  Eigen::MatrixXd m(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const Tensor<N, 3> t = spencer<N>(b.h[col]);
    for (int row = 0; row < dim; ++row) {
      const auto& ix = b.t_index[row];
      m(row, col) = t(ix[0], ix[1], ix[2]);
    }
  }
  return m;
}

struct SpencerMatrixReport {
  int dimension = 0;
  int rank = 0;
  double condition = 0.0;
  int kernel_dimension = 0;
};

template <int N>
SpencerMatrixReport spencer_matrix_report(const SignatureMetric<N>& sig, double rank_tol = 1e-12) {
  const Eigen::MatrixXd m = spencer_matrix<N>(sig);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  SpencerMatrixReport r;
  r.dimension = static_cast<int>(m.rows());
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > rank_tol * s(0)) ++r.rank;
  r.kernel_dimension = r.dimension - r.rank;
  r.condition = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
  return r;
}

/// Per-point dense solve of dH = T over the eta-skew basis; independent of the contorsion formula.
template <int N>
Tensor<N, 3> spencer_inverse_by_solve(const Tensor<N, 3>& t, const SignatureMetric<N>& sig) {
  const auto b = spencer_basis<N>(sig);
  constexpr int dim = SpencerBasis<N>::kDim;
  const Eigen::MatrixXd m = spencer_matrix<N>(sig);
  Eigen::VectorXd rhs(dim);
  for (int row = 0; row < dim; ++row) {
    const auto& ix = b.t_index[row];
    rhs(row) = t(ix[0], ix[1], ix[2]);
  }
  const Eigen::VectorXd c = m.fullPivLu().solve(rhs);
  Tensor<N, 3> out;
  for (int col = 0; col < dim; ++col) out += b.h[col] * c(col);
  return out;
}

/// Unique eta-skew torsion-free connection for a vielbein: coordinate Christoffels of
/// eta(theta, theta) converted to frame indices, then projected onto the skew part.
template <int N>
ConnectionCoefficients<N> levi_civita_frame_connection(const Vielbein<N>& v, const Differentiator<N>& d) {
  if (!regularity_check<N>(v, d.domain.sample_grid(kValidationPointsPerAxis)).regular)
    throw RegularityError("levi_civita_frame_connection: vielbein is singular");
  const oracle::MetricSpec<N> metric{metric_from_vielbein(v), "vielbein metric"};
  auto th = v.theta.eval;
  const Field<N, 2> e_inv = v.e_inv;
  return make_projected_connection<N>(d.domain, v.signature, [metric, th, e_inv, d](const Point<N>& p) {
    return frame_connection<N>(th(p), e_inv(p), gradient(e_inv, p, d), oracle::christoffel(metric, d, p));
  });
}

template <int N>
AffineGaugeField<N> levi_civita_gauge_field(const Vielbein<N>& v, const Differentiator<N>& d) {
  return make_gauge_field<N>(d.domain, v, levi_civita_frame_connection(v, d));
}

/// (L, T) -> (L, nabla^{oL} + d^{-1}(T)(L(.), .)).
template <int N>
AffineGaugeField<N> from_torsion(const Vielbein<N>& v, const TorsionField<N>& t, const Differentiator<N>& d) {
  const auto lc = levi_civita_frame_connection(v, d);
  const auto h = spencer_inverse(t, v.signature);
  auto g0 = lc.gamma.eval;
  auto th = v.theta.eval;
  auto hf = h.h.eval;
  Field<N, 3> gamma([g0, th, hf](const Point<N>& p) { return g0(p) + contract_with_theta<N>(hf(p), th(p)); },
                    {IndexKind::frame, IndexKind::coordinate, IndexKind::frame});
  return make_gauge_field<N>(d.domain, v, make_connection<N>(d.domain, v.signature, std::move(gamma)));
}

/// Same map built on an arbitrary metric reference connection nabla^o with torsion T^o:
///   nabla = nabla^o + d^{-1}(T - T^o)(L(.), .).
template <int N>
AffineGaugeField<N> from_torsion_with_reference(const Vielbein<N>& v, const TorsionField<N>& t,
                                                const ConnectionCoefficients<N>& reference,
                                                const Differentiator<N>& d) {
  const auto ref = make_gauge_field<N>(d.domain, v, reference);
  const auto t0 = torsion(ref, d);
  auto tf = t.t.eval;
  auto t0f = t0.t.eval;
  auto g0 = reference.gamma.eval;
  auto th = v.theta.eval;
  const auto sig = v.signature;
  Field<N, 3> gamma(
      [tf, t0f, g0, th, sig](const Point<N>& p) {
        return g0(p) + contract_with_theta<N>(spencer_inverse<N>(tf(p) - t0f(p), sig), th(p));
      },
      {IndexKind::frame, IndexKind::coordinate, IndexKind::frame});
  return make_gauge_field<N>(d.domain, v, make_connection<N>(d.domain, sig, std::move(gamma)));
}

}  // namespace gravgauge
