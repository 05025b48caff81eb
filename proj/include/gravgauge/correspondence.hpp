#pragma once

// The map (L, nabla) -> (g, nabla^L) and its inverse up to rotations.

#include "gravgauge/connection.hpp"
#include "gravgauge/oracle.hpp"

namespace gravgauge {

/// Gamma^l_{mn} = e^l_k (d_m theta^k_n + Gamma^k_{m j} theta^j_n); dtheta is [s][i][mu].
template <int N>
Tensor<N, 3> coordinate_connection(const Tensor<N, 2>& th, const Tensor<N, 2>& e, const Tensor<N, 3>& dtheta,
                                   const Tensor<N, 3>& gamma) {
  Tensor<N, 3> inner;  // [k][m][n]
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        double s = dtheta(m, k, n);
        for (int j = 0; j < N; ++j) s += gamma(k, m, j) * th(j, n);
        inner(k, m, n) = s;
      }
  Tensor<N, 3> out;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += e(l, k) * inner(k, m, n);
        out(l, m, n) = s;
      }
  return out;
}

/// Inverse direction: Gamma^i_{mj} = theta^i_l (d_m e^l_j + Gc^l_{m n} e^n_j); de is [s][mu][i].
template <int N>
Tensor<N, 3> frame_connection(const Tensor<N, 2>& th, const Tensor<N, 2>& e, const Tensor<N, 3>& de,
                              const Tensor<N, 3>& gc) {
  Tensor<N, 3> inner;  // [l][m][j]
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m)
      for (int j = 0; j < N; ++j) {
        double s = de(m, l, j);
        for (int n = 0; n < N; ++n) s += gc(l, m, n) * e(n, j);
        inner(l, m, j) = s;
      }
  Tensor<N, 3> out;
  for (int i = 0; i < N; ++i)
    for (int m = 0; m < N; ++m)
      for (int j = 0; j < N; ++j) {
        double s = 0.0;
        for (int l = 0; l < N; ++l) s += th(i, l) * inner(l, m, j);
        out(i, m, j) = s;
      }
  return out;
}

/// (g, nabla^L) from a vielbein and a metric frame connection.
template <int N>
GravField<N> push_metric_connection(const Vielbein<N>& v, const ConnectionCoefficients<N>& c,
                                    const Differentiator<N>& d) {
  if (!(v.signature == c.signature)) throw InvalidArgument("push_metric_connection: signatures differ");
  if (!regularity_check<N>(v, d.domain.sample_grid(kValidationPointsPerAxis)).regular)
    throw RegularityError("push_metric_connection: vielbein is singular");
  const Field<N, 2> theta = v.theta;
  auto e = v.e_inv.eval;
  auto gamma = c.gamma.eval;
  Field<N, 3> gc(
      [theta, e, gamma, d](const Point<N>& p) {
        return coordinate_connection<N>(theta(p), e(p), gradient(theta, p, d), gamma(p));
      },
      {IndexKind::coordinate, IndexKind::coordinate, IndexKind::coordinate});
  return GravField<N>{metric_from_vielbein(v), std::move(gc), v.signature};
}

template <int N>
GravField<N> iota(const AffineGaugeField<N>& a, const Differentiator<N>& d) {
  return push_metric_connection(a.vielbein, a.conn, d);
}

/// A gauge field (L, L o nabla' o L^-1) mapping onto a given gravitational field, with L the
/// eigen-frame of g.
template <int N>
AffineGaugeField<N> gauge_field_from_grav(const GravField<N>& gf, const Differentiator<N>& d) {
  Vielbein<N> v = frame_from_metric(gf.g, gf.signature);
  const Field<N, 2> e_inv = v.e_inv;
  auto th = v.theta.eval;
  auto gc = gf.gamma_coord.eval;
  auto conn = make_projected_connection<N>(d.domain, gf.signature, [th, e_inv, gc, d](const Point<N>& p) {
    return frame_connection<N>(th(p), e_inv(p), gradient(e_inv, p, d), gc(p));
  });
  return make_gauge_field<N>(d.domain, std::move(v), std::move(conn));
}

/// Sup over the sample of the metric-compatibility residual of a gravitational field.
template <int N>
double metric_compatibility_sup(const GravField<N>& gf, const Differentiator<N>& d,
                                const std::vector<Point<N>>& sample) {
  double r = 0.0;
  for (const auto& p : sample) r = std::max(r, max_abs(oracle::metric_compatibility(gf.g, gf.gamma_coord, d, p)));
  return r;
}

}  // namespace gravgauge
