#pragma once

// Classical coordinate-side computations straight from a metric or from coordinate
// connection coefficients. Used as the independent arbiter for every gauge-side result,
// so nothing here depends on the frame/connection/gauge headers.

#include <string>

#include "gravgauge/fields.hpp"
#include "gravgauge/linalg.hpp"

namespace gravgauge::oracle {

template <int N>
struct MetricSpec {
  Field<N, 2> g;
  std::string name;
};

template <int N>
Tensor<N, 2> inverse_metric(const Tensor<N, 2>& g) {
  const double dg = det<N>(g);
  if (!(std::abs(dg) > 1e-300) || !std::isfinite(dg)) throw DegenerateMetric("metric is degenerate");
  return inverse<N>(g);
}

/// Gamma^l_{mn} = 1/2 g^{ls} (d_m g_{sn} + d_n g_{sm} - d_s g_{mn}), layout [l][m][n].
template <int N>
Tensor<N, 3> christoffel(const MetricSpec<N>& m, const Differentiator<N>& d, const Point<N>& p) {
  const Tensor<N, 2> gi = inverse_metric<N>(m.g(p));
  const Tensor<N, 3> dg = gradient(m.g, p, d);
  Tensor<N, 3> lowered;  // [s][m][n]
  for (int s = 0; s < N; ++s)
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b) {
        const double v = 0.5 * (dg(a, s, b) + dg(b, s, a) - dg(s, a, b));
        lowered(s, a, b) = v;
        lowered(s, b, a) = v;
      }
  Tensor<N, 3> out;
  for (int l = 0; l < N; ++l)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        double v = 0.0;
        for (int s = 0; s < N; ++s) v += gi(l, s) * lowered(s, a, b);
        out(l, a, b) = v;
      }
  return out;
}

template <int N>
Field<N, 3> christoffel_field(const MetricSpec<N>& m, const Differentiator<N>& d) {
  return Field<N, 3>([m, d](const Point<N>& p) { return christoffel(m, d, p); },
                     {IndexKind::coordinate, IndexKind::coordinate, IndexKind::coordinate});
}

/// Curvature of coordinate connection coefficients, layout [l][m][n][s]:
///   d_n G^l_{ms} - d_m G^l_{ns} + G^l_{nk} G^k_{ms} - G^l_{mk} G^k_{ns}.
/// The derivative order matches the frame-side curvature so that both agree under pullback.
template <int N>
Tensor<N, 4> riemann_of_connection(const Field<N, 3>& gc, const Differentiator<N>& d, const Point<N>& p) {
  const Tensor<N, 3> g = gc(p);
  const Tensor<N, 4> dg = gradient(gc, p, d);  // [t][l][m][s]
  Tensor<N, 4> out;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n)
        for (int s = 0; s < N; ++s) {
          double v = dg(n, l, m, s) - dg(m, l, n, s);
          for (int k = 0; k < N; ++k) v += g(l, n, k) * g(k, m, s) - g(l, m, k) * g(k, n, s);
          out(l, m, n, s) = v;
        }
  return out;
}

template <int N>
Tensor<N, 4> riemann(const MetricSpec<N>& m, const Differentiator<N>& d, const Point<N>& p) {
  return riemann_of_connection(christoffel_field(m, d), d, p);
}

/// Ric_{sn} = sum_r Riem[r][n][r][s].
template <int N>
Tensor<N, 2> ricci_from_riemann(const Tensor<N, 4>& r) {
  Tensor<N, 2> out;
  for (int s = 0; s < N; ++s)
    for (int n = 0; n < N; ++n) {
      double v = 0.0;
      for (int k = 0; k < N; ++k) v += r(k, n, k, s);
      out(s, n) = v;
    }
  return out;
}

template <int N>
Tensor<N, 2> ricci(const MetricSpec<N>& m, const Differentiator<N>& d, const Point<N>& p) {
  return ricci_from_riemann<N>(riemann(m, d, p));
}

template <int N>
double trace_with(const Tensor<N, 2>& ginv, const Tensor<N, 2>& t) {
  double s = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) s += ginv(a, b) * t(a, b);
  return s;
}

template <int N>
double scalar(const MetricSpec<N>& m, const Differentiator<N>& d, const Point<N>& p) {
  return trace_with<N>(inverse_metric<N>(m.g(p)), ricci(m, d, p));
}

/// T^l_{mn} = G^l_{mn} - G^l_{nm}.
template <int N>
Tensor<N, 3> torsion_of_connection(const Tensor<N, 3>& g) {
  Tensor<N, 3> out;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) out(l, m, n) = g(l, m, n) - g(l, n, m);
  return out;
}

/// d_l g_{mn} - G^s_{lm} g_{sn} - G^s_{ln} g_{ms}; layout [l][m][n].
template <int N>
Tensor<N, 3> metric_compatibility(const Field<N, 2>& g, const Field<N, 3>& gc, const Differentiator<N>& d,
                                  const Point<N>& p) {
  const Tensor<N, 2> gv = g(p);
  const Tensor<N, 3> dg = gradient(g, p, d);
  const Tensor<N, 3> c = gc(p);
  Tensor<N, 3> out;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        double v = dg(l, m, n);
        for (int s = 0; s < N; ++s) v -= c(s, l, m) * gv(s, n) + c(s, l, n) * gv(m, s);
        out(l, m, n) = v;
      }
  return out;
}

/// Lie derivative of (non-tensorial) coordinate connection coefficients:
///   X^s d_s G^l_{mn} - d_s X^l G^s_{mn} + d_m X^s G^l_{sn} + d_n X^s G^l_{ms} + d_m d_n X^l.
template <int N>
Tensor<N, 3> lie_derivative_connection(const VectorField<N>& x, const Field<N, 3>& gc, const Differentiator<N>& d,
                                       const Point<N>& p) {
  const Tensor<N, 1> xv = x(p);
  const Tensor<N, 2> dx = gradient(x, p, d);                           // [s][l]
  const Tensor<N, 3> ddx = gradient(gradient_field(x, d), p, d);       // [m][n][l]
  const Tensor<N, 3> c = gc(p);
  const Tensor<N, 4> dc = gradient(gc, p, d);                          // [s][l][m][n]
  Tensor<N, 3> out;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        double v = ddx(m, n, l);
        for (int s = 0; s < N; ++s)
          v += xv(s) * dc(s, l, m, n) - dx(s, l) * c(s, m, n) + dx(m, s) * c(l, s, n) + dx(n, s) * c(l, m, s);
        out(l, m, n) = v;
      }
  return out;
}

}  // namespace gravgauge::oracle
