#pragma once

// Torsion and curvature of a metric affine gauge field, in frame components, plus
// their pullbacks to the chart.

#include "gravgauge/correspondence.hpp"

namespace gravgauge {

/// T^k_{ij}, layout [k][i][j].
template <int N>
struct TorsionField {
  Field<N, 3> t;
};

/// R^m_{ijk}, layout [m][i][j][k].
template <int N>
struct CurvatureField {
  Field<N, 4> r;
};

template <int N>
double torsion_antisymmetry_residual(const Tensor<N, 3>& t) {
  double r = 0.0;
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r = std::max(r, std::abs(t(k, i, j) + t(k, j, i)));
  return r;
}

/// Antisymmetry in (i,j) and eta-skewness in (m,k); returns the larger residual.
template <int N>
double curvature_symmetry_residual(const Tensor<N, 4>& c, const SignatureMetric<N>& sig) {
  double r = 0.0;
  for (int m = 0; m < N; ++m)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          r = std::max(r, std::abs(c(m, i, j, k) + c(m, j, i, k)));
          r = std::max(r, std::abs(sig(m) * c(m, i, j, k) + sig(k) * c(k, i, j, m)));
        }
  return r;
}

/// Pointwise first-order data of a gauge field.
template <int N>
struct GaugeJet {
  Tensor<N, 2> theta;   // [i][mu]
  Tensor<N, 2> e;       // [mu][i]
  Tensor<N, 3> dtheta;  // [s][i][mu]
  Tensor<N, 3> gamma;   // [i][mu][j]
  Tensor<N, 4> dgamma;  // [s][i][mu][j]
};

template <int N>
GaugeJet<N> jet_at(const AffineGaugeField<N>& a, const Point<N>& p, const Differentiator<N>& d) {
  GaugeJet<N> j;
  j.theta = a.vielbein.theta(p);
  j.e = a.vielbein.e_inv(p);
  j.dtheta = gradient(a.vielbein.theta, p, d);
  j.gamma = a.conn.gamma(p);
  j.dgamma = gradient(a.conn.gamma, p, d);
  return j;
}

/// Frame torsion from the jet, using d theta instead of d e:
///   T^k_{ij} = e^m_i e^n_j (d_m theta^k_n - d_n theta^k_m + G^k_{ml} theta^l_n - G^k_{nl} theta^l_m).
template <int N>
Tensor<N, 3> frame_torsion(const GaugeJet<N>& j) {
  Tensor<N, 3> two_form;  // [k][m][n]
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        double s = j.dtheta(m, k, n) - j.dtheta(n, k, m);
        for (int l = 0; l < N; ++l) s += j.gamma(k, m, l) * j.theta(l, n) - j.gamma(k, n, l) * j.theta(l, m);
        two_form(k, m, n) = s;
      }
  Tensor<N, 3> out;
  for (int k = 0; k < N; ++k)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        double s = 0.0;
        for (int m = 0; m < N; ++m)
          for (int n = 0; n < N; ++n) s += j.e(m, a) * j.e(n, b) * two_form(k, m, n);
        out(k, a, b) = s;
      }
  return out;
}

/// R^m_{ijk} = e^mu_i e^nu_j (d_nu G^m_{mu k} - d_mu G^m_{nu k} - G^m_{mu l} G^l_{nu k} + G^m_{nu l} G^l_{mu k}).
template <int N>
Tensor<N, 4> frame_curvature(const Tensor<N, 2>& e, const Tensor<N, 3>& gamma, const Tensor<N, 4>& dgamma) {
  Tensor<N, 4> two_form;  // [m][k][mu][nu]
  for (int m = 0; m < N; ++m)
    for (int k = 0; k < N; ++k)
      for (int mu = 0; mu < N; ++mu)
        for (int nu = 0; nu < N; ++nu) {
          double s = dgamma(nu, m, mu, k) - dgamma(mu, m, nu, k);
          for (int l = 0; l < N; ++l) s += -gamma(m, mu, l) * gamma(l, nu, k) + gamma(m, nu, l) * gamma(l, mu, k);
          two_form(m, k, mu, nu) = s;
        }
  Tensor<N, 4> half;  // [m][k][i][nu]
  for (int m = 0; m < N; ++m)
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int nu = 0; nu < N; ++nu) {
          double s = 0.0;
          for (int mu = 0; mu < N; ++mu) s += e(mu, i) * two_form(m, k, mu, nu);
          half(m, k, i, nu) = s;
        }
  Tensor<N, 4> out;
  for (int m = 0; m < N; ++m)
    for (int i = 0; i < N; ++i)
      for (int jj = 0; jj < N; ++jj)
        for (int k = 0; k < N; ++k) {
          double s = 0.0;
          for (int nu = 0; nu < N; ++nu) s += e(nu, jj) * half(m, k, i, nu);
          out(m, i, jj, k) = s;
        }
  return out;
}

template <int N>
Tensor<N, 4> frame_curvature(const GaugeJet<N>& j) {
  return frame_curvature<N>(j.e, j.gamma, j.dgamma);
}

/// Torsion by its definition on constant frame sections, with the bracket of the
/// vielbein vector fields mapped into E by L:
///   T^k_{ij} = e^mu_i G^k_{mu j} - e^mu_j G^k_{mu i} - theta^k_mu [e_i, e_j]^mu.
template <int N>
TorsionField<N> torsion(const AffineGaugeField<N>& a, const Differentiator<N>& d) {
  auto th = a.vielbein.theta.eval;
  const Field<N, 2> e_inv = a.vielbein.e_inv;
  auto gamma = a.conn.gamma.eval;
  Field<N, 3> t(
      [th, e_inv, gamma, d](const Point<N>& p) {
        const Tensor<N, 2> thv = th(p), ev = e_inv(p);
        const Tensor<N, 3> de = gradient(e_inv, p, d);  // [s][mu][i]
        const Tensor<N, 3> g = gamma(p);
        Tensor<N, 3> out;
        for (int i = 0; i < N; ++i)
          for (int j = i + 1; j < N; ++j) {
            Tensor<N, 1> bracket;
            for (int mu = 0; mu < N; ++mu) {
              double s = 0.0;
              for (int nu = 0; nu < N; ++nu) s += ev(nu, i) * de(nu, mu, j) - ev(nu, j) * de(nu, mu, i);
              bracket(mu) = s;
            }
            for (int k = 0; k < N; ++k) {
              double s = 0.0;
              for (int mu = 0; mu < N; ++mu) s += ev(mu, i) * g(k, mu, j) - ev(mu, j) * g(k, mu, i) - thv(k, mu) * bracket(mu);
              out(k, i, j) = s;
              out(k, j, i) = -s;
            }
          }
        return out;
      },
      {IndexKind::frame, IndexKind::frame, IndexKind::frame});
  return TorsionField<N>{std::move(t)};
}

template <int N>
CurvatureField<N> curvature(const AffineGaugeField<N>& a, const Differentiator<N>& d) {
  auto e = a.vielbein.e_inv.eval;
  const Field<N, 3> gamma = a.conn.gamma;
  Field<N, 4> r([e, gamma, d](const Point<N>& p) { return frame_curvature<N>(e(p), gamma(p), gradient(gamma, p, d)); },
                {IndexKind::frame, IndexKind::frame, IndexKind::frame, IndexKind::frame});
  return CurvatureField<N>{std::move(r)};
}

/// T^l_{mn} = e^l_k theta^i_m theta^j_n T^k_{ij}.
template <int N>
Tensor<N, 3> pullback_torsion_point(const Tensor<N, 2>& th, const Tensor<N, 2>& e, const Tensor<N, 3>& t) {
  Tensor<N, 3> a;  // [k][m][j]
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < N; ++m)
      for (int j = 0; j < N; ++j) {
        double s = 0.0;
        for (int i = 0; i < N; ++i) s += th(i, m) * t(k, i, j);
        a(k, m, j) = s;
      }
  Tensor<N, 3> b;  // [k][m][n]
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) s += th(j, n) * a(k, m, j);
        b(k, m, n) = s;
      }
  Tensor<N, 3> out;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += e(l, k) * b(k, m, n);
        out(l, m, n) = s;
      }
  return out;
}

template <int N>
Field<N, 3> pullback_torsion(const AffineGaugeField<N>& a, const TorsionField<N>& t) {
  auto th = a.vielbein.theta.eval;
  auto e = a.vielbein.e_inv.eval;
  auto tf = t.t.eval;
  return Field<N, 3>([th, e, tf](const Point<N>& p) { return pullback_torsion_point<N>(th(p), e(p), tf(p)); },
                     {IndexKind::coordinate, IndexKind::coordinate, IndexKind::coordinate});
}

/// R^l_{mns} = e^l_a theta^i_m theta^j_n theta^k_s R^a_{ijk}.
template <int N>
Tensor<N, 4> pullback_curvature_point(const Tensor<N, 2>& th, const Tensor<N, 2>& e, const Tensor<N, 4>& r) {
  Tensor<N, 4> cur = r;
  // Transform one slot at a time; slot 0 uses e, slots 1..3 use theta.
  for (int slot = 0; slot < 4; ++slot) {
    Tensor<N, 4> next;
    for (int a0 = 0; a0 < N; ++a0)
      for (int a1 = 0; a1 < N; ++a1)
        for (int a2 = 0; a2 < N; ++a2)
          for (int a3 = 0; a3 < N; ++a3) {
            int idx[4] = {a0, a1, a2, a3};
            const int target = idx[slot];
            double s = 0.0;
            for (int f = 0; f < N; ++f) {
              idx[slot] = f;
              const double w = slot == 0 ? e(target, f) : th(f, target);
              s += w * cur(idx[0], idx[1], idx[2], idx[3]);
            }
            next(a0, a1, a2, a3) = s;
          }
    cur = next;
  }
  return cur;
}

template <int N>
Field<N, 4> pullback_curvature(const AffineGaugeField<N>& a, const CurvatureField<N>& r) {
  auto th = a.vielbein.theta.eval;
  auto e = a.vielbein.e_inv.eval;
  auto rf = r.r.eval;
  return Field<N, 4>([th, e, rf](const Point<N>& p) { return pullback_curvature_point<N>(th(p), e(p), rf(p)); },
                     {IndexKind::coordinate, IndexKind::coordinate, IndexKind::coordinate, IndexKind::coordinate});
}

/// Ric_{ki} = sum_m R^m_{imk} (frame components; symmetric for torsion-free fields).
template <int N>
Tensor<N, 2> frame_ricci(const Tensor<N, 4>& r) {
  Tensor<N, 2> out;
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i) {
      double s = 0.0;
      for (int m = 0; m < N; ++m) s += r(m, i, m, k);
      out(k, i) = s;
    }
  return out;
}

template <int N>
double frame_scalar(const Tensor<N, 4>& r, const SignatureMetric<N>& sig) {
  const Tensor<N, 2> ric = frame_ricci<N>(r);
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += sig(i) * ric(i, i);
  return s;
}

/// (nabla_{e_i} T)^m_{jk} with e_i = L^{-1}(e^o_i); layout [i][m][j][k].
template <int N>
Tensor<N, 4> covariant_derivative_torsion(const AffineGaugeField<N>& a, const TorsionField<N>& t, const Point<N>& p,
                                          const Differentiator<N>& d) {
  const Tensor<N, 2> e = a.vielbein.e_inv(p);
  const Tensor<N, 3> g = a.conn.gamma(p);
  const Tensor<N, 3> tv = t.t(p);
  const Tensor<N, 4> dt = gradient(t.t, p, d);  // [mu][m][j][k]
  Tensor<N, 4> coord;                            // [mu][m][j][k]
  for (int mu = 0; mu < N; ++mu)
    for (int m = 0; m < N; ++m)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          double s = dt(mu, m, j, k);
          for (int l = 0; l < N; ++l)
            s += g(m, mu, l) * tv(l, j, k) - g(l, mu, j) * tv(m, l, k) - g(l, mu, k) * tv(m, j, l);
          coord(mu, m, j, k) = s;
        }
  Tensor<N, 4> out;
  for (int i = 0; i < N; ++i)
    for (int m = 0; m < N; ++m)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          double s = 0.0;
          for (int mu = 0; mu < N; ++mu) s += e(mu, i) * coord(mu, m, j, k);
          out(i, m, j, k) = s;
        }
  return out;
}

}  // namespace gravgauge
