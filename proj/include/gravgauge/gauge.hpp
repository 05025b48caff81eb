#pragma once

// Point-dependent rotations and translations acting on (L, nabla).

#include <variant>
#include <vector>

#include "gravgauge/correspondence.hpp"
#include "gravgauge/curvature.hpp"

namespace gravgauge {

inline constexpr double kIsometryTolerance = 1e-12;

/// h^j_i (layout [j][i]) with its inverse stored explicitly.
template <int N>
struct RotationField {
  Field<N, 2> h;
  Field<N, 2> h_inv;
  SignatureMetric<N> signature;
};

/// xi^i.
template <int N>
struct TranslationField {
  Field<N, 1> xi;
};

/// max of |h^T eta h - eta| and |h h^-1 - 1|.
template <int N>
double isometry_residual(const Tensor<N, 2>& h, const Tensor<N, 2>& h_inv, const SignatureMetric<N>& sig) {
  double r = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      double s = 0.0, u = 0.0;
      for (int k = 0; k < N; ++k) {
        s += h(k, a) * sig(k) * h(k, b);
        u += h(a, k) * h_inv(k, b);
      }
      r = std::max(r, std::abs(s - (a == b ? sig(a) : 0.0)));
      r = std::max(r, std::abs(u - (a == b ? 1.0 : 0.0)));
    }
  return r;
}

template <int N>
RotationField<N> make_rotation(const Chart<N>& chart, const SignatureMetric<N>& sig, Field<N, 2> h,
                               Field<N, 2> h_inv, double tol = kIsometryTolerance) {
  h.kinds = {IndexKind::frame, IndexKind::frame};
  h_inv.kinds = {IndexKind::frame, IndexKind::frame};
  for (const auto& p : chart.sample_grid(kValidationPointsPerAxis)) {
    const double r = isometry_residual<N>(h(p), h_inv(p), sig);
    if (!(r <= tol)) throw IsometryError("rotation field is not an isometry of eta (residual " + std::to_string(r) + ")");
  }
  return RotationField<N>{std::move(h), std::move(h_inv), sig};
}

template <int N>
RotationField<N> identity_rotation(const SignatureMetric<N>& sig) {
  const auto id = constant_field<N, 2>(identity_tensor<N>(), {IndexKind::frame, IndexKind::frame});
  return RotationField<N>{id, id, sig};
}

template <int N>
TranslationField<N> make_translation(const Chart<N>& chart, Field<N, 1> xi) {
  xi.kinds = {IndexKind::frame};
  for (const auto& p : chart.sample_grid(kValidationPointsPerAxis))
    if (!all_finite(xi(p))) throw NumericDomainError("translation field is not finite on the chart");
  return TranslationField<N>{std::move(xi)};
}

/// theta' = h theta, Gamma'_mu = h Gamma_mu h^-1 + h d_mu(h^-1).
template <int N>
AffineGaugeField<N> act_rotation(const RotationField<N>& r, const AffineGaugeField<N>& a, const Differentiator<N>& d) {
  if (!(r.signature == a.signature())) throw IsometryError("act_rotation: rotation signature differs from field");
  for (const auto& p : a.chart.sample_grid(kValidationPointsPerAxis))
    if (!(isometry_residual<N>(r.h(p), r.h_inv(p), r.signature) <= kIsometryTolerance))
      throw IsometryError("act_rotation: rotation is not an isometry");
  auto h = r.h.eval;
  auto th = a.vielbein.theta.eval;
  auto e = a.vielbein.e_inv.eval;
  const Field<N, 2> h_inv = r.h_inv;
  Field<N, 2> theta([h, th](const Point<N>& p) { return matmul<N>(h(p), th(p)); }, {});
  Field<N, 2> e_inv([e, h_inv](const Point<N>& p) { return matmul<N>(e(p), h_inv(p)); }, {});
  auto gamma = a.conn.gamma.eval;
  auto conn = make_projected_connection<N>(a.chart, a.signature(), [h, h_inv, gamma, d](const Point<N>& p) {
    const Tensor<N, 2> hv = h(p), hi = h_inv(p);
    const Tensor<N, 3> g = gamma(p);
    const Tensor<N, 3> dhi = gradient(h_inv, p, d);  // [mu][l][i]
    Tensor<N, 3> out;
    for (int mu = 0; mu < N; ++mu) {
      Tensor<N, 2> gm, dm;
      for (int l = 0; l < N; ++l)
        for (int k = 0; k < N; ++k) {
          gm(l, k) = g(l, mu, k);
          dm(l, k) = dhi(mu, l, k);
        }
      const Tensor<N, 2> res = matmul<N>(matmul<N>(hv, gm), hi) + matmul<N>(hv, dm);
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) out(j, mu, i) = res(j, i);
    }
    return out;
  });
  return make_gauge_field<N>(a.chart, make_vielbein<N>(std::move(theta), std::move(e_inv), a.signature()),
                             std::move(conn));
}

/// theta' = theta - d xi - Gamma xi; the connection is unchanged.
template <int N>
AffineGaugeField<N> act_translation(const TranslationField<N>& t, const AffineGaugeField<N>& a,
                                    const Differentiator<N>& d) {
  auto th = a.vielbein.theta.eval;
  const Field<N, 1> xi = t.xi;
  auto gamma = a.conn.gamma.eval;
  Field<N, 2> theta(
      [th, xi, gamma, d](const Point<N>& p) {
        const Tensor<N, 2> dxi = gradient(xi, p, d);
        const Tensor<N, 1> x = xi(p);
        const Tensor<N, 3> g = gamma(p);
        Tensor<N, 2> out = th(p);
        for (int j = 0; j < N; ++j)
          for (int mu = 0; mu < N; ++mu) {
            double s = dxi(mu, j);
            for (int l = 0; l < N; ++l) s += g(j, mu, l) * x(l);
            out(j, mu) -= s;
          }
        return out;
      },
      {});
  Vielbein<N> v = make_vielbein<N>(std::move(theta), a.signature());
  if (!regularity_check<N>(v, a.chart.sample_grid(kValidationPointsPerAxis)).regular)
    throw TranslatedFieldSingular("act_translation: translated vielbein is singular");
  return AffineGaugeField<N>{a.chart, std::move(v), a.conn};
}

/// One primitive action of a composite gauge transformation.
template <int N>
using GaugeStep = std::variant<RotationField<N>, TranslationField<N>>;

/// Ordered primitive actions, applied left to right.
template <int N>
struct GaugeTransformation {
  std::vector<GaugeStep<N>> steps;
};

template <int N>
AffineGaugeField<N> apply(const GaugeTransformation<N>& f, AffineGaugeField<N> a, const Differentiator<N>& d) {
  for (const auto& step : f.steps) {
    if (const auto* r = std::get_if<RotationField<N>>(&step))
      a = act_rotation(*r, a, d);
    else
      a = act_translation(std::get<TranslationField<N>>(step), a, d);
  }
  return a;
}

/// The fibre map v -> h v + xi of a gauge transformation at a point.
template <int N>
struct AffinePart {
  Tensor<N, 2> h;
  Tensor<N, 1> xi;
};

template <int N>
Tensor<N, 1> apply_affine(const AffinePart<N>& f, const Tensor<N, 1>& v) {
  Tensor<N, 1> out = f.xi;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out(i) += f.h(i, j) * v(j);
  return out;
}

template <int N>
AffinePart<N> affine_part(const GaugeTransformation<N>& f, const Point<N>& p) {
  AffinePart<N> acc{identity_tensor<N>(), {}};
  for (const auto& step : f.steps) {
    if (const auto* r = std::get_if<RotationField<N>>(&step)) {
      const Tensor<N, 2> h = r->h(p);
      acc.h = matmul<N>(h, acc.h);
      Tensor<N, 1> xi;
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) xi(i) += h(i, j) * acc.xi(j);
      acc.xi = xi;
    } else {
      acc.xi += std::get<TranslationField<N>>(step).xi(p);
    }
  }
  return acc;
}

/// Unique split f = xi o h read off the fibre map: xi = f(0), h e_i = f(e_i) - f(0).
template <int N>
AffinePart<N> decompose(const GaugeTransformation<N>& f, const Point<N>& p) {
  const AffinePart<N> a = affine_part(f, p);
  const Tensor<N, 1> origin = apply_affine(a, Tensor<N, 1>{});
  AffinePart<N> out{{}, origin};
  for (int i = 0; i < N; ++i) {
    Tensor<N, 1> ei;
    ei(i) = 1.0;
    const Tensor<N, 1> img = apply_affine(a, ei);
    for (int j = 0; j < N; ++j) out.h(j, i) = img(j) - origin(j);
  }
  return out;
}

/// Rotation first, then translation.
template <int N>
GaugeTransformation<N> compose(const RotationField<N>& r, const TranslationField<N>& t) {
  return GaugeTransformation<N>{{GaugeStep<N>(r), GaugeStep<N>(t)}};
}

/// sup over the sample of |(L - nabla xi) + nabla xi - L|.
template <int N>
double invariance_basepoint_shift(const TranslationField<N>& t, const AffineGaugeField<N>& a,
                                  const Differentiator<N>& d, const std::vector<Point<N>>& sample) {
  const AffineGaugeField<N> moved = act_translation(t, a, d);
  double r = 0.0;
  for (const auto& p : sample) {
    const Tensor<N, 2> restored = moved.vielbein.theta(p) + covariant_derivative_all(moved, t.xi, p, d);
    r = std::max(r, max_abs_diff(restored, a.vielbein.theta(p)));
  }
  return r;
}

/// T' = h T(h^-1 ., h^-1 .).
template <int N>
Tensor<N, 3> rotate_torsion(const Tensor<N, 3>& t, const Tensor<N, 2>& h, const Tensor<N, 2>& h_inv) {
  Tensor<N, 3> out;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        double s = 0.0;
        for (int k = 0; k < N; ++k)
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) s += h(a, k) * t(k, i, j) * h_inv(i, b) * h_inv(j, c);
        out(a, b, c) = s;
      }
  return out;
}

/// R' = h R(h^-1 ., h^-1 .) h^-1.
template <int N>
Tensor<N, 4> rotate_curvature(const Tensor<N, 4>& r, const Tensor<N, 2>& h, const Tensor<N, 2>& h_inv) {
  Tensor<N, 4> cur = r;
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
              s += (slot == 0 ? h(target, f) : h_inv(f, target)) * cur(idx[0], idx[1], idx[2], idx[3]);
            }
            next(a0, a1, a2, a3) = s;
          }
    cur = next;
  }
  return cur;
}

}  // namespace gravgauge
