#pragma once

// Palatini density Alt(omega_o(R~ ^ L ^ ... ^ L)), the Hilbert density, vacuum residuals,
// and the pseudo-translation variation of the integrated density.

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <vector>

#include "gravgauge/pseudotranslation.hpp"

namespace gravgauge {

/// Calibrated once on the unit sphere (density / Hilbert density) and frozen.
inline constexpr double kPalatiniHilbertConstant = 1.0;

/// Permutations of {0..N-1} with their signs; eps_{i1..iN} on frame indices, +1 on the
/// ordered orthonormal frame.
template <int N>
struct VolumeForm {
  std::vector<std::array<int, N>> perms;
  std::vector<double> signs;

  VolumeForm() {
    std::array<int, N> p{};
    for (int k = 0; k < N; ++k) p[k] = k;
    do {
      perms.push_back(p);
      signs.push_back(sign(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }

  static double sign(const std::array<int, N>& p) {
    double s = 1.0;
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b)
        if (p[a] > p[b]) s = -s;
    return s;
  }
  static double eps(const std::array<int, N>& idx) {
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b)
        if (idx[a] == idx[b]) return 0.0;
    return sign(idx);
  }
};

/// 1 / (2 (n-2)!), the normalization that makes the density det(theta) Scal.
template <int N>
constexpr double palatini_normalization() {
  double f = 1.0;
  for (int k = 2; k <= N - 2; ++k) f *= k;
  return 1.0 / (2.0 * f);
}

/// F^m_{k mu nu} = d_mu G^m_{nu k} - d_nu G^m_{mu k} + G^m_{mu l} G^l_{nu k} - G^m_{nu l} G^l_{mu k}.
template <int N>
Tensor<N, 4> curvature_two_form(const Tensor<N, 3>& g, const Tensor<N, 4>& dg) {
  Tensor<N, 4> f;
  for (int m = 0; m < N; ++m)
    for (int k = 0; k < N; ++k)
      for (int mu = 0; mu < N; ++mu)
        for (int nu = 0; nu < N; ++nu) {
          double s = dg(mu, m, nu, k) - dg(nu, m, mu, k);
          for (int l = 0; l < N; ++l) s += g(m, mu, l) * g(l, nu, k) - g(m, nu, l) * g(l, mu, k);
          f(m, k, mu, nu) = s;
        }
  return f;
}

/// The signed terms of the Palatini density, one per (frame, coordinate) permutation pair:
///   N(n) sgn(pi) sgn(sigma) R~^{pi1 pi2}_{s1 s2} theta^{pi3}_{s3} ... theta^{pin}_{sn},
/// with R~_{ij}(X, Y) = eta(R_{L(X) L(Y)} e_i, e_j) and frame indices raised by eta.
template <int N>
std::vector<double> palatini_terms(const Tensor<N, 2>& th, const Tensor<N, 3>& gamma, const Tensor<N, 4>& dgamma,
                                   const SignatureMetric<N>& sig) {
  static const VolumeForm<N> vol;
  const Tensor<N, 4> f = curvature_two_form<N>(gamma, dgamma);
  // R~^{ij}_{mu nu} = -eta_i F^j_{i mu nu}
  Tensor<N, 4> rt;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int mu = 0; mu < N; ++mu)
        for (int nu = 0; nu < N; ++nu) rt(i, j, mu, nu) = -sig(i) * f(j, i, mu, nu);
  std::vector<double> terms;
  terms.reserve(vol.perms.size() * vol.perms.size());
  for (std::size_t a = 0; a < vol.perms.size(); ++a) {
    const auto& k = vol.perms[a];
    for (std::size_t b = 0; b < vol.perms.size(); ++b) {
      const auto& s = vol.perms[b];
      double term = rt(k[0], k[1], s[0], s[1]);
      for (int r = 2; r < N; ++r) term *= th(k[r], s[r]);
      terms.push_back(palatini_normalization<N>() * vol.signs[a] * vol.signs[b] * term);
    }
  }
  return terms;
}

/// Coefficient of dx^1 ^ ... ^ dx^n of the Palatini density from theta, Gamma and d Gamma.
template <int N>
double palatini_density_kernel(const Tensor<N, 2>& th, const Tensor<N, 3>& gamma, const Tensor<N, 4>& dgamma,
                               const SignatureMetric<N>& sig) {
  double total = 0.0;
  for (double t : palatini_terms<N>(th, gamma, dgamma, sig)) total += t;
  return total;
}

template <int N>
double palatini_density(const AffineGaugeField<N>& a, const Differentiator<N>& d, const Point<N>& p) {
  const Tensor<N, 2> th = a.vielbein.theta(p);
  if (!(det<N>(th) > 0.0)) throw OrientationError("palatini_density: vielbein is not positively oriented");
  return palatini_density_kernel<N>(th, a.conn.gamma(p), gradient(a.conn.gamma, p, d), a.signature());
}

/// Scal(g) sqrt|det g| with Scal from the Levi-Civita connection of g.
template <int N>
double hilbert_density(const GravField<N>& gf, const Differentiator<N>& d, const Point<N>& p) {
  const oracle::MetricSpec<N> m{gf.g, "gravitational field"};
  const double dg = det<N>(gf.g(p));
  if (!(std::abs(dg) > 0.0)) throw DegenerateMetric("hilbert_density: metric is degenerate");
  return oracle::scalar(m, d, p) * std::sqrt(std::abs(dg));
}

struct VacuumResiduals {
  double torsion = 0.0;
  double ricci = 0.0;
};

/// Sup over the sample of the frame torsion and of the coordinate Ricci tensor of the pulled
/// back curvature.
template <int N>
VacuumResiduals vacuum_residuals(const AffineGaugeField<N>& a, const Differentiator<N>& d,
                                 const std::vector<Point<N>>& sample) {
  const TorsionField<N> t = torsion(a, d);
  const Field<N, 4> r = pullback_curvature(a, curvature(a, d));
  VacuumResiduals out;
  for (const auto& p : sample) {
    out.torsion = std::max(out.torsion, max_abs(t.t(p)));
    out.ricci = std::max(out.ricci, max_abs(oracle::ricci_from_riemann<N>(r(p))));
  }
  return out;
}

/// Tensor-product Gauss-Legendre rule on a box.
template <int N, int Q>
struct GaussRule {
  std::vector<Point<N>> nodes;
  std::vector<double> weights;
};

template <int N, int Q>
GaussRule<N, Q> gauss_rule(const Chart<N>& box) {
  using G = boost::math::quadrature::gauss<double, Q>;
  std::vector<double> x1, w1;
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  for (std::size_t k = 0; k < ab.size(); ++k) {
    if (ab[k] == 0.0) {
      x1.push_back(0.0);
      w1.push_back(wt[k]);
    } else {
      x1.push_back(ab[k]);
      w1.push_back(wt[k]);
      x1.push_back(-ab[k]);
      w1.push_back(wt[k]);
    }
  }
  GaussRule<N, Q> rule;
  const int q = static_cast<int>(x1.size());
  for (int flat = 0; flat < ipow(q, N); ++flat) {
    int r = flat;
    Point<N> p;
    double w = 1.0;
    for (int a = N - 1; a >= 0; --a) {
      const int k = r % q;
      r /= q;
      const double half = 0.5 * box.extent(a);
      p[a] = box.lo[a] + half * (1.0 + x1[k]);
      w *= half * w1[k];
    }
    rule.nodes.push_back(p);
    rule.weights.push_back(w);
  }
  return rule;
}

/// X scaled by prod_a (1 - u_a^2)^4, u_a in [-1, 1] across the box; zero outside.
template <int N>
VectorField<N> bump_vector_field(const Chart<N>& box, const VectorField<N>& x) {
  return coordinate_vector_field<N>([box, x](const Point<N>& p) {
    double w = 1.0;
    for (int a = 0; a < N; ++a) {
      const double u = (2.0 * p[a] - box.lo[a] - box.hi[a]) / box.extent(a);
      if (std::abs(u) >= 1.0) return Tensor<N, 1>{};
      const double b = 1.0 - u * u;
      w *= b * b * b * b;
    }
    return x(p) * w;
  });
}

struct ActionVariation {
  double variation = 0.0;  // d/de of the integrated density along tau
  double scale = 0.0;      // same integral with every density term varied in absolute value
};

inline constexpr int kActionQuadratureNodes = 6;
inline constexpr double kActionVariationStep = 0.1;

/// d/de of the integral over `box` of the density of (theta + e dL, Gamma + e dGamma), with
/// (dL, dGamma) = tau^(X). The density is a polynomial of degree <= n in e, so the five-point
/// central difference in e is exact up to rounding.
template <int N, int Q = kActionQuadratureNodes>
ActionVariation pseudo_translation_action_variation(const AffineGaugeField<N>& a, const VectorField<N>& x,
                                                    const Chart<N>& box, const Differentiator<N>& d) {
  const PseudoTranslationVector<N> v = tau(a, x, d);
  const GaussRule<N, Q> rule = gauss_rule<N, Q>(box);
  const double h = kActionVariationStep;
  ActionVariation out;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Point<N>& p = rule.nodes[k];
    const Tensor<N, 2> th = a.vielbein.theta(p);
    const Tensor<N, 3> g = a.conn.gamma(p);
    const Tensor<N, 4> dg = gradient(a.conn.gamma, p, d);
    const Tensor<N, 2> dl = v.dL(p);
    const Tensor<N, 3> dgm = v.dGamma(p);
    const Tensor<N, 4> ddgm = gradient(v.dGamma, p, d);
    auto terms = [&](double e) {
      return palatini_terms<N>(th + dl * e, g + dgm * e, dg + ddgm * e, a.signature());
    };
    const std::vector<double> p2 = terms(2.0 * h), p1 = terms(h), m1 = terms(-h), m2 = terms(-2.0 * h);
    double deriv = 0.0, magnitude = 0.0;
    for (std::size_t t = 0; t < p2.size(); ++t) {
      const double dt = (-p2[t] + 8.0 * p1[t] - 8.0 * m1[t] + m2[t]) / (12.0 * h);
      deriv += dt;
      magnitude += std::abs(dt);
    }
    out.variation += rule.weights[k] * deriv;
    out.scale += rule.weights[k] * magnitude;
  }
  return out;
}

}  // namespace gravgauge
