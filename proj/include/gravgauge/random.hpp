#pragma once

// Seeded random test fields: low-degree polynomials in chart coordinates normalized to
// [-1,1], coefficients uniform in [-1,1].

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <random>
#include <vector>

#include "gravgauge/gauge.hpp"

namespace gravgauge {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Polynomial of total degree <= `degree` in u = (x - center) / half_extent.
template <int N>
struct Polynomial {
  std::vector<std::array<int, N>> powers;
  std::vector<double> coeffs;
  Point<N> center{};
  Point<N> half{};

  double operator()(const Point<N>& p) const {
    Point<N> u;
    for (int a = 0; a < N; ++a) u[a] = (p[a] - center[a]) / half[a];
    double s = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      double m = coeffs[k];
      for (int a = 0; a < N; ++a)
        for (int e = 0; e < powers[k][a]; ++e) m *= u[a];
      s += m;
    }
    return s;
  }
};

template <int N>
std::vector<std::array<int, N>> monomials(int degree) {
  std::vector<std::array<int, N>> out;
  std::array<int, N> e{};
  const int total = ipow(degree + 1, N);
  for (int flat = 0; flat < total; ++flat) {
    int r = flat, sum = 0;
    for (int a = 0; a < N; ++a) {
      e[a] = r % (degree + 1);
      r /= degree + 1;
      sum += e[a];
    }
    if (sum <= degree) out.push_back(e);
  }
  return out;
}

/// Coefficients scaled so that |p| <= amplitude on the chart.
template <int N>
Polynomial<N> random_polynomial(Rng& rng, const Chart<N>& chart, int degree, double amplitude = 1.0) {
  Polynomial<N> poly;
  poly.powers = monomials<N>(degree);
  poly.center = chart.center();
  for (int a = 0; a < N; ++a) poly.half[a] = 0.5 * chart.extent(a);
  const double scale = amplitude / static_cast<double>(poly.powers.size());
  for (std::size_t k = 0; k < poly.powers.size(); ++k) poly.coeffs.push_back(scale * uniform(rng));
  return poly;
}

template <int N>
VectorField<N> random_vector_field(Rng& rng, const Chart<N>& chart, int degree = 2, double amplitude = 1.0) {
  std::array<Polynomial<N>, N> comps;
  for (auto& c : comps) c = random_polynomial<N>(rng, chart, degree, amplitude);
  return coordinate_vector_field<N>([comps](const Point<N>& p) {
    Tensor<N, 1> v;
    for (int a = 0; a < N; ++a) v(a) = comps[a](p);
    return v;
  });
}

/// X^m = amplitude sin(k_m . u + phi_m), u normalized to [-1,1]; wave numbers in [0.5, 1.5].
/// Not a polynomial, so finite differences of it carry a visible truncation error.
template <int N>
VectorField<N> random_trig_vector_field(Rng& rng, const Chart<N>& chart, double amplitude = 0.5) {
  std::array<Point<N>, N> k;
  std::array<double, N> phase;
  for (int m = 0; m < N; ++m) {
    for (int a = 0; a < N; ++a) k[m][a] = uniform(rng, 0.5, 1.5);
    phase[m] = uniform(rng, -3.0, 3.0);
  }
  const Point<N> c = chart.center();
  Point<N> half;
  for (int a = 0; a < N; ++a) half[a] = 0.5 * chart.extent(a);
  return coordinate_vector_field<N>([k, phase, c, half, amplitude](const Point<N>& p) {
    Tensor<N, 1> v;
    for (int m = 0; m < N; ++m) {
      double s = phase[m];
      for (int a = 0; a < N; ++a) s += k[m][a] * (p[a] - c[a]) / half[a];
      v(m) = amplitude * std::sin(s);
    }
    return v;
  });
}

template <int N>
TranslationField<N> random_translation(Rng& rng, const Chart<N>& chart, int degree = 2, double amplitude = 0.1) {
  auto v = random_vector_field<N>(rng, chart, degree, amplitude);
  return make_translation<N>(chart, Field<N, 1>(v.eval, {IndexKind::frame}));
}

/// A(x) with eta A antisymmetric; entries are polynomials.
template <int N>
Field<N, 2> random_generator(Rng& rng, const Chart<N>& chart, const SignatureMetric<N>& sig, int degree,
                             double amplitude) {
  std::vector<Polynomial<N>> polys;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) polys.push_back(random_polynomial<N>(rng, chart, degree, amplitude));
  return Field<N, 2>(
      [polys, sig](const Point<N>& p) {
        Tensor<N, 2> a;
        int k = 0;
        for (int i = 0; i < N; ++i)
          for (int j = i + 1; j < N; ++j, ++k) {
            const double s = polys[k](p);
            a(i, j) = sig(i) * s;
            a(j, i) = -sig(j) * s;
          }
        return a;
      },
      {IndexKind::frame, IndexKind::frame});
}

template <int N>
Tensor<N, 2> matrix_exp(const Tensor<N, 2>& a) {
  const Mat<N> m = to_mat<N>(a);
  return from_mat<N>(m.exp());
}

/// h = exp(A(x)), h^-1 = exp(-A(x)).
template <int N>
RotationField<N> rotation_from_generator(const Chart<N>& chart, const SignatureMetric<N>& sig, Field<N, 2> gen) {
  auto g = gen.eval;
  Field<N, 2> h([g](const Point<N>& p) { return matrix_exp<N>(g(p)); }, {});
  Field<N, 2> h_inv([g](const Point<N>& p) { return matrix_exp<N>(g(p) * -1.0); }, {});
  return make_rotation<N>(chart, sig, std::move(h), std::move(h_inv));
}

template <int N>
RotationField<N> random_rotation(Rng& rng, const Chart<N>& chart, const SignatureMetric<N>& sig, int degree = 2,
                                 double amplitude = 1.0) {
  return rotation_from_generator<N>(chart, sig, random_generator<N>(rng, chart, sig, degree, amplitude));
}

/// sup over the sample of |d h|.
template <int N>
double rotation_gradient_norm(const RotationField<N>& r, const Differentiator<N>& d,
                              const std::vector<Point<N>>& sample) {
  double m = 0.0;
  for (const auto& p : sample) m = std::max(m, max_abs(gradient(r.h, p, d)));
  return m;
}

/// Random eta-skew connection coefficients.
template <int N>
ConnectionCoefficients<N> random_connection(Rng& rng, const Chart<N>& chart, const SignatureMetric<N>& sig,
                                            int degree = 2, double amplitude = 1.0) {
  std::vector<Field<N, 2>> gens;
  for (int mu = 0; mu < N; ++mu) gens.push_back(random_generator<N>(rng, chart, sig, degree, amplitude));
  Field<N, 3> gamma(
      [gens](const Point<N>& p) {
        Tensor<N, 3> out;
        for (int mu = 0; mu < N; ++mu) {
          const Tensor<N, 2> a = gens[mu](p);
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) out(i, mu, j) = a(i, j);
        }
        return out;
      },
      {});
  return make_connection<N>(chart, sig, std::move(gamma));
}

/// theta = base + perturbation with |perturbation entries| <= amplitude.
template <int N>
Vielbein<N> random_vielbein(Rng& rng, const Chart<N>& chart, const SignatureMetric<N>& sig, int degree = 2,
                            double amplitude = 0.2) {
  std::vector<Polynomial<N>> polys;
  for (int k = 0; k < N * N; ++k) polys.push_back(random_polynomial<N>(rng, chart, degree, amplitude));
  Field<N, 2> theta(
      [polys](const Point<N>& p) {
        Tensor<N, 2> t = identity_tensor<N>();
        for (int k = 0; k < N * N; ++k) t.v[k] += polys[k](p);
        return t;
      },
      {});
  return make_vielbein<N>(std::move(theta), sig);
}

/// Pointwise antisymmetric T^k_{ij} with entries uniform in [-amplitude, amplitude].
template <int N>
Tensor<N, 3> random_torsion_value(Rng& rng, double amplitude = 1.0) {
  Tensor<N, 3> t;
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        const double v = amplitude * uniform(rng);
        t(k, i, j) = v;
        t(k, j, i) = -v;
      }
  return t;
}

template <int N>
TorsionField<N> random_torsion(Rng& rng, const Chart<N>& chart, int degree = 2, double amplitude = 1.0) {
  std::vector<Polynomial<N>> polys;
  for (int k = 0; k < N * N * (N - 1) / 2; ++k) polys.push_back(random_polynomial<N>(rng, chart, degree, amplitude));
  return TorsionField<N>{Field<N, 3>(
      [polys](const Point<N>& p) {
        Tensor<N, 3> t;
        int n = 0;
        for (int k = 0; k < N; ++k)
          for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j, ++n) {
              const double v = polys[n](p);
              t(k, i, j) = v;
              t(k, j, i) = -v;
            }
        return t;
      },
      {IndexKind::frame, IndexKind::frame, IndexKind::frame})};
}

/// Random eta-skew H^i_{kj}.
template <int N>
Tensor<N, 3> random_skew_delta_value(Rng& rng, const SignatureMetric<N>& sig, double amplitude = 1.0) {
  Tensor<N, 3> h;
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        const double v = amplitude * uniform(rng);
        h(i, k, j) = sig(i) * v;
        h(j, k, i) = -sig(j) * v;
      }
  return h;
}

}  // namespace gravgauge
