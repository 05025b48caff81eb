#pragma once

// The gauge field (L, nabla): vielbein plus eta-skew frame connection coefficients.

#include <string>

#include "gravgauge/frame.hpp"

namespace gravgauge {

inline constexpr double kSkewTolerance = 1e-12;
inline constexpr int kValidationPointsPerAxis = 5;

/// Max over (mu,i,j) of |eta_kj G^k_{mu i} + eta_ik G^k_{mu j}| for a [i][mu][j] array.
template <int N>
double skewness_residual(const Tensor<N, 3>& gamma, const SignatureMetric<N>& sig) {
  double r = 0.0;
  for (int mu = 0; mu < N; ++mu)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        r = std::max(r, std::abs(sig(j) * gamma(j, mu, i) + sig(i) * gamma(i, mu, j)));
  return r;
}

/// Orthogonal projection onto the eta-skew coefficients (drops the symmetric part
/// after lowering the first index).
template <int N>
Tensor<N, 3> project_skew(const Tensor<N, 3>& gamma, const SignatureMetric<N>& sig) {
  Tensor<N, 3> out;
  for (int mu = 0; mu < N; ++mu)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double low_ij = sig(i) * gamma(i, mu, j);
        const double low_ji = sig(j) * gamma(j, mu, i);
        out(i, mu, j) = sig(i) * 0.5 * (low_ij - low_ji);
      }
  return out;
}

/// Gamma^i_{mu j}, layout [i][mu][j].
template <int N>
struct ConnectionCoefficients {
  Field<N, 3> gamma;
  SignatureMetric<N> signature;
};

template <int N>
ConnectionCoefficients<N> make_connection(const Chart<N>& chart, const SignatureMetric<N>& sig, Field<N, 3> gamma,
                                          double tol = kSkewTolerance) {
  gamma.kinds = {IndexKind::frame, IndexKind::coordinate, IndexKind::frame};
  for (const auto& p : chart.sample_grid(kValidationPointsPerAxis)) {
    const double r = skewness_residual<N>(gamma(p), sig);
    if (!(r <= tol))
      throw SkewnessError("connection coefficients are not eta-skew (residual " + std::to_string(r) + ")");
  }
  return ConnectionCoefficients<N>{std::move(gamma), sig};
}

/// Wraps an evaluator with the pointwise skew projection before validation.
template <int N>
ConnectionCoefficients<N> make_projected_connection(const Chart<N>& chart, const SignatureMetric<N>& sig,
                                                    std::function<Tensor<N, 3>(const Point<N>&)> raw) {
  Field<N, 3> f([raw = std::move(raw), sig](const Point<N>& p) { return project_skew<N>(raw(p), sig); },
                {IndexKind::frame, IndexKind::coordinate, IndexKind::frame});
  return make_connection<N>(chart, sig, std::move(f));
}

template <int N>
ConnectionCoefficients<N> zero_connection(const Chart<N>& chart, const SignatureMetric<N>& sig) {
  return make_connection<N>(chart, sig,
                            constant_field<N, 3>({}, {IndexKind::frame, IndexKind::coordinate, IndexKind::frame}));
}

/// The pair (L, nabla) on one chart.
template <int N>
struct AffineGaugeField {
  Chart<N> chart;
  Vielbein<N> vielbein;
  ConnectionCoefficients<N> conn;

  const SignatureMetric<N>& signature() const { return vielbein.signature; }
};

template <int N>
bool same_chart(const Chart<N>& a, const Chart<N>& b) {
  return a.name == b.name && a.lo == b.lo && a.hi == b.hi;
}

template <int N>
AffineGaugeField<N> make_gauge_field(const Chart<N>& chart, Vielbein<N> v, ConnectionCoefficients<N> c) {
  if (!(v.signature == c.signature)) throw InvalidArgument("vielbein and connection signatures differ");
  if (!regularity_check<N>(v, chart.sample_grid(kValidationPointsPerAxis)).regular)
    throw RegularityError("vielbein is singular on chart '" + chart.name + "'");
  return AffineGaugeField<N>{chart, std::move(v), std::move(c)};
}

/// H^i_{kj}: delta nabla(e_k, e_j) = H^i_{kj} e_i, layout [i][k][j].
template <int N>
struct ConnectionDelta {
  Field<N, 3> h;
  SignatureMetric<N> signature;
};

/// Max |eta_li H^l_kj + eta_lj H^l_ki|.
template <int N>
double delta_skewness_residual(const Tensor<N, 3>& h, const SignatureMetric<N>& sig) {
  double r = 0.0;
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r = std::max(r, std::abs(sig(i) * h(i, k, j) + sig(j) * h(j, k, i)));
  return r;
}

/// d_mu phi^i + Gamma^i_{mu j} phi^j.
template <int N>
Tensor<N, 1> covariant_derivative_section(const AffineGaugeField<N>& a, const Field<N, 1>& phi, int mu,
                                          const Point<N>& p, const Differentiator<N>& d) {
  Tensor<N, 1> out = partial(phi, mu, p, d);
  const Tensor<N, 3> g = a.conn.gamma(p);
  const Tensor<N, 1> ph = phi(p);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out(i) += g(i, mu, j) * ph(j);
  return out;
}

/// Covariant derivative of an E-section as a [i][mu] array (slot order of theta).
template <int N>
Tensor<N, 2> covariant_derivative_all(const AffineGaugeField<N>& a, const Field<N, 1>& phi, const Point<N>& p,
                                      const Differentiator<N>& d) {
  const Tensor<N, 2> dphi = gradient(phi, p, d);
  const Tensor<N, 3> g = a.conn.gamma(p);
  const Tensor<N, 1> ph = phi(p);
  Tensor<N, 2> out;
  for (int i = 0; i < N; ++i)
    for (int mu = 0; mu < N; ++mu) {
      double s = dphi(mu, i);
      for (int j = 0; j < N; ++j) s += g(i, mu, j) * ph(j);
      out(i, mu) = s;
    }
  return out;
}

/// H^i_{kj} = e^mu_k (Gamma^i_{mu j} - Gamma0^i_{mu j}), evaluated with a's vielbein.
template <int N>
ConnectionDelta<N> connection_delta(const AffineGaugeField<N>& a, const AffineGaugeField<N>& a0) {
  if (!same_chart(a.chart, a0.chart)) throw ChartMismatch("connection_delta: fields live on different charts");
  if (!(a.signature() == a0.signature())) throw ChartMismatch("connection_delta: signatures differ");
  auto e = a.vielbein.e_inv.eval;
  auto g1 = a.conn.gamma.eval;
  auto g0 = a0.conn.gamma.eval;
  Field<N, 3> h(
      [e, g1, g0](const Point<N>& p) {
        const Tensor<N, 2> ev = e(p);
        const Tensor<N, 3> diff = g1(p) - g0(p);
        Tensor<N, 3> out;
        for (int i = 0; i < N; ++i)
          for (int k = 0; k < N; ++k)
            for (int j = 0; j < N; ++j) {
              double s = 0.0;
              for (int mu = 0; mu < N; ++mu) s += ev(mu, k) * diff(i, mu, j);
              out(i, k, j) = s;
            }
        return out;
      },
      {IndexKind::frame, IndexKind::frame, IndexKind::frame});
  return ConnectionDelta<N>{std::move(h), a.signature()};
}

/// theta-contraction (s -> H(L(.), s)): Gamma^i_{mu j} = theta^k_mu H^i_{kj}.
template <int N>
Tensor<N, 3> contract_with_theta(const Tensor<N, 3>& h, const Tensor<N, 2>& th) {
  Tensor<N, 3> out;
  for (int i = 0; i < N; ++i)
    for (int mu = 0; mu < N; ++mu)
      for (int j = 0; j < N; ++j) {
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += th(k, mu) * h(i, k, j);
        out(i, mu, j) = s;
      }
  return out;
}

/// nabla_X s = nabla0_X s + delta(L(X), s), with L taken from `l`.
template <int N>
AffineGaugeField<N> apply_delta(const AffineGaugeField<N>& a0, const Vielbein<N>& l, const ConnectionDelta<N>& d) {
  auto th = l.theta.eval;
  auto g0 = a0.conn.gamma.eval;
  auto h = d.h.eval;
  Field<N, 3> gamma([th, g0, h](const Point<N>& p) { return g0(p) + contract_with_theta<N>(h(p), th(p)); },
                    {IndexKind::frame, IndexKind::coordinate, IndexKind::frame});
  auto c = make_connection<N>(a0.chart, a0.signature(), std::move(gamma));
  return make_gauge_field<N>(a0.chart, l, std::move(c));
}

}  // namespace gravgauge
