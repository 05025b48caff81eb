#pragma once

// Fiber metric, vielbeins and the metric side of the gauge/gravity correspondence.

#include <algorithm>
#include <limits>
#include <vector>

#include "gravgauge/fields.hpp"
#include "gravgauge/linalg.hpp"

namespace gravgauge {

/// Diagonal fiber metric with p entries +1 followed by q entries -1.
template <int N>
struct SignatureMetric {
  static constexpr int kDim = N;
  int p = N;
  int q = 0;
  std::array<double, N> eta{};

  SignatureMetric() : SignatureMetric(N, 0) {}
  SignatureMetric(int plus, int minus) : p(plus), q(minus) {
    if (p < 0 || q < 0 || p + q != N) throw InvalidArgument("signature (p,q) must satisfy p+q = dimension");
    for (int i = 0; i < N; ++i) eta[i] = i < p ? 1.0 : -1.0;
  }

  static SignatureMetric riemannian() { return SignatureMetric(N, 0); }
  static SignatureMetric lorentzian() { return SignatureMetric(1, N - 1); }

  double operator()(int i) const { return eta[i]; }
  Tensor<N, 2> matrix() const {
    Tensor<N, 2> m;
    for (int i = 0; i < N; ++i) m(i, i) = eta[i];
    return m;
  }
  friend bool operator==(const SignatureMetric& a, const SignatureMetric& b) { return a.p == b.p && a.q == b.q; }
};

/// Components theta^i_mu (layout [i][mu]) and inverse e^mu_i (layout [mu][i]).
template <int N>
struct Vielbein {
  Field<N, 2> theta;
  Field<N, 2> e_inv;
  SignatureMetric<N> signature;
};

template <int N>
Vielbein<N> make_vielbein(Field<N, 2> theta, Field<N, 2> e_inv, SignatureMetric<N> sig) {
  theta.kinds = {IndexKind::frame, IndexKind::coordinate};
  e_inv.kinds = {IndexKind::coordinate, IndexKind::frame};
  return Vielbein<N>{std::move(theta), std::move(e_inv), sig};
}

/// Vielbein whose inverse is computed pointwise.
template <int N>
Vielbein<N> make_vielbein(Field<N, 2> theta, SignatureMetric<N> sig) {
  auto th = theta.eval;
  Field<N, 2> inv([th](const Point<N>& p) { return inverse<N>(th(p)); },
                  {IndexKind::coordinate, IndexKind::frame});
  return make_vielbein<N>(std::move(theta), std::move(inv), sig);
}

/// Pointwise frame-index vector field s = e_i evaluated as a coordinate vector (e^mu_i).
template <int N>
VectorField<N> frame_vector(const Vielbein<N>& v, int i) {
  auto e = v.e_inv.eval;
  return coordinate_vector_field<N>([e, i](const Point<N>& p) {
    const Tensor<N, 2> ev = e(p);
    Tensor<N, 1> out;
    for (int mu = 0; mu < N; ++mu) out(mu) = ev(mu, i);
    return out;
  });
}

struct RegularityReport {
  bool regular = true;
  double min_abs_det = std::numeric_limits<double>::infinity();
  double max_condition = 0.0;
};

inline constexpr double kRegularityDetFloor = 1e-10;

template <int N>
RegularityReport regularity_check(const Vielbein<N>& v, const std::vector<Point<N>>& sample) {
  if (sample.empty()) throw InvalidArgument("regularity_check needs at least one sample point");
  RegularityReport rep;
  for (const auto& p : sample) {
    const Tensor<N, 2> th = v.theta(p);
    const double dt = std::abs(det<N>(th));
    rep.min_abs_det = std::min(rep.min_abs_det, dt);
    rep.max_condition = std::max(rep.max_condition, condition_number<N>(th));
    if (!(dt > kRegularityDetFloor)) rep.regular = false;
  }
  return rep;
}

/// g_{mn} = eta_{ij} theta^i_m theta^j_n.
template <int N>
Tensor<N, 2> metric_from_theta(const Tensor<N, 2>& th, const SignatureMetric<N>& sig) {
  Tensor<N, 2> g;
  for (int m = 0; m < N; ++m)
    for (int n = m; n < N; ++n) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += sig(i) * th(i, m) * th(i, n);
      g(m, n) = s;
      g(n, m) = s;
    }
  return g;
}

template <int N>
Field<N, 2> metric_from_vielbein(const Vielbein<N>& v) {
  auto th = v.theta.eval;
  auto sig = v.signature;
  return Field<N, 2>([th, sig](const Point<N>& p) { return metric_from_theta<N>(th(p), sig); },
                     {IndexKind::coordinate, IndexKind::coordinate});
}

/// Metric g plus coordinate coefficients of a g-metric connection, layout [lambda][mu][nu]
/// with nabla_{d_mu} d_nu = Gamma^lambda_{mu nu} d_lambda.
template <int N>
struct GravField {
  Field<N, 2> g;
  Field<N, 3> gamma_coord;
  SignatureMetric<N> signature;
};

/// Counts of positive and negative eigenvalues of a symmetric matrix.
template <int N>
std::pair<int, int> signature_of(const Tensor<N, 2>& g, double zero_tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Mat<N>> es(to_mat<N>(g));
  int plus = 0, minus = 0;
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int k = 0; k < N; ++k) {
    const double l = es.eigenvalues()(k);
    if (l > zero_tol * scale) ++plus;
    else if (l < -zero_tol * scale) ++minus;
  }
  return {plus, minus};
}

/// Frame from metric: eigenvalues sorted descending, theta = |Lambda|^{1/2} V^T, each
/// eigenvector signed so its first nonzero entry is positive.
template <int N>
Tensor<N, 2> frame_from_metric_point(const Tensor<N, 2>& g, const SignatureMetric<N>& sig) {
  Eigen::SelfAdjointEigenSolver<Mat<N>> es(to_mat<N>(g));
  if (es.info() != Eigen::Success) throw NumericDomainError("eigendecomposition failed");
  Tensor<N, 2> th;
  for (int row = 0; row < N; ++row) {
    const int k = N - 1 - row;  // descending
    const double lam = es.eigenvalues()(k);
    if ((lam > 0.0) != (sig(row) > 0.0) || lam == 0.0)
      throw DegenerateMetric("metric signature does not match (p,q)");
    Eigen::Matrix<double, N, 1> vec = es.eigenvectors().col(k);
    const double tiny = 1e-14 * vec.cwiseAbs().maxCoeff();
    for (int c = 0; c < N; ++c) {
      if (std::abs(vec(c)) > tiny) {
        if (vec(c) < 0.0) vec = -vec;
        break;
      }
    }
    const double s = std::sqrt(std::abs(lam));
    for (int mu = 0; mu < N; ++mu) th(row, mu) = s * vec(mu);
  }
  return th;
}

template <int N>
Vielbein<N> frame_from_metric(const Field<N, 2>& g, const SignatureMetric<N>& sig) {
  auto ge = g.eval;
  Field<N, 2> theta([ge, sig](const Point<N>& p) { return frame_from_metric_point<N>(ge(p), sig); },
                    {IndexKind::frame, IndexKind::coordinate});
  return make_vielbein<N>(std::move(theta), sig);
}

}  // namespace gravgauge
