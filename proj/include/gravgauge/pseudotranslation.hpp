#pragma once

// Infinitesimal pseudo-translations tau^(X) on gauge fields, their projection to
// (g, nabla^L), and flows on grid-sampled gauge fields.

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <vector>

#include "gravgauge/gauge.hpp"
#include "gravgauge/spencer.hpp"

namespace gravgauge {

/// A tangent vector (delta theta^i_mu, delta Gamma^i_{mu j}) to the space of gauge fields.
template <int N>
struct PseudoTranslationVector {
  Field<N, 2> dL;
  Field<N, 3> dGamma;
};

template <int N>
struct TangentValue {
  Tensor<N, 2> dL;
  Tensor<N, 3> dGamma;
};

/// l^a = theta^a_mu X^mu.
template <int N>
Tensor<N, 1> frame_image(const Tensor<N, 2>& th, const Tensor<N, 1>& x) {
  Tensor<N, 1> l;
  for (int a = 0; a < N; ++a)
    for (int mu = 0; mu < N; ++mu) l(a) += th(a, mu) * x(mu);
  return l;
}

/// The eight-term delta_X T evaluated on frame sections, layout [m][i][j]. R(s,s') s'' is
/// taken with nabla_s nabla_s' first, i.e. minus the coordinate-formula R^m_{ijk}.
template <int N>
Field<N, 3> delta_x_torsion(const AffineGaugeField<N>& a, const VectorField<N>& x, const Differentiator<N>& d) {
  const TorsionField<N> tf = torsion(a, d);
  const CurvatureField<N> rf = curvature(a, d);
  const AffineGaugeField<N> af = a;
  return Field<N, 3>(
      [af, x, d, tf, rf](const Point<N>& p) {
        const Tensor<N, 2> th = af.vielbein.theta(p), e = af.vielbein.e_inv(p);
        const Tensor<N, 3> g = af.conn.gamma(p);
        const Tensor<N, 3> t = tf.t(p);
        const Tensor<N, 4> r = rf.r(p) * -1.0;
        const Tensor<N, 4> dt = covariant_derivative_torsion(af, tf, p, d);  // [i][m][j][k]
        const Tensor<N, 1> l = frame_image<N>(th, x(p));
        // (nabla_{e_i} l)^a
        const Field<N, 2>& theta = af.vielbein.theta;
        const Tensor<N, 3> dth = gradient(theta, p, d);  // [mu][a][nu]
        const Tensor<N, 2> dx = gradient(x, p, d);       // [mu][nu]
        const Tensor<N, 1> xv = x(p);
        Tensor<N, 2> nl;  // [i][a]
        for (int i = 0; i < N; ++i)
          for (int aa = 0; aa < N; ++aa) {
            double s = 0.0;
            for (int mu = 0; mu < N; ++mu) {
              double dl = 0.0;
              for (int nu = 0; nu < N; ++nu) dl += dth(mu, aa, nu) * xv(nu) + th(aa, nu) * dx(mu, nu);
              for (int b = 0; b < N; ++b) dl += g(aa, mu, b) * l(b);
              s += e(mu, i) * dl;
            }
            nl(i, aa) = s;
          }
        Tensor<N, 3> out;
        for (int m = 0; m < N; ++m)
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
              double s = 0.0;
              for (int aa = 0; aa < N; ++aa) {
                for (int b = 0; b < N; ++b) s += t(m, aa, b) * l(aa) * t(b, i, j);
                s += t(m, aa, j) * nl(i, aa) - t(m, aa, i) * nl(j, aa);
                s += -dt(i, m, j, aa) * l(aa) + dt(j, m, i, aa) * l(aa);
                s += r(m, i, j, aa) * l(aa) + r(m, aa, i, j) * l(aa) + r(m, j, aa, i) * l(aa);
              }
              out(m, i, j) = s;
            }
        return out;
      },
      {IndexKind::frame, IndexKind::frame, IndexKind::frame});
}

/// delta_X T as used by tau: d(H) with H(s) = R(L(X), s), H^m_{ik} = -l^a R^m_{aik} in
/// the coordinate-formula convention.
template <int N>
Tensor<N, 3> translation_torsion_variation(const Tensor<N, 4>& r, const Tensor<N, 1>& l) {
  Tensor<N, 3> h;
  for (int m = 0; m < N; ++m)
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        double s = 0.0;
        for (int aa = 0; aa < N; ++aa) s -= l(aa) * r(m, aa, i, k);
        h(m, i, k) = s;
      }
  return spencer<N>(h);
}

/// tau at a point from the first-order jet of the field and of X (dx is [mu][nu] = d_mu X^nu):
///   dL^i_mu = theta^i_l d_mu X^l + X^s (d_s theta^i_mu + Gamma^i_{s j} theta^j_mu),
///   dGamma^i_{mu j} = theta^k_mu d^{-1}(delta_X T)^i_{kj}.
/// The first line is L(nabla^L X + T^L(X, .)) written without the inverse vielbein.
template <int N>
TangentValue<N> tau_kernel(const GaugeJet<N>& j, const Tensor<N, 1>& x, const Tensor<N, 2>& dx,
                           const SignatureMetric<N>& sig) {
  TangentValue<N> out;
  for (int i = 0; i < N; ++i)
    for (int mu = 0; mu < N; ++mu) {
      double s = 0.0;
      for (int l = 0; l < N; ++l) s += j.theta(i, l) * dx(mu, l);
      for (int sg = 0; sg < N; ++sg) {
        double inner = j.dtheta(sg, i, mu);
        for (int b = 0; b < N; ++b) inner += j.gamma(i, sg, b) * j.theta(b, mu);
        s += x(sg) * inner;
      }
      out.dL(i, mu) = s;
    }
  const Tensor<N, 4> r = frame_curvature<N>(j);
  const Tensor<N, 3> dt = translation_torsion_variation<N>(r, frame_image<N>(j.theta, x));
  out.dGamma = contract_with_theta<N>(spencer_inverse<N>(dt, sig), j.theta);
  return out;
}

template <int N>
TangentValue<N> tau_at(const AffineGaugeField<N>& a, const VectorField<N>& x, const Point<N>& p,
                       const Differentiator<N>& d) {
  return tau_kernel<N>(jet_at(a, p, d), x(p), gradient(x, p, d), a.signature());
}

template <int N>
PseudoTranslationVector<N> tau(const AffineGaugeField<N>& a, const VectorField<N>& x, const Differentiator<N>& d) {
  const AffineGaugeField<N> af = a;
  Field<N, 2> dl([af, x, d](const Point<N>& p) { return tau_at(af, x, p, d).dL; },
                 {IndexKind::frame, IndexKind::coordinate});
  Field<N, 3> dg([af, x, d](const Point<N>& p) { return tau_at(af, x, p, d).dGamma; },
                 {IndexKind::frame, IndexKind::coordinate, IndexKind::frame});
  return PseudoTranslationVector<N>{std::move(dl), std::move(dg)};
}

/// Directional derivative of the metric along a tangent vector: eta(dL theta + theta dL).
template <int N>
Tensor<N, 2> tangent_metric(const Tensor<N, 2>& th, const Tensor<N, 2>& dl, const SignatureMetric<N>& sig) {
  Tensor<N, 2> out;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += sig(i) * (dl(i, m) * th(i, n) + th(i, m) * dl(i, n));
      out(m, n) = s;
    }
  return out;
}

/// Directional derivative of Gamma^l_{mn} = e^l_k (d_m theta^k_n + Gamma^k_{mj} theta^j_n):
///   -e^l_a dL^a_s Gc^s_{mn} + e^l_k (d_m dL^k_n + dGamma^k_{mj} theta^j_n + Gamma^k_{mj} dL^j_n).
template <int N>
Tensor<N, 3> tangent_gamma_coord(const AffineGaugeField<N>& a, const PseudoTranslationVector<N>& v,
                                 const Field<N, 3>& gamma_coord, const Point<N>& p, const Differentiator<N>& d) {
  const Tensor<N, 2> th = a.vielbein.theta(p), e = a.vielbein.e_inv(p);
  const Tensor<N, 3> g = a.conn.gamma(p), gc = gamma_coord(p);
  const Tensor<N, 2> dl = v.dL(p);
  const Tensor<N, 3> ddl = gradient(v.dL, p, d);  // [m][k][n]
  const Tensor<N, 3> dg = v.dGamma(p);
  Tensor<N, 3> inner;  // [k][m][n]
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        double s = ddl(m, k, n);
        for (int jj = 0; jj < N; ++jj) s += dg(k, m, jj) * th(jj, n) + g(k, m, jj) * dl(jj, n);
        for (int sg = 0; sg < N; ++sg) s -= dl(k, sg) * gc(sg, m, n);
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

struct Main3Residuals {
  double metric = 0.0;
  double connection = 0.0;
};

/// Sup-norm mismatch between the projection of tau and (L_X g, L_X Gamma) over the sample.
template <int N>
Main3Residuals verify_main3_ii(const AffineGaugeField<N>& a, const VectorField<N>& x, const Differentiator<N>& d,
                               const std::vector<Point<N>>& sample) {
  const PseudoTranslationVector<N> v = tau(a, x, d);
  const GravField<N> gf = iota(a, d);
  Main3Residuals r;
  for (const auto& p : sample) {
    const Tensor<N, 2> dg = tangent_metric<N>(a.vielbein.theta(p), v.dL(p), a.signature());
    r.metric = std::max(r.metric, max_abs_diff(dg, lie_derivative_metric(x, gf.g, p, d)));
    const Tensor<N, 3> dgc = tangent_gamma_coord(a, v, gf.gamma_coord, p, d);
    r.connection = std::max(r.connection, max_abs_diff(dgc, oracle::lie_derivative_connection(x, gf.gamma_coord, d, p)));
  }
  return r;
}

/// Commutation with rotations: |tau(h a) - (h dL, h dGamma h^-1)| over the sample.
template <int N>
double verify_main3_i(const AffineGaugeField<N>& a, const VectorField<N>& x, const RotationField<N>& r,
                      const Differentiator<N>& d, const std::vector<Point<N>>& sample) {
  const AffineGaugeField<N> rotated = act_rotation(r, a, d);
  double res = 0.0;
  for (const auto& p : sample) {
    const TangentValue<N> lhs = tau_at(rotated, x, p, d);
    const TangentValue<N> base = tau_at(a, x, p, d);
    const Tensor<N, 2> h = r.h(p), hi = r.h_inv(p);
    const Tensor<N, 2> dl = matmul<N>(h, base.dL);
    Tensor<N, 3> dg;
    for (int jj = 0; jj < N; ++jj)
      for (int mu = 0; mu < N; ++mu)
        for (int i = 0; i < N; ++i) {
          double s = 0.0;
          for (int l = 0; l < N; ++l)
            for (int k = 0; k < N; ++k) s += h(jj, l) * base.dGamma(l, mu, k) * hi(k, i);
          dg(jj, mu, i) = s;
        }
    res = std::max({res, max_abs_diff(lhs.dL, dl), max_abs_diff(lhs.dGamma, dg)});
  }
  return res;
}

inline constexpr int kDefaultSampledNodes = 33;
/// Nodes excluded on each side when measuring quantities on a sampled field.
inline constexpr int kSampledBoundaryNodes = 4;

/// Gauge field stored at the nodes of a regular grid, reconstructed per axis by cubic splines.
template <int N>
struct SampledGaugeField {
  Chart<N> box;
  int n = kDefaultSampledNodes;
  SignatureMetric<N> signature;
  std::vector<Tensor<N, 2>> theta;
  std::vector<Tensor<N, 3>> gamma;

  int size() const { return ipow(n, N); }
  double spacing(int axis) const { return box.extent(axis) / (n - 1); }

  std::array<int, N> index(int flat) const {
    std::array<int, N> idx{};
    for (int a = N - 1; a >= 0; --a) {
      idx[a] = flat % n;
      flat /= n;
    }
    return idx;
  }
  int flat(const std::array<int, N>& idx) const {
    int f = 0;
    for (int a = 0; a < N; ++a) f = f * n + idx[a];
    return f;
  }
  Point<N> node(int flat_index) const {
    const auto idx = index(flat_index);
    Point<N> p;
    for (int a = 0; a < N; ++a) p[a] = box.lo[a] + spacing(a) * idx[a];
    return p;
  }
  bool interior(int flat_index, int margin = kSampledBoundaryNodes) const {
    for (int i : index(flat_index))
      if (i < margin || i >= n - margin) return false;
    return true;
  }
};

/// Sample a closure field on an n-per-axis grid over the chart pulled in by `inset`.
template <int N>
SampledGaugeField<N> sample_gauge_field(const AffineGaugeField<N>& a, int n = kDefaultSampledNodes,
                                        double inset = 0.05) {
  if (n < 8) throw InvalidArgument("sampled gauge field needs at least 8 nodes per axis");
  Point<N> lo, hi;
  for (int k = 0; k < N; ++k) {
    lo[k] = a.chart.lo[k] + inset * a.chart.extent(k);
    hi[k] = a.chart.hi[k] - inset * a.chart.extent(k);
  }
  SampledGaugeField<N> s{Chart<N>(a.chart.name, lo, hi), n, a.signature(), {}, {}};
  s.theta.resize(s.size());
  s.gamma.resize(s.size());
  for (int f = 0; f < s.size(); ++f) {
    const Point<N> p = s.node(f);
    s.theta[f] = a.vielbein.theta(p);
    s.gamma[f] = a.conn.gamma(p);
    if (!all_finite(s.theta[f]) || !all_finite(s.gamma[f]))
      throw NumericDomainError("sampled gauge field has non-finite node values");
  }
  return s;
}

namespace detail {

// Fourth-order one-sided first derivative at the first node of v[0..4].
inline double one_sided_derivative(const double* v, std::ptrdiff_t stride, double h) {
  return (-25.0 * v[0] + 48.0 * v[stride] - 36.0 * v[2 * stride] + 16.0 * v[3 * stride] - 3.0 * v[4 * stride]) /
         (12.0 * h);
}

/// d/dx^axis of node values (component-major: values[c * nodes + node]) via one cubic
/// spline per grid line, evaluated back at the nodes.
template <int N>
std::vector<double> spline_axis_derivative(const SampledGaugeField<N>& s, const std::vector<double>& values,
                                           int components, int axis) {
  const int nodes = s.size();
  std::vector<double> out(values.size());
  const double h = s.spacing(axis);
  int stride = 1;
  for (int a = N - 1; a > axis; --a) stride *= s.n;
  std::vector<double> line(s.n);
  for (int c = 0; c < components; ++c) {
    const double* base = values.data() + static_cast<std::size_t>(c) * nodes;
    for (int f = 0; f < nodes; ++f) {
      if (s.index(f)[axis] != 0) continue;
      for (int k = 0; k < s.n; ++k) line[k] = base[f + k * stride];
      const double left = one_sided_derivative(line.data(), 1, h);
      const double right = -one_sided_derivative(line.data() + s.n - 1, -1, h);
      boost::math::interpolators::cardinal_cubic_b_spline<double> spline(line.begin(), line.end(), s.box.lo[axis], h,
                                                                         left, right);
      for (int k = 0; k < s.n; ++k)
        out[static_cast<std::size_t>(c) * nodes + f + k * stride] = spline.prime(s.box.lo[axis] + k * h);
    }
  }
  return out;
}

}  // namespace detail

/// Node values of X and its first derivatives.
template <int N>
struct SampledVector {
  std::vector<Tensor<N, 1>> x;
  std::vector<Tensor<N, 2>> dx;  // [mu][nu] = d_mu X^nu
};

template <int N, int R>
std::vector<Tensor<N, R + 1>> spline_gradient(const SampledGaugeField<N>& s, const std::vector<Tensor<N, R>>& v) {
  constexpr int comps = Tensor<N, R>::kSize;
  const int nodes = s.size();
  std::vector<double> packed(static_cast<std::size_t>(comps) * nodes);
  for (int f = 0; f < nodes; ++f)
    for (int c = 0; c < comps; ++c) packed[static_cast<std::size_t>(c) * nodes + f] = v[f].v[c];
  std::vector<Tensor<N, R + 1>> out(nodes);
  for (int axis = 0; axis < N; ++axis) {
    const std::vector<double> der = detail::spline_axis_derivative(s, packed, comps, axis);
    for (int f = 0; f < nodes; ++f)
      for (int c = 0; c < comps; ++c) out[f].v[axis * comps + c] = der[static_cast<std::size_t>(c) * nodes + f];
  }
  return out;
}

template <int N>
SampledVector<N> sample_vector(const SampledGaugeField<N>& s, const VectorField<N>& x) {
  SampledVector<N> out;
  out.x.resize(s.size());
  for (int f = 0; f < s.size(); ++f) out.x[f] = x(s.node(f));
  out.dx = spline_gradient<N, 1>(s, out.x);
  return out;
}

/// Jets at all nodes; theta inverted pointwise.
template <int N>
std::vector<GaugeJet<N>> sampled_jets(const SampledGaugeField<N>& s) {
  const auto dth = spline_gradient<N, 2>(s, s.theta);
  const auto dgm = spline_gradient<N, 3>(s, s.gamma);
  std::vector<GaugeJet<N>> jets(s.size());
  for (int f = 0; f < s.size(); ++f) {
    jets[f].theta = s.theta[f];
    jets[f].e = inverse<N>(s.theta[f]);
    jets[f].dtheta = dth[f];
    jets[f].gamma = s.gamma[f];
    jets[f].dgamma = dgm[f];
  }
  return jets;
}

template <int N>
std::vector<TangentValue<N>> sampled_tau(const SampledGaugeField<N>& s, const SampledVector<N>& x) {
  const auto jets = sampled_jets(s);
  std::vector<TangentValue<N>> out(s.size());
  for (int f = 0; f < s.size(); ++f) out[f] = tau_kernel<N>(jets[f], x.x[f], x.dx[f], s.signature);
  return out;
}

/// Sup over interior nodes of the frame torsion.
template <int N>
double sampled_torsion_sup(const SampledGaugeField<N>& s, int margin = kSampledBoundaryNodes) {
  const auto jets = sampled_jets(s);
  double r = 0.0;
  for (int f = 0; f < s.size(); ++f)
    if (s.interior(f, margin)) r = std::max(r, max_abs(frame_torsion<N>(jets[f])));
  return r;
}

template <int N>
double sampled_skewness_sup(const SampledGaugeField<N>& s) {
  double r = 0.0;
  for (const auto& g : s.gamma) r = std::max(r, skewness_residual<N>(g, s.signature));
  return r;
}

/// Sup over interior nodes of |theta_a - theta_b| and |Gamma_a - Gamma_b|.
template <int N>
double sampled_distance(const SampledGaugeField<N>& a, const SampledGaugeField<N>& b, int margin = 0) {
  double r = 0.0;
  for (int f = 0; f < a.size(); ++f)
    if (a.interior(f, margin))
      r = std::max({r, max_abs_diff(a.theta[f], b.theta[f]), max_abs_diff(a.gamma[f], b.gamma[f])});
  return r;
}

namespace detail {

template <int N>
SampledGaugeField<N> axpy(const SampledGaugeField<N>& s, const std::vector<TangentValue<N>>& k, double h) {
  SampledGaugeField<N> out = s;
  for (int f = 0; f < s.size(); ++f) {
    out.theta[f] += k[f].dL * h;
    out.gamma[f] += k[f].dGamma * h;
  }
  return out;
}

template <int N>
void check_regular(const SampledGaugeField<N>& s, double time) {
  for (int f = 0; f < s.size(); ++f) {
    const double dt = det<N>(s.theta[f]);
    if (!all_finite(s.theta[f]) || !all_finite(s.gamma[f]) || !(std::abs(dt) > kRegularityDetFloor))
      throw FlowSingularError("pseudo-translation flow lost regularity", time);
  }
}

}  // namespace detail

/// Classical RK4 with fixed steps for d/dt (theta, Gamma) = tau^(X); returns all states,
/// the initial one included. t_end may be negative.
template <int N>
std::vector<SampledGaugeField<N>> flow(const SampledGaugeField<N>& a0, const VectorField<N>& x, double t_end,
                                       int steps) {
  if (steps < 1) throw InvalidArgument("flow needs at least one step");
  const SampledVector<N> xs = sample_vector(a0, x);
  const double h = t_end / steps;
  std::vector<SampledGaugeField<N>> traj{a0};
  detail::check_regular(a0, 0.0);
  SampledGaugeField<N> cur = a0;
  for (int k = 0; k < steps; ++k) {
    const auto k1 = sampled_tau(cur, xs);
    const auto k2 = sampled_tau(detail::axpy(cur, k1, 0.5 * h), xs);
    const auto k3 = sampled_tau(detail::axpy(cur, k2, 0.5 * h), xs);
    const auto k4 = sampled_tau(detail::axpy(cur, k3, h), xs);
    for (int f = 0; f < cur.size(); ++f) {
      cur.theta[f] += (k1[f].dL + 2.0 * k2[f].dL + 2.0 * k3[f].dL + k4[f].dL) * (h / 6.0);
      cur.gamma[f] += (k1[f].dGamma + 2.0 * k2[f].dGamma + 2.0 * k3[f].dGamma + k4[f].dGamma) * (h / 6.0);
    }
    detail::check_regular(cur, h * (k + 1));
    traj.push_back(cur);
  }
  return traj;
}

template <int N>
SampledGaugeField<N> flow_endpoint(const SampledGaugeField<N>& a0, const VectorField<N>& x, double t, int steps) {
  return flow(a0, x, t, steps).back();
}

inline constexpr int kBracketFlowSteps = 2;

/// Second-order flow commutator against the bracket. With Psi_t = F^{X'}_{-t} F^X_{-t}
/// F^{X'}_t F^X_t, returns the sup over interior nodes of
///   | (g(Psi_t a) + g(Psi_{-t} a) - 2 g(a)) / (2 t^2) + L_{[X,X']} g |,
/// the projected flow being an anti-homomorphism of brackets.
template <int N>
double lie_bracket_tau(const AffineGaugeField<N>& a, const VectorField<N>& x, const VectorField<N>& y, double t,
                       const Differentiator<N>& d, int nodes = kDefaultSampledNodes) {
  const SampledGaugeField<N> s0 = sample_gauge_field(a, nodes);
  auto commutator = [&](double tt) {
    SampledGaugeField<N> s = flow_endpoint(s0, x, tt, kBracketFlowSteps);
    s = flow_endpoint(s, y, tt, kBracketFlowSteps);
    s = flow_endpoint(s, x, -tt, kBracketFlowSteps);
    return flow_endpoint(s, y, -tt, kBracketFlowSteps);
  };
  const SampledGaugeField<N> plus = commutator(t), minus = commutator(-t);
  const VectorField<N> bracket = lie_bracket_field(x, y, d);
  const Field<N, 2> g = metric_from_vielbein(a.vielbein);
  double r = 0.0;
  for (int f = 0; f < s0.size(); ++f) {
    if (!s0.interior(f)) continue;
    const Tensor<N, 2> g0 = metric_from_theta<N>(s0.theta[f], s0.signature);
    const Tensor<N, 2> gp = metric_from_theta<N>(plus.theta[f], s0.signature);
    const Tensor<N, 2> gm = metric_from_theta<N>(minus.theta[f], s0.signature);
    const Tensor<N, 2> second = (gp + gm - 2.0 * g0) * (1.0 / (2.0 * t * t));
    const Tensor<N, 2> expected = lie_derivative_metric(bracket, g, s0.node(f), d) * -1.0;
    r = std::max(r, max_abs_diff(second, expected));
  }
  return r;
}

}  // namespace gravgauge
