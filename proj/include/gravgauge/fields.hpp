#pragma once

// Chart-based smooth fields and finite-difference differentiation.
//
// Every component field in the library is a closure from chart coordinates to a
// dense row-major array. Frame and coordinate indices share one carrier type and
// are told apart only by the IndexKind tags.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gravgauge/errors.hpp"

namespace gravgauge {

constexpr int ipow(int base, int exp) { return exp == 0 ? 1 : base * ipow(base, exp - 1); }

// The size is written as an expression so a Point argument never drives deduction of N.
template <int N>
using Point = std::array<double, static_cast<std::size_t>(N)>;

/// Dense row-major component array with R slots, each of extent N.
template <int N, int R>
struct Tensor {
  static constexpr int kRank = R;
  static constexpr int kSize = ipow(N, R);
  std::array<double, kSize> v{};

  template <class... I>
  double& operator()(I... i) {
    static_assert(sizeof...(I) == R);
    return v[offset(i...)];
  }
  template <class... I>
  double operator()(I... i) const {
    static_assert(sizeof...(I) == R);
    return v[offset(i...)];
  }

  template <class... I>
  static constexpr int offset(I... i) {
    int o = 0;
    ((o = o * N + static_cast<int>(i)), ...);
    return o;
  }

  Tensor& operator+=(const Tensor& o) {
    for (int k = 0; k < kSize; ++k) v[k] += o.v[k];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (int k = 0; k < kSize; ++k) v[k] -= o.v[k];
    return *this;
  }
  Tensor& operator*=(double s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
};

template <int N, int R>
double max_abs(const Tensor<N, R>& t) {
  double m = 0.0;
  for (double x : t.v) m = std::max(m, std::abs(x));
  return m;
}

template <int N, int R>
double max_abs_diff(const Tensor<N, R>& a, const Tensor<N, R>& b) {
  double m = 0.0;
  for (int k = 0; k < Tensor<N, R>::kSize; ++k) m = std::max(m, std::abs(a.v[k] - b.v[k]));
  return m;
}

template <int N, int R>
bool all_finite(const Tensor<N, R>& t) {
  for (double x : t.v)
    if (!std::isfinite(x)) return false;
  return true;
}

enum class IndexKind { coordinate, frame };

/// Axis-aligned coordinate box.
template <int N>
struct Chart {
  std::string name;
  Point<N> lo{};
  Point<N> hi{};

  Chart() = default;
  Chart(std::string n, Point<N> l, Point<N> h) : name(std::move(n)), lo(l), hi(h) {
    static_assert(N >= 1);
    for (int a = 0; a < N; ++a)
      if (!(lo[a] < hi[a])) throw InvalidArgument("chart '" + name + "': lo must be < hi on every axis");
  }

  double extent(int axis) const { return hi[axis] - lo[axis]; }
  Point<N> center() const {
    Point<N> c;
    for (int a = 0; a < N; ++a) c[a] = 0.5 * (lo[a] + hi[a]);
    return c;
  }
  bool contains(const Point<N>& p) const {
    for (int a = 0; a < N; ++a)
      if (p[a] < lo[a] || p[a] > hi[a]) return false;
    return true;
  }

  /// Tensor-product grid with n points per axis, pulled in from the boundary by
  /// `inset` (fraction of the extent) so nested stencils stay inside the chart.
  std::vector<Point<N>> sample_grid(int n, double inset = 0.05) const {
    std::vector<Point<N>> pts;
    std::array<int, N> idx{};
    const int total = ipow(n, N);
    pts.reserve(total);
    for (int flat = 0; flat < total; ++flat) {
      int r = flat;
      for (int a = N - 1; a >= 0; --a) {
        idx[a] = r % n;
        r /= n;
      }
      Point<N> p;
      for (int a = 0; a < N; ++a) {
        const double l = lo[a] + inset * extent(a);
        const double h = hi[a] - inset * extent(a);
        p[a] = n == 1 ? 0.5 * (l + h) : l + (h - l) * idx[a] / (n - 1);
      }
      pts.push_back(p);
    }
    return pts;
  }
};

/// A smooth field on a chart: pure evaluator plus index tags.
template <int N, int R>
struct Field {
  using Value = Tensor<N, R>;
  std::function<Value(const Point<N>&)> eval;
  std::array<IndexKind, R> kinds{};

  Field() = default;
  Field(std::function<Value(const Point<N>&)> f, std::array<IndexKind, R> k)
      : eval(std::move(f)), kinds(k) {}

  Value operator()(const Point<N>& p) const { return eval(p); }
  explicit operator bool() const { return static_cast<bool>(eval); }
};

template <int N>
using ScalarField = Field<N, 0>;
template <int N>
using VectorField = Field<N, 1>;

template <int N, int R>
Field<N, R> constant_field(const Tensor<N, R>& value, std::array<IndexKind, R> kinds) {
  return Field<N, R>([value](const Point<N>&) { return value; }, kinds);
}

template <int N>
VectorField<N> coordinate_vector_field(std::function<Tensor<N, 1>(const Point<N>&)> f) {
  return VectorField<N>(std::move(f), {IndexKind::coordinate});
}

enum class FdScheme { central2, central4, richardson };

/// Finite-difference operator over a chart. Steps are per axis.
template <int N>
struct Differentiator {
  FdScheme scheme = FdScheme::central4;
  Point<N> step{};
  Chart<N> domain;

  Differentiator() = default;
  Differentiator(const Chart<N>& chart, double relative_step = 1e-3, FdScheme s = FdScheme::central4)
      : scheme(s), domain(chart) {
    if (!(relative_step > 0.0)) throw InvalidArgument("differentiator step must be positive");
    for (int a = 0; a < N; ++a) step[a] = relative_step * chart.extent(a);
  }

  /// Stencil half-width in units of the base step.
  double margin() const { return scheme == FdScheme::central4 ? 2.0 : 1.0; }

  Differentiator scaled(double factor) const {
    Differentiator d = *this;
    for (auto& h : d.step) h *= factor;
    return d;
  }

  void check_margin(const Point<N>& p, int axis) const {
    const double reach = margin() * step[axis];
    if (p[axis] - reach < domain.lo[axis] || p[axis] + reach > domain.hi[axis])
      throw BoundaryMarginError("point too close to the boundary of chart '" + domain.name + "' on axis " +
                                std::to_string(axis));
  }
};

namespace detail {

template <int N, int R>
Tensor<N, R> eval_checked(const Field<N, R>& f, const Point<N>& p) {
  Tensor<N, R> v = f(p);
  if (!all_finite(v)) throw NumericDomainError("non-finite field value during differentiation");
  return v;
}

template <int N, int R>
Tensor<N, R> central2(const Field<N, R>& f, int axis, const Point<N>& p, double h) {
  Point<N> a = p, b = p;
  a[axis] += h;
  b[axis] -= h;
  return (eval_checked(f, a) - eval_checked(f, b)) * (0.5 / h);
}

template <int N, int R>
Tensor<N, R> central4(const Field<N, R>& f, int axis, const Point<N>& p, double h) {
  Tensor<N, R> out;
  Point<N> q = p;
  const double w[4] = {-1.0, 8.0, -8.0, 1.0};
  const double off[4] = {2.0, 1.0, -1.0, -2.0};
  for (int k = 0; k < 4; ++k) {
    q[axis] = p[axis] + off[k] * h;
    const Tensor<N, R> v = eval_checked(f, q);
    for (int c = 0; c < Tensor<N, R>::kSize; ++c) out.v[c] += w[k] * v.v[c];
  }
  return out * (1.0 / (12.0 * h));
}

// Three-level Richardson tableau on central-2 with steps h, h/2, h/4.
template <int N, int R>
Tensor<N, R> richardson(const Field<N, R>& f, int axis, const Point<N>& p, double h) {
  const Tensor<N, R> d1 = central2(f, axis, p, h);
  const Tensor<N, R> d2 = central2(f, axis, p, 0.5 * h);
  const Tensor<N, R> d4 = central2(f, axis, p, 0.25 * h);
  const Tensor<N, R> r1 = (4.0 * d2 - d1) * (1.0 / 3.0);
  const Tensor<N, R> r2 = (4.0 * d4 - d2) * (1.0 / 3.0);
  return (16.0 * r2 - r1) * (1.0 / 15.0);
}

}  // namespace detail

/// d f / d x^axis at p.
template <int N, int R>
Tensor<N, R> partial(const Field<N, R>& f, int axis, const Point<N>& p, const Differentiator<N>& d) {
  d.check_margin(p, axis);
  const double h = d.step[axis];
  switch (d.scheme) {
    case FdScheme::central2:
      return detail::central2(f, axis, p, h);
    case FdScheme::central4:
      return detail::central4(f, axis, p, h);
    case FdScheme::richardson:
      return detail::richardson(f, axis, p, h);
  }
  return {};
}

/// All partial derivatives; the derivative index comes first: out(s, ...) = d_s f(...).
template <int N, int R>
Tensor<N, R + 1> gradient(const Field<N, R>& f, const Point<N>& p, const Differentiator<N>& d) {
  Tensor<N, R + 1> out;
  constexpr int block = Tensor<N, R>::kSize;
  for (int s = 0; s < N; ++s) {
    const Tensor<N, R> ds = partial(f, s, p, d);
    for (int c = 0; c < block; ++c) out.v[s * block + c] = ds.v[c];
  }
  return out;
}

/// Field of derivatives, derivative slot first and tagged as a coordinate index.
template <int N, int R>
Field<N, R + 1> gradient_field(const Field<N, R>& f, const Differentiator<N>& d) {
  std::array<IndexKind, R + 1> kinds{};
  kinds[0] = IndexKind::coordinate;
  for (int k = 0; k < R; ++k) kinds[k + 1] = f.kinds[k];
  return Field<N, R + 1>([f, d](const Point<N>& p) { return gradient(f, p, d); }, kinds);
}

/// [X,Y]^m = X^n d_n Y^m - Y^n d_n X^m.
template <int N>
Tensor<N, 1> lie_bracket(const VectorField<N>& x, const VectorField<N>& y, const Point<N>& p,
                         const Differentiator<N>& d) {
  const Tensor<N, 1> xv = x(p), yv = y(p);
  const Tensor<N, 2> dx = gradient(x, p, d), dy = gradient(y, p, d);
  Tensor<N, 1> out;
  for (int m = 0; m < N; ++m) {
    double s = 0.0;
    for (int n = 0; n < N; ++n) s += xv(n) * dy(n, m) - yv(n) * dx(n, m);
    out(m) = s;
  }
  return out;
}

template <int N>
VectorField<N> lie_bracket_field(const VectorField<N>& x, const VectorField<N>& y, const Differentiator<N>& d) {
  return coordinate_vector_field<N>([x, y, d](const Point<N>& p) { return lie_bracket(x, y, p, d); });
}

/// (L_X g)_{mn} = X^l d_l g_{mn} + g_{ln} d_m X^l + g_{ml} d_n X^l.
template <int N>
Tensor<N, 2> lie_derivative_metric(const VectorField<N>& x, const Field<N, 2>& g, const Point<N>& p,
                                   const Differentiator<N>& d) {
  const Tensor<N, 1> xv = x(p);
  const Tensor<N, 2> gv = g(p);
  const Tensor<N, 2> dx = gradient(x, p, d);
  const Tensor<N, 3> dg = gradient(g, p, d);
  Tensor<N, 2> out;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) {
      double s = 0.0;
      for (int l = 0; l < N; ++l) s += xv(l) * dg(l, m, n) + gv(l, n) * dx(m, l) + gv(m, l) * dx(n, l);
      out(m, n) = s;
    }
  return out;
}

}  // namespace gravgauge
