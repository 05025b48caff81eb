#pragma once

// Canonical spacetimes: closed-form metric, documented orthonormal vielbein, chart.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gravgauge/frame.hpp"
#include "gravgauge/oracle.hpp"

namespace gravgauge {

template <int N>
struct CatalogEntry {
  std::string name;
  std::string description;
  Chart<N> chart;
  SignatureMetric<N> signature;
  oracle::MetricSpec<N> metric;  // closed form, independent of the vielbein
  Vielbein<N> vielbein;
  bool vacuum = false;
};

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"minkowski", "euclidean", "sphere2", "schwarzschild", "desitter"};
  return names;
}

/// Chart dimension of a catalog entry, or 0 if unknown.
inline int catalog_dimension(const std::string& name) {
  if (name == "euclidean" || name == "sphere2") return 2;
  if (name == "minkowski" || name == "schwarzschild" || name == "desitter") return 4;
  return 0;
}

namespace detail {

template <int N>
Field<N, 2> diag_field(std::function<std::array<double, N>(const Point<N>&)> f, std::array<IndexKind, 2> kinds) {
  return Field<N, 2>(
      [f = std::move(f)](const Point<N>& p) {
        const auto d = f(p);
        Tensor<N, 2> t;
        for (int i = 0; i < N; ++i) t(i, i) = d[i];
        return t;
      },
      kinds);
}

template <int N>
CatalogEntry<N> diagonal_entry(std::string name, std::string description, Chart<N> chart, SignatureMetric<N> sig,
                               std::function<std::array<double, N>(const Point<N>&)> metric_diag,
                               std::function<std::array<double, N>(const Point<N>&)> frame_diag, bool vacuum) {
  constexpr std::array<IndexKind, 2> cc = {IndexKind::coordinate, IndexKind::coordinate};
  auto g = diag_field<N>(metric_diag, cc);
  auto theta = diag_field<N>(frame_diag, {IndexKind::frame, IndexKind::coordinate});
  auto e_inv = diag_field<N>(
      [frame_diag](const Point<N>& p) {
        auto d = frame_diag(p);
        for (auto& x : d) x = 1.0 / x;
        return d;
      },
      {IndexKind::coordinate, IndexKind::frame});
  CatalogEntry<N> e;
  e.name = name;
  e.description = std::move(description);
  e.chart = std::move(chart);
  e.signature = sig;
  e.metric = oracle::MetricSpec<N>{std::move(g), std::move(name)};
  e.vielbein = make_vielbein<N>(std::move(theta), std::move(e_inv), sig);
  e.vacuum = vacuum;
  return e;
}

}  // namespace detail

inline constexpr double kSchwarzschildMass = 1.0;
inline constexpr double kDeSitterHubble = 1.0;

/// Entry by name, if it exists with chart dimension N.
template <int N>
std::optional<CatalogEntry<N>> catalog_entry(const std::string& name) {
  if constexpr (N == 2) {
    if (name == "euclidean")
      return detail::diagonal_entry<2>(
          name, "Euclidean plane, identity frame", Chart<2>(name, {-1.0, -1.0}, {1.0, 1.0}),
          SignatureMetric<2>::riemannian(), [](const Point<2>&) { return std::array<double, 2>{1.0, 1.0}; },
          [](const Point<2>&) { return std::array<double, 2>{1.0, 1.0}; }, true);
    if (name == "sphere2")
      return detail::diagonal_entry<2>(
          name, "unit 2-sphere, coordinates (theta, phi), frame (d theta, sin theta d phi)",
          Chart<2>(name, {0.5, 0.3}, {2.6, 5.9}), SignatureMetric<2>::riemannian(),
          [](const Point<2>& p) {
            const double s = std::sin(p[0]);
            return std::array<double, 2>{1.0, s * s};
          },
          [](const Point<2>& p) { return std::array<double, 2>{1.0, std::sin(p[0])}; }, false);
  }
  if constexpr (N == 4) {
    if (name == "minkowski")
      return detail::diagonal_entry<4>(
          name, "Minkowski space, signature (1,3), identity frame",
          Chart<4>(name, {0.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0}), SignatureMetric<4>::lorentzian(),
          [](const Point<4>&) { return std::array<double, 4>{1.0, -1.0, -1.0, -1.0}; },
          [](const Point<4>&) { return std::array<double, 4>{1.0, 1.0, 1.0, 1.0}; }, true);
    if (name == "schwarzschild")
      return detail::diagonal_entry<4>(
          name, "Schwarzschild m=1, coordinates (t, r, theta, phi), static orthonormal coframe",
          Chart<4>(name, {0.0, 3.0, 0.5, 0.3}, {1.0, 10.0, 2.6, 5.9}), SignatureMetric<4>::lorentzian(),
          [](const Point<4>& p) {
            const double f = 1.0 - 2.0 * kSchwarzschildMass / p[1];
            const double r2 = p[1] * p[1];
            const double s = std::sin(p[2]);
            return std::array<double, 4>{f, -1.0 / f, -r2, -r2 * s * s};
          },
          [](const Point<4>& p) {
            const double f = 1.0 - 2.0 * kSchwarzschildMass / p[1];
            return std::array<double, 4>{std::sqrt(f), 1.0 / std::sqrt(f), p[1], p[1] * std::sin(p[2])};
          },
          true);
    if (name == "desitter")
      return detail::diagonal_entry<4>(
          name, "de Sitter, flat slicing with H=1, coordinates (t, x, y, z)",
          Chart<4>(name, {0.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0}), SignatureMetric<4>::lorentzian(),
          [](const Point<4>& p) {
            const double a2 = std::exp(2.0 * kDeSitterHubble * p[0]);
            return std::array<double, 4>{1.0, -a2, -a2, -a2};
          },
          [](const Point<4>& p) {
            const double a = std::exp(kDeSitterHubble * p[0]);
            return std::array<double, 4>{1.0, a, a, a};
          },
          false);
  }
  return std::nullopt;
}

template <int N>
CatalogEntry<N> require_entry(const std::string& name) {
  auto e = catalog_entry<N>(name);
  if (!e) throw InvalidArgument("unknown spacetime '" + name + "' for dimension " + std::to_string(N));
  return *e;
}

}  // namespace gravgauge
