#pragma once

#include <gtest/gtest.h>

#include "gravgauge/gravgauge.hpp"

namespace gg = gravgauge;

inline gg::Chart<2> unit_square(double half = 1.0) { return gg::Chart<2>("square", {-half, -half}, {half, half}); }

/// Identity vielbein with zero connection: the flat gauge.
template <int N>
gg::AffineGaugeField<N> flat_gauge(const gg::Chart<N>& chart, const gg::SignatureMetric<N>& sig) {
  const auto id = gg::constant_field<N, 2>(gg::identity_tensor<N>(), {});
  return gg::make_gauge_field<N>(chart, gg::make_vielbein<N>(id, id, sig), gg::zero_connection<N>(chart, sig));
}

template <int N>
gg::VectorField<N> constant_vector(std::array<double, N> v) {
  return gg::coordinate_vector_field<N>([v](const gg::Point<N>&) {
    gg::Tensor<N, 1> t;
    for (int k = 0; k < N; ++k) t(k) = v[k];
    return t;
  });
}

/// Constant eta-skew connection coefficients.
template <int N>
gg::ConnectionCoefficients<N> constant_connection(const gg::Chart<N>& chart, const gg::SignatureMetric<N>& sig,
                                                  const gg::Tensor<N, 3>& g) {
  return gg::make_connection<N>(chart, sig, gg::constant_field<N, 3>(g, {}));
}

/// Random eta-skew Gamma^i_{mu j} value.
template <int N>
gg::Tensor<N, 3> random_skew_gamma(gg::Rng& rng, const gg::SignatureMetric<N>& sig) {
  return gg::random_skew_delta_value<N>(rng, sig);
}
