#pragma once

// Thin bridges between component tensors and Eigen fixed-size matrices.

#include <Eigen/Dense>

#include "gravgauge/fields.hpp"

namespace gravgauge {

template <int N>
using Mat = Eigen::Matrix<double, N, N>;

template <int N>
Mat<N> to_mat(const Tensor<N, 2>& t) {
  Mat<N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m(i, j) = t(i, j);
  return m;
}

template <int N>
Tensor<N, 2> from_mat(const Mat<N>& m) {
  Tensor<N, 2> t;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) t(i, j) = m(i, j);
  return t;
}

template <int N>
Tensor<N, 2> identity_tensor() {
  Tensor<N, 2> t;
  for (int i = 0; i < N; ++i) t(i, i) = 1.0;
  return t;
}

template <int N>
Tensor<N, 2> matmul(const Tensor<N, 2>& a, const Tensor<N, 2>& b) {
  Tensor<N, 2> c;
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <int N>
Tensor<N, 2> inverse(const Tensor<N, 2>& t) {
  return from_mat<N>(to_mat<N>(t).inverse());
}

template <int N>
double det(const Tensor<N, 2>& t) {
  return to_mat<N>(t).determinant();
}

template <int N>
double condition_number(const Tensor<N, 2>& t) {
  Eigen::JacobiSVD<Mat<N>> svd(to_mat<N>(t));
  const auto& s = svd.singularValues();
  return s(N - 1) > 0.0 ? s(0) / s(N - 1) : std::numeric_limits<double>::infinity();
}

}  // namespace gravgauge
