#pragma once

// Shared generators and brute-force oracles for the test suites. Nothing here calls the
// code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "momentbc/errors.hpp"
#include "momentbc/jacobi.hpp"

namespace momentbc::testing {

inline constexpr std::uint64_t kCorpusSeed = 20251016;

/// count random specs with N uniform in [1, max_size].
inline std::vector<JacobiSpec> random_corpus(std::size_t count, std::uint64_t seed, bool unit_a0 = false,
                                             std::size_t max_size = 6) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::vector<JacobiSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = size(rng);
    out.push_back(random_spec(rng, n, unit_a0));
  }
  return out;
}

/// Same corpus with every imaginary part dropped (A^N real, hence normal).
inline JacobiSpec real_part(JacobiSpec spec) {
  auto strip = [](Complex& z) {
    z = {z.real(), 0.0};
    if (std::abs(z) < 0.1) z = {z.real() < 0 ? -0.5 : 0.5, 0.0};
  };
  strip(spec.a0);
  for (Complex& z : spec.a) strip(z);
  for (Complex& z : spec.b) z = {z.real(), 0.0};
  return spec;
}

/// Error code thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorCode> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline double max_abs_diff(const ComplexVector& x, const ComplexVector& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

/// max |x_i - y_i| / max(1, |y_i|)
inline double max_scaled_diff(const ComplexVector& x, const ComplexVector& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    worst = std::max(worst, std::abs(x[i] - y[i]) / std::max(1.0, std::abs(y[i])));
  }
  return worst;
}

inline Matrix dense_jacobi(const JacobiSpec& spec) {
  const auto n = static_cast<Index>(spec.size());
  Matrix A = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    A(i, i) = spec.b[static_cast<std::size_t>(i)];
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = spec.a[static_cast<std::size_t>(i)];
  }
  return A;
}

/// r_{t-1} = a_0 e_1^T T_t(A^N) e_1 from the matrix three-term recurrence.
inline ComplexVector matrix_polynomial_response(const JacobiSpec& spec, std::size_t length) {
  const Matrix A = dense_jacobi(spec);
  const Index n = A.rows();
  Vector previous = Vector::Zero(n);        // T_0(A) e_1
  Vector current = Vector::Unit(n, 0);      // T_1(A) e_1
  ComplexVector r;
  for (std::size_t t = 1; t <= length; ++t) {
    r.push_back(spec.a0 * current(0));
    Vector next = A * current - previous;
    previous = std::move(current);
    current = std::move(next);
  }
  return r;
}

/// s_k = a_0 (A^N)^k_{11}, k < count.
inline ComplexVector matrix_power_moments(const JacobiSpec& spec, std::size_t count) {
  const Matrix A = dense_jacobi(spec);
  Vector v = Vector::Unit(A.rows(), 0);
  ComplexVector s;
  for (std::size_t k = 0; k < count; ++k) {
    s.push_back(spec.a0 * v(0));
    v = A * v;
  }
  return s;
}

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
inline Matrix random_unitary(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g;
  Matrix Z(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) Z(i, j) = Complex{g(rng), g(rng)};
  }
  Eigen::HouseholderQR<Matrix> qr(Z);
  return qr.householderQ() * Matrix::Identity(n, n);
}

/// Random complex symmetric matrix, entries with |re|, |im| <= bound.
inline Matrix random_symmetric(std::mt19937_64& rng, Index n, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  Matrix A(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) A(i, j) = A(j, i) = Complex{u(rng), u(rng)};
  }
  return A;
}

/// U^T diag(sigma) U with the given (possibly repeated) Takagi values.
inline Matrix symmetric_with_takagi_values(std::mt19937_64& rng, const std::vector<double>& sigma) {
  const auto n = static_cast<Index>(sigma.size());
  const Matrix U = random_unitary(rng, n);
  Matrix D = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) D(i, i) = sigma[static_cast<std::size_t>(i)];
  return U.transpose() * D * U;
}

}  // namespace momentbc::testing
