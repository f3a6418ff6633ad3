#include "momentbc/moment_bridge.hpp"

#include <string>

#include "momentbc/errors.hpp"
#include "momentbc/linalg.hpp"

namespace momentbc {
namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  std::int64_t value = 1;
  for (std::int64_t i = 0; i < k; ++i) value = value * (n - i) / (i + 1);
  return value;
}

// sum_{j < upto} L(t, j) z_j with Neumaier compensation per component.
Complex row_sum(const IntegerMatrix& L, Index t, const ComplexVector& z, Index upto) {
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
  auto add = [](double& sum, double& c, double x) {
    const double s = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - s) + x : (x - s) + sum;
    sum = s;
  };
  for (Index j = 0; j < upto; ++j) {
    const std::int64_t coefficient = L(t, j);
    if (coefficient == 0) continue;
    const Complex term = static_cast<double>(coefficient) * z[static_cast<std::size_t>(j)];
    add(re, cre, term.real());
    add(im, cim, term.imag());
  }
  return {re + cre, im + cim};
}

}  // namespace

HankelMatrix hankel(const MomentSequence& s, std::size_t n) {
  if (n == 0 || s.size() < 2 * n - 1) {
    throw Error(ErrorCode::TooFewMoments, "S^" + std::to_string(n) + " needs s_0..s_" + std::to_string(2 * n - 2) +
                                              ", got " + std::to_string(s.size()) + " moments");
  }
  const auto m = static_cast<Index>(n);
  HankelMatrix S{Matrix(m, m)};
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) S.entries(i, j) = s.s[static_cast<std::size_t>(2 * m - 2 - i - j)];
  }
  return S;
}

LambdaMatrix lambda_matrix(std::size_t n) {
  if (n > kMaxLambdaSize) {
    throw Error(ErrorCode::SizeExceedsSpec,
                "Lambda_" + std::to_string(n) + " exceeds the int64 range guard " + std::to_string(kMaxLambdaSize));
  }
  const auto m = static_cast<Index>(n);
  LambdaMatrix L{IntegerMatrix::Zero(m, m)};
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j <= i; ++j) {
      if ((i + j) % 2 != 0) continue;
      const std::int64_t half = (i + j) / 2;
      const std::int64_t sign = (half + j) % 2 == 0 ? 1 : -1;
      L.entries(i, j) = sign * binomial(half, j);
    }
  }
  return L;
}

Matrix exchange_matrix(std::size_t n) {
  const auto m = static_cast<Index>(n);
  Matrix J = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) J(i, m - 1 - i) = 1.0;
  return J;
}

ResponseVector moments_to_response(const MomentSequence& s) {
  const LambdaMatrix L = lambda_matrix(s.size());
  ResponseVector r{ComplexVector(s.size())};
  for (Index t = 0; t < L.n(); ++t) r.r[static_cast<std::size_t>(t)] = row_sum(L.entries, t, s.s, t + 1);
  return r;
}

MomentSequence response_to_moments(const ResponseVector& r) {
  const LambdaMatrix L = lambda_matrix(r.size());
  MomentSequence s{ComplexVector(r.size())};
  // Unit diagonal: s_t = r_t - sum_{j<t} Lambda_tj s_j.
  for (Index t = 0; t < L.n(); ++t) {
    const auto tt = static_cast<std::size_t>(t);
    s.s[tt] = r.r[tt] - row_sum(L.entries, t, s.s, t);
  }
  return s;
}

double verify_factorization(const ConnectingMatrix& C, const MomentSequence& s) {
  const auto n = static_cast<std::size_t>(C.horizon());
  const HankelMatrix S = hankel(s, n);
  const Matrix J = exchange_matrix(n);
  const Matrix tilde = J * lambda_matrix(n).entries.cast<double>().cast<Complex>() * J;
  return max_abs(C.entries - tilde * S.entries * tilde.transpose());
}

}  // namespace momentbc
