#include "momentbc/bc_operators.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "momentbc/errors.hpp"
#include "momentbc/linalg.hpp"

namespace momentbc {

ControlMatrix control_matrix(const JacobiSpec& spec, std::size_t horizon) {
  if (horizon == 0 || spec.size() < horizon) {
    throw Error(ErrorCode::InsufficientCoefficients,
                "W^" + std::to_string(horizon) + " needs a spec of size >= " + std::to_string(horizon) +
                    ", got " + std::to_string(spec.size()));
  }
  const GoursatKernel kernel = goursat_kernel(spec, horizon);
  const auto T = static_cast<Index>(horizon);
  ControlMatrix W{Matrix::Zero(T, T)};
  // (W f)_n = P_n f_{T-n} + sum_{s=n}^{T-1} w_{n,s} f_{T-s-1}
  for (Index n = 1; n <= T; ++n) {
    W.entries(n - 1, T - n) += kernel.products[static_cast<std::size_t>(n)];
    for (Index s = n; s <= T - 1; ++s) W.entries(n - 1, T - s - 1) += kernel.w(static_cast<std::size_t>(n), s);
  }
  return W;
}

ConnectingMatrix connecting_from_response(const ResponseVector& r, std::size_t horizon) {
  if (horizon == 0 || r.size() < 2 * horizon - 1) {
    throw Error(ErrorCode::TooFewResponseEntries,
                "C^" + std::to_string(horizon) + " needs r_0..r_" + std::to_string(2 * horizon - 2) + ", got " +
                    std::to_string(r.size()) + " entries");
  }
  const auto T = static_cast<long>(horizon);
  const Complex a0 = r.r[0];
  ConnectingMatrix C{Matrix::Zero(T, T)};
  for (long i = 1; i <= T; ++i) {
    for (long j = 1; j <= T; ++j) {
      Complex sum{};
      for (long k = 0; k <= T - std::max(i, j); ++k) sum += r.r[static_cast<std::size_t>(std::labs(i - j) + 2 * k)];
      C.entries(i - 1, j - 1) = a0 * sum;
    }
  }
  return C;
}

ConnectingMatrix connecting_from_gram(const JacobiSpec& spec, std::size_t horizon) {
  const ControlMatrix W = control_matrix(spec, horizon);
  const Index T = W.horizon();
  ConnectingMatrix C{Matrix::Zero(T, T)};
  // Bilinear Gram matrix; filled once per pair so C^T = C holds bitwise.
  for (Index i = 0; i < T; ++i) {
    for (Index j = i; j < T; ++j) {
      Complex sum{};
      for (Index n = 0; n < T; ++n) sum += W.entries(n, i) * W.entries(n, j);
      C.entries(i, j) = sum;
      C.entries(j, i) = sum;
    }
  }
  return C;
}

AdmissibilityVerdict check_admissibility(const ResponseVector& r, std::size_t horizon, double tol) {
  const ConnectingMatrix full = connecting_from_response(r, horizon);
  AdmissibilityVerdict verdict;
  verdict.tolerance = tol;
  verdict.admissible = true;
  for (std::size_t k = 0; k < horizon; ++k) {
    const ConnectingMatrix nested = connecting_from_response(r, horizon - k);
    const auto m = static_cast<Index>(horizon - k);
    const auto offset = static_cast<Index>(k);
    if (nested.entries != full.entries.block(offset, offset, m, m)) {
      throw std::logic_error("C^" + std::to_string(horizon - k) + " disagrees with the trailing block of C^" +
                             std::to_string(horizon));
    }
    const double ratio = sigma_ratio(nested.entries);
    verdict.sigma_ratios.push_back(ratio);
    if (!(ratio > tol) && verdict.admissible) {
      verdict.admissible = false;
      verdict.failing_k = k;
    }
  }
  return verdict;
}

}  // namespace momentbc
