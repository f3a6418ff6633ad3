#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "momentbc/dynamics.hpp"

namespace momentbc {

/// W^T: column j maps f = e_j (control sample f_j) to the final state (u_{1,T}, ..., u_{T,T}).
struct ControlMatrix {
  Matrix entries;

  Index horizon() const { return entries.rows(); }
};

/// C^T, complex symmetric.
struct ConnectingMatrix {
  Matrix entries;

  Index horizon() const { return entries.rows(); }
};

struct AdmissibilityVerdict {
  bool admissible = false;
  std::optional<std::size_t> failing_k;  // first k with C^{T-k} numerically singular
  std::vector<double> sigma_ratios;      // sigma_min/sigma_max of C^{T-k}, indexed by k
  double tolerance = 0.0;

  /// sigma_ratio / tolerance at k; values near 1 are borderline.
  double margin(std::size_t k) const { return sigma_ratios.at(k) / tolerance; }
};

ControlMatrix control_matrix(const JacobiSpec& spec, std::size_t horizon);

/// C_{ij} = r_0 * sum_{k=0}^{T-max(i,j)} r_{|i-j|+2k}, 1-based i, j; uses r_0..r_{2T-2}.
ConnectingMatrix connecting_from_response(const ResponseVector& r, std::size_t horizon);

/// W^T W, the matrix of (W f, W_# g) with W_# = conj(W).
ConnectingMatrix connecting_from_gram(const JacobiSpec& spec, std::size_t horizon);

/// r is a response vector iff every C^{T-k}, k = 0..T-1, is an isomorphism. Numerically:
/// sigma_min > tol * sigma_max for each.
AdmissibilityVerdict check_admissibility(const ResponseVector& r, std::size_t horizon, double tol = 1e-10);

}  // namespace momentbc
