#pragma once

#include <optional>

#include "momentbc/types.hpp"

namespace momentbc {

/// U A U^T = diag(d) with U unitary.
struct TakagiFactorization {
  Matrix U;
  ComplexVector d;
};

/// Canonical Takagi factorization of a nonsingular complex symmetric matrix: d real,
/// positive, sorted descending. Within (numerically) degenerate singular subspaces the
/// basis is rotated so that the rows of U are as close to complex-orthogonal as the
/// subspace allows.
///
/// tol is relative to max|A| for the symmetry check and to d_max for singularity.
/// Throws Error{NotSymmetric | SingularInput}.
TakagiFactorization takagi_factorize(const Matrix& A, double tol = 1e-10);

/// Relative threshold below which two diagonal values count as coincident.
inline constexpr double kCoincidenceThreshold = 1e-8;

/// Default separation for enforce_distinct: kCoincidenceThreshold * max|d|.
double default_gap(const TakagiFactorization& fac);

/// Rotates phases inside every group of coincident d values so that all d become
/// pairwise distinct: member j of a group of size m gets d_j e^{i phi_j} and row j of U
/// is multiplied by e^{i phi_j / 2}, phi_j = j * step (step defaults to pi / (2m)).
/// Throws Error{CannotSeparate} if some pair ends closer than gap.
TakagiFactorization enforce_distinct(const TakagiFactorization& fac, double gap,
                                     std::optional<double> phase_step = std::nullopt);

double unitarity_residual(const Matrix& U);
/// max |U A U^T - diag(d)|
double diagonalization_residual(const Matrix& A, const TakagiFactorization& fac);
/// max |A - U^* diag(d) conj(U)|
double reconstruction_residual(const Matrix& A, const TakagiFactorization& fac);

}  // namespace momentbc
