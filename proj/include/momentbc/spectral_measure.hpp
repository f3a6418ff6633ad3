#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "momentbc/dynamics.hpp"
#include "momentbc/jacobi.hpp"
#include "momentbc/takagi.hpp"

namespace momentbc {

/// How omega_i is assembled from d, H and rho.
struct OmegaVariant {
  enum class Denominator { rho_k, rho_i };

  /// Multiply by beta_i = conj(uhat^i_1) / uhat^i_1. Without it omega reduces to |b_1|
  /// for a 1x1 matrix.
  bool phase_corrected = true;
  Denominator denominator = Denominator::rho_k;
};

/// Quantities derived from a distinct-diagonal Takagi factorization of A^N.
/// Vector index i is 0-based; site index n inside a vector is 0-based for site n+1.
struct SpectralData {
  ComplexVector d;
  ComplexVector uhat_first;  // uhat^i_1
  Matrix u;                  // column i = u^i = uhat^i / uhat^i_1 (u^i_0 = u^i_{N+1} = 0 implied)
  std::vector<double> rho;   // sum_n |u^i_n|^2
  Matrix H;                  // H_ki = sum_n conj(u^k_n) conj(u^i_n)
  ComplexVector beta;
  ComplexVector omega;

  std::size_t size() const { return d.size(); }
};

/// Finitely supported measure: support[k] carries weights[k].
struct DiscreteMeasure {
  ComplexVector support;
  ComplexVector weights;

  std::size_t size() const { return support.size(); }
  Complex total_mass() const;
};

/// T_t(omega) from T_{t+1} = omega T_t - T_{t-1}, T_0 = 0, T_{-1} = -1.
Complex chebyshev_like(Complex omega, long t);

/// Integer coefficients c_j of T_t(omega) = sum_j c_j omega^j, t >= 1, from the recurrence.
std::vector<std::int64_t> chebyshev_like_coefficients(long t);

/// Throws Error{ZeroFirstComponent | DuplicateDiagonal}.
SpectralData spectral_data(const Matrix& A, const TakagiFactorization& fac, OmegaVariant variant = {});

/// Support omega_k, weights a0 / rho_k. Throws Error{DuplicateSupport} if two support
/// points are closer than 1e-10.
DiscreteMeasure build_measure(const SpectralData& sd, Complex a0);

/// r_{t-1} = sum_k w_k T_t(omega_k), t = 1..length.
ResponseVector spectral_response(const DiscreteMeasure& m, std::size_t length);

/// sum_j w_j (support_j)^k with compensated summation.
Complex measure_moment(const DiscreteMeasure& m, std::size_t k);

/// Measure {lambda_i -> a0 q_i^2} from A = Q diag(lambda) Q^T, Q^T Q = I, q = first row
/// of Q. Independent of the Takagi route. Throws Error{NonDiagonalizable}.
DiscreteMeasure eigen_oracle_measure(const Matrix& A, Complex a0);

}  // namespace momentbc
