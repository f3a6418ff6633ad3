#pragma once

#include <cstddef>
#include <cstdint>

#include "momentbc/bc_operators.hpp"

namespace momentbc {

struct MomentSequence {
  ComplexVector s;

  std::size_t size() const { return s.size(); }
};

/// S^n with entries[i][j] = s_{2n-2-i-j}: s_{2n-2} top-left, s_0 bottom-right.
struct HankelMatrix {
  Matrix entries;

  Index n() const { return entries.rows(); }
};

using IntegerMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Lambda_n: row t holds the monomial coefficients of T_{t+1}.
struct LambdaMatrix {
  IntegerMatrix entries;

  Index n() const { return entries.rows(); }
};

/// Largest n accepted by lambda_matrix (entries stay inside int64).
inline constexpr std::size_t kMaxLambdaSize = 64;

HankelMatrix hankel(const MomentSequence& s, std::size_t n);

/// 0-based: zero if i < j or i + j odd, else binom((i+j)/2, j) (-1)^{(i+j)/2 + j}.
LambdaMatrix lambda_matrix(std::size_t n);

/// J_n, ones on the anti-diagonal.
Matrix exchange_matrix(std::size_t n);

ResponseVector moments_to_response(const MomentSequence& s);

/// Forward substitution with the unit lower triangular Lambda.
MomentSequence response_to_moments(const ResponseVector& r);

/// max |C - Lt S^N Lt^T|, Lt = J Lambda J. Lambda is real, so Lt^* = Lt^T.
double verify_factorization(const ConnectingMatrix& C, const MomentSequence& s);

}  // namespace momentbc
