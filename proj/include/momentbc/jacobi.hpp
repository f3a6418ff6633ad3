#pragma once

#include <cstddef>
#include <random>

#include "momentbc/types.hpp"

namespace momentbc {

/// Coefficients of a complex Jacobi matrix together with the boundary coupling a_0.
///
/// Site indices are 1-based: a_1..a_{N-1} live in a[0..N-2], b_1..b_N in b[0..N-1].
/// The accessors coupling() and diagonal() take site indices and return zero past
/// the end of the spec; a vanishing a_N is exactly the Dirichlet wall at site N+1
/// of the finite system, so every simulation of a size-N spec is the finite system
/// A^N.
struct JacobiSpec {
  Complex a0{1.0, 0.0};
  ComplexVector a;
  ComplexVector b;

  std::size_t size() const { return b.size(); }

  /// a_n for n >= 0 (a_0 is the boundary coupling).
  Complex coupling(std::size_t n) const {
    if (n == 0) return a0;
    return n <= a.size() ? a[n - 1] : Complex{};
  }

  /// b_n for n >= 1.
  Complex diagonal(std::size_t n) const {
    return (n >= 1 && n <= b.size()) ? b[n - 1] : Complex{};
  }
};

/// Leading n x n block of the (infinite) Jacobi matrix.
struct FiniteJacobiMatrix {
  Matrix entries;

  Index n() const { return entries.rows(); }
};

/// Throws Error{ZeroCoefficient | LengthMismatch | NonFiniteEntry}.
void validate(const JacobiSpec& spec);

/// A^n: diagonal b_1..b_n, off-diagonal a_1..a_{n-1}. Entries are copied, not computed.
FiniteJacobiMatrix truncate(const JacobiSpec& spec, std::size_t n);

/// Spec of the auxiliary system built on conj(A) and conj(a_0).
JacobiSpec conjugate(const JacobiSpec& spec);

/// The same spec cut down to its first n sites.
JacobiSpec leading(const JacobiSpec& spec, std::size_t n);

/// Random test instance of size n: re/im parts uniform in [-2, 2], |a_k| >= 0.1.
/// With unit_a0 the boundary coupling is fixed to 1.
JacobiSpec random_spec(std::mt19937_64& rng, std::size_t n, bool unit_a0 = false);

}  // namespace momentbc
