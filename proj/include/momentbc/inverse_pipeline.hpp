#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "momentbc/bc_operators.hpp"
#include "momentbc/moment_bridge.hpp"
#include "momentbc/spectral_measure.hpp"

namespace momentbc {

/// Conditioning of the k x k Hankel and connecting minors at recursion depth k.
struct ConditionStep {
  std::size_t k = 0;
  double hankel_ratio = 0.0;      // sigma_min / sigma_max of S^k
  double connecting_ratio = 0.0;  // sigma_min / sigma_max of C^k
};

struct RecoveryResult {
  Complex a0;
  ComplexVector a_squared;   // (a_k)^2, k = 1..N-1
  ComplexVector a_principal; // principal roots: Re >= 0, Im >= 0 when Re == 0
  ComplexVector b;           // b_1..b_N
  std::vector<ConditionStep> condition_report;
  std::vector<std::string> warnings;

  /// Spec with the principal-root sign convention.
  JacobiSpec spec() const;
};

enum class Backend { takagi, eigen_oracle };

const char* to_string(Backend backend);

struct SolveOptions {
  Backend backend = Backend::takagi;
  double tol_singular = 1e-10;
  double tol_residual = 1e-8;
  std::optional<double> phase_step;
  OmegaVariant variant{};
};

struct SolveReport {
  DiscreteMeasure measure;
  std::vector<double> moment_residuals;  // |int lambda^k - s_k|, one per input moment
  AdmissibilityVerdict admissibility;
  RecoveryResult recovery;
  Backend backend = Backend::takagi;
  /// Every residual is below tol_residual * max(1, |s_k|).
  bool reproduces_moments = false;
  double max_relative_residual = 0.0;
};

/// Principal square root with the sign convention of RecoveryResult::a_principal.
Complex principal_sqrt(Complex z);

/// Recovers b_1..b_depth and (a_1)^2..(a_{depth-1})^2 from s_0..s_{2 depth - 1} via monic
/// polynomials orthogonal for the bilinear pairing <lambda^i, lambda^j> = s_{i+j}:
///   lambda p_n = p_{n+1} + b_{n+1} p_n + a_n^2 p_{n-1}.
/// Throws Error{TooFewMoments | SingularMinor}.
RecoveryResult recover_coefficients(const MomentSequence& s, std::size_t depth, double tol_singular = 1e-10);

/// Discrete measure of A^N through the selected backend.
DiscreteMeasure measure_from_matrix(const FiniteJacobiMatrix& A, Complex a0, const SolveOptions& options = {});

/// s_0..s_{2N} (odd length, >= 3) -> N-point measure. Steps: response vector, admissibility
/// of C^N, coefficient recovery, factorization and spectral data, measure.
/// Throws Error{EvenLength | TooFewMoments | Inadmissible | SingularMinor | ...}.
SolveReport solve_truncated(const MomentSequence& s, const SolveOptions& options = {});

/// |measure_moment(m, k) - s_k| for each k.
std::vector<double> verify_measure(const DiscreteMeasure& m, const MomentSequence& s);

struct ScanEntry {
  std::size_t n = 0;
  DiscreteMeasure measure;
  ComplexVector moments;  // s_0..s_{shared_order}
};

struct ScanReport {
  std::vector<ScanEntry> entries;
  std::size_t shared_order = 0;         // 2 min(Ns) - 2
  double max_deviation = 0.0;           // max over k <= shared_order of |s_k(N) - s_k(Ns[0])|
  double max_relative_deviation = 0.0;  // same, divided by max(1, |s_k(Ns[0])|)
  bool stable = false;                  // max_relative_deviation <= tol
};

/// Builds the measure of every truncation A^N, N in sizes, and compares the moments they
/// share.
ScanReport convergence_scan(const JacobiSpec& spec, std::span<const std::size_t> sizes,
                            const SolveOptions& options = {}, double tol = 1e-8);

}  // namespace momentbc
