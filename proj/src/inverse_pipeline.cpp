#include "momentbc/inverse_pipeline.hpp"

#include <algorithm>
#include <string>

#include "momentbc/errors.hpp"
#include "momentbc/linalg.hpp"

namespace momentbc {
namespace {

// Above this sigma ratio a minor is considered well conditioned.
constexpr double kConditionWarning = 1e-6;

using Polynomial = ComplexVector;  // ascending coefficients

// <p, q> = sum_{i,j} p_i q_j s_{i+j}; no complex conjugation.
Complex pairing(const Polynomial& p, const Polynomial& q, const ComplexVector& s) {
  Complex sum{};
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) sum += p[i] * q[j] * s[i + j];
  }
  return sum;
}

Polynomial times_lambda(const Polynomial& p) {
  Polynomial out(p.size() + 1);
  std::copy(p.begin(), p.end(), out.begin() + 1);
  return out;
}

}  // namespace

const char* to_string(Backend backend) {
  return backend == Backend::takagi ? "takagi" : "eigen_oracle";
}

Complex principal_sqrt(Complex z) {
  Complex root = std::sqrt(z);
  if (root.real() < 0.0 || (root.real() == 0.0 && root.imag() < 0.0)) root = -root;
  return root;
}

JacobiSpec RecoveryResult::spec() const { return JacobiSpec{a0, a_principal, b}; }

RecoveryResult recover_coefficients(const MomentSequence& s, std::size_t depth, double tol_singular) {
  if (depth == 0 || s.size() < 2 * depth) {
    throw Error(ErrorCode::TooFewMoments, "recovery to depth " + std::to_string(depth) + " needs s_0..s_" +
                                              std::to_string(2 * depth - 1) + ", got " + std::to_string(s.size()) +
                                              " moments");
  }
  RecoveryResult result;
  result.a0 = s.s[0];

  const ResponseVector r = moments_to_response(s);
  for (std::size_t k = 1; k <= depth; ++k) {
    ConditionStep step;
    step.k = k;
    step.hankel_ratio = sigma_ratio(hankel(s, k).entries);
    step.connecting_ratio = sigma_ratio(connecting_from_response(r, k).entries);
    result.condition_report.push_back(step);
    if (!(step.hankel_ratio > tol_singular)) {
      throw Error(ErrorCode::SingularMinor, "Hankel minor S^" + std::to_string(k) + " is singular (sigma ratio " +
                                                format_real(step.hankel_ratio) + " <= " +
                                                format_real(tol_singular) + ")");
    }
    if (step.hankel_ratio < kConditionWarning) {
      result.warnings.push_back("IllConditioned(" + std::to_string(k) + ", " + format_real(step.hankel_ratio) + ")");
    }
  }

  Polynomial previous;   // p_{-1} = 0
  Polynomial current{1.0};  // p_0 = 1
  Complex previous_norm{};
  for (std::size_t n = 0; n < depth; ++n) {
    const Complex norm = pairing(current, current, s.s);
    if (norm == Complex{}) {
      throw Error(ErrorCode::SingularMinor, "<p_" + std::to_string(n) + ", p_" + std::to_string(n) + "> = 0");
    }
    Complex a_sq{};
    if (n > 0) {
      a_sq = norm / previous_norm;
      result.a_squared.push_back(a_sq);
      result.a_principal.push_back(principal_sqrt(a_sq));
    }
    const Polynomial shifted = times_lambda(current);
    const Complex b = pairing(shifted, current, s.s) / norm;
    result.b.push_back(b);
    if (n + 1 == depth) break;

    // p_{n+1} = lambda p_n - b_{n+1} p_n - a_n^2 p_{n-1}
    Polynomial next = shifted;
    for (std::size_t i = 0; i < current.size(); ++i) next[i] -= b * current[i];
    for (std::size_t i = 0; i < previous.size(); ++i) next[i] -= a_sq * previous[i];
    previous = std::move(current);
    current = std::move(next);
    previous_norm = norm;
  }
  return result;
}

DiscreteMeasure measure_from_matrix(const FiniteJacobiMatrix& A, Complex a0, const SolveOptions& options) {
  if (options.backend == Backend::eigen_oracle) return eigen_oracle_measure(A.entries, a0);
  const TakagiFactorization fac = takagi_factorize(A.entries);
  const TakagiFactorization distinct = enforce_distinct(fac, default_gap(fac), options.phase_step);
  return build_measure(spectral_data(A.entries, distinct, options.variant), a0);
}

std::vector<double> verify_measure(const DiscreteMeasure& m, const MomentSequence& s) {
  std::vector<double> residuals;
  residuals.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) residuals.push_back(std::abs(measure_moment(m, k) - s.s[k]));
  return residuals;
}

SolveReport solve_truncated(const MomentSequence& s, const SolveOptions& options) {
  if (s.size() % 2 == 0) {
    throw Error(ErrorCode::EvenLength, "expected an odd number of moments s_0..s_{2N}, got " + std::to_string(s.size()));
  }
  if (s.size() < 3) throw Error(ErrorCode::TooFewMoments, "need at least s_0, s_1, s_2");
  for (const Complex& z : s.s) {
    if (!is_finite(z)) throw Error(ErrorCode::NonFiniteEntry, "moment sequence has a non-finite entry");
  }
  const std::size_t n = (s.size() - 1) / 2;

  SolveReport report;
  report.backend = options.backend;

  // Step 1: moments -> response vector.
  const ResponseVector r = moments_to_response(s);

  // Step 2: admissibility of r_0..r_{2N-2}, then the Jacobi coefficients.
  report.admissibility = check_admissibility(r, n, options.tol_singular);
  if (!report.admissibility.admissible) {
    const std::size_t k = *report.admissibility.failing_k;
    throw Error(ErrorCode::Inadmissible,
                "admissibility: C^" + std::to_string(n - k) + " singular (k=" + std::to_string(k) + ", sigma ratio " +
                    format_real(report.admissibility.sigma_ratios[k]) + " <= tol " +
                    format_real(options.tol_singular) + ")");
  }
  report.recovery = recover_coefficients(s, n, options.tol_singular);

  // Steps 3-4: factorization, spectral data, measure.
  const FiniteJacobiMatrix A = truncate(report.recovery.spec(), n);
  report.measure = measure_from_matrix(A, report.recovery.a0, options);

  report.moment_residuals = verify_measure(report.measure, s);
  for (std::size_t k = 0; k < s.size(); ++k) {
    report.max_relative_residual =
        std::max(report.max_relative_residual, report.moment_residuals[k] / std::max(1.0, std::abs(s.s[k])));
  }
  report.reproduces_moments = report.max_relative_residual <= options.tol_residual;
  return report;
}

ScanReport convergence_scan(const JacobiSpec& spec, std::span<const std::size_t> sizes, const SolveOptions& options,
                            double tol) {
  validate(spec);
  if (sizes.empty()) throw Error(ErrorCode::InvalidSpec, "convergence scan needs at least one size");
  const std::size_t smallest = *std::min_element(sizes.begin(), sizes.end());
  if (smallest == 0) throw Error(ErrorCode::InvalidSpec, "sizes must be positive");
  for (std::size_t n : sizes) {
    if (n > spec.size()) {
      throw Error(ErrorCode::InsufficientCoefficients,
                  "A^" + std::to_string(n) + " requested from a spec of size " + std::to_string(spec.size()));
    }
  }

  ScanReport report;
  report.shared_order = 2 * smallest - 2;
  for (std::size_t n : sizes) {
    ScanEntry entry;
    entry.n = n;
    entry.measure = measure_from_matrix(truncate(spec, n), spec.a0, options);
    for (std::size_t k = 0; k <= report.shared_order; ++k) entry.moments.push_back(measure_moment(entry.measure, k));
    report.entries.push_back(std::move(entry));
  }
  const ComplexVector& reference = report.entries.front().moments;
  for (const ScanEntry& entry : report.entries) {
    for (std::size_t k = 0; k <= report.shared_order; ++k) {
      const double deviation = std::abs(entry.moments[k] - reference[k]);
      report.max_deviation = std::max(report.max_deviation, deviation);
      report.max_relative_deviation =
          std::max(report.max_relative_deviation, deviation / std::max(1.0, std::abs(reference[k])));
    }
  }
  report.stable = report.max_relative_deviation <= tol;
  return report;
}

}  // namespace momentbc
