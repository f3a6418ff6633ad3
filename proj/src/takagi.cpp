#include "momentbc/takagi.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <string>

#include "momentbc/errors.hpp"
#include "momentbc/linalg.hpp"

namespace momentbc {
namespace {

// Singular values closer than this (relative to the largest) share a subspace in which
// the Takagi basis is free up to a real orthogonal rotation.
constexpr double kDegenerateSubspace = 1e-12;
// Mixing weight for the imaginary part of the bilinear Gram matrix; any irrational-ish
// value works when the real and imaginary parts commute.
constexpr double kImagMix = 0.7548776662466927;

Matrix diag_of(const ComplexVector& d) {
  Matrix D = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) D(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
  return D;
}

// Within a degenerate subspace, V -> V O with O real orthogonal keeps A conj(v) = sigma v.
// Choose O to diagonalize the bilinear Gram matrix V^T V when that is possible, i.e.
// make the Takagi vectors eigenvectors of A whenever A is normal on the subspace.
void rotate_degenerate_block(Matrix& V, Index first, Index count) {
  const Matrix block = V.middleCols(first, count);
  const Matrix gram = block.transpose() * block;
  const Eigen::MatrixXd mixed = gram.real() + kImagMix * gram.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (mixed + mixed.transpose()));
  V.middleCols(first, count) = block * es.eigenvectors().cast<Complex>();
}

}  // namespace

TakagiFactorization takagi_factorize(const Matrix& A, double tol) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw Error(ErrorCode::NotSymmetric, "Takagi factorization needs a nonempty square matrix");
  }
  const Index n = A.rows();
  const double scale = std::max(1.0, max_abs(A));
  const double asymmetry = max_abs(A - A.transpose());
  if (!(asymmetry <= tol * scale)) {
    throw Error(ErrorCode::NotSymmetric, "max|A - A^T| = " + format_real(asymmetry));
  }

  // Real embedding [[Re A, Im A], [Im A, -Re A]] has eigenvalues +-sigma_i. An eigenvector
  // (x, y) for +sigma gives v = x + i y with A conj(v) = sigma v, and these v are
  // orthonormal in C^n.
  const Eigen::MatrixXd re = A.real();
  const Eigen::MatrixXd im = A.imag();
  Eigen::MatrixXd embedding(2 * n, 2 * n);
  embedding << re, im, im, -re;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(embedding);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SingularInput, "eigensolver did not converge");

  const Eigen::VectorXd& values = es.eigenvalues();  // ascending
  const double sigma_max = values(2 * n - 1);
  const double sigma_min = values(n);
  if (!(sigma_max > 0.0) || !(sigma_min > tol * sigma_max)) {
    throw Error(ErrorCode::SingularInput, "smallest Takagi value " + format_real(sigma_min) +
                                              " below " + format_real(tol) + " * " + format_real(sigma_max));
  }

  Matrix V(n, n);
  ComplexVector d(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Index col = 2 * n - 1 - i;
    V.col(i) = es.eigenvectors().col(col).head(n).cast<Complex>() +
               Complex{0.0, 1.0} * es.eigenvectors().col(col).tail(n).cast<Complex>();
    d[static_cast<std::size_t>(i)] = values(col);
  }

  for (Index first = 0; first < n;) {
    Index last = first;
    while (last + 1 < n && d[first].real() - d[last + 1].real() <= kDegenerateSubspace * sigma_max) ++last;
    if (last > first) rotate_degenerate_block(V, first, last - first + 1);
    first = last + 1;
  }

  return TakagiFactorization{V.adjoint(), std::move(d)};
}

double default_gap(const TakagiFactorization& fac) {
  double largest = 0.0;
  for (const Complex& z : fac.d) largest = std::max(largest, std::abs(z));
  return kCoincidenceThreshold * largest;
}

TakagiFactorization enforce_distinct(const TakagiFactorization& fac, double gap, std::optional<double> phase_step) {
  const std::size_t n = fac.d.size();
  double largest = 0.0;
  for (const Complex& z : fac.d) {
    if (z == Complex{}) throw Error(ErrorCode::CannotSeparate, "zero diagonal entry cannot be phase-separated");
    largest = std::max(largest, std::abs(z));
  }
  const double threshold = kCoincidenceThreshold * largest;

  // Group coincident values (transitively).
  std::vector<std::size_t> group(n);
  std::iota(group.begin(), group.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(fac.d[i] - fac.d[j]) < threshold) {
        const std::size_t from = group[j], to = group[i];
        for (auto& g : group) {
          if (g == from) g = to;
        }
      }
    }
  }

  TakagiFactorization out = fac;
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (group[i] == root) members.push_back(i);
    }
    if (members.size() < 2) continue;
    const double step = phase_step.value_or(std::numbers::pi / (2.0 * static_cast<double>(members.size())));
    for (std::size_t j = 1; j < members.size(); ++j) {
      const double phi = static_cast<double>(j) * step;
      const auto row = static_cast<Index>(members[j]);
      out.d[members[j]] *= std::polar(1.0, phi);
      out.U.row(row) *= std::polar(1.0, 0.5 * phi);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double separation = std::abs(out.d[i] - out.d[j]);
      if (separation < gap) {
        throw Error(ErrorCode::CannotSeparate, "d_" + std::to_string(i + 1) + " and d_" + std::to_string(j + 1) +
                                                   " remain " + format_real(separation) + " apart");
      }
    }
  }
  return out;
}

double unitarity_residual(const Matrix& U) {
  return max_abs(U * U.adjoint() - Matrix::Identity(U.rows(), U.cols()));
}

double diagonalization_residual(const Matrix& A, const TakagiFactorization& fac) {
  return max_abs(fac.U * A * fac.U.transpose() - diag_of(fac.d));
}

double reconstruction_residual(const Matrix& A, const TakagiFactorization& fac) {
  return max_abs(A - fac.U.adjoint() * diag_of(fac.d) * fac.U.conjugate());
}

}  // namespace momentbc
