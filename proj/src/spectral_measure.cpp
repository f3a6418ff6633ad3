#include "momentbc/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "momentbc/errors.hpp"

namespace momentbc {
namespace {

constexpr double kSupportSeparation = 1e-10;

// Support points in canonical order: real part descending, then imaginary part descending.
DiscreteMeasure canonical(DiscreteMeasure m) {
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Complex p = m.support[x], q = m.support[y];
    if (p.real() != q.real()) return p.real() > q.real();
    return p.imag() > q.imag();
  });
  DiscreteMeasure out;
  for (std::size_t i : order) {
    out.support.push_back(m.support[i]);
    out.weights.push_back(m.weights[i]);
  }
  return out;
}

// Neumaier summation of one component.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

Complex DiscreteMeasure::total_mass() const {
  CompensatedSum re, im;
  for (const Complex& w : weights) {
    re.add(w.real());
    im.add(w.imag());
  }
  return {re.value(), im.value()};
}

Complex chebyshev_like(Complex omega, long t) {
  if (t <= -1) return -1.0;
  Complex previous = -1.0, current = 0.0;  // T_{-1}, T_0
  for (long k = 0; k < t; ++k) {
    const Complex next = omega * current - previous;
    previous = current;
    current = next;
  }
  return current;
}

std::vector<std::int64_t> chebyshev_like_coefficients(long t) {
  std::vector<std::int64_t> previous{-1}, current{0};
  for (long k = 0; k < t; ++k) {
    std::vector<std::int64_t> next(current.size() + 1, 0);
    for (std::size_t j = 0; j < current.size(); ++j) next[j + 1] += current[j];
    for (std::size_t j = 0; j < previous.size(); ++j) next[j] -= previous[j];
    previous = std::move(current);
    current = std::move(next);
  }
  while (current.size() > 1 && current.back() == 0) current.pop_back();
  return current;
}

SpectralData spectral_data(const Matrix& A, const TakagiFactorization& fac, OmegaVariant variant) {
  const std::size_t n = fac.d.size();
  const auto m = static_cast<Index>(n);
  if (fac.U.rows() != m || fac.U.cols() != m || A.rows() != m || A.cols() != m) {
    throw Error(ErrorCode::DuplicateDiagonal, "factorization and matrix sizes disagree");
  }
  double largest = 0.0;
  for (const Complex& z : fac.d) largest = std::max(largest, std::abs(z));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(fac.d[i] - fac.d[j]) < kCoincidenceThreshold * largest) {
        throw Error(ErrorCode::DuplicateDiagonal,
                    "d_" + std::to_string(i + 1) + " = d_" + std::to_string(j + 1) + "; run enforce_distinct first");
      }
    }
  }

  SpectralData sd;
  sd.d = fac.d;
  sd.u = Matrix(m, m);
  for (Index i = 0; i < m; ++i) {
    // uhat^i is the i-th column of U^T, i.e. the i-th row of U.
    const Complex first = fac.U(i, 0);
    if (!(std::abs(first) > 1e-14 * fac.U.row(i).norm())) {
      throw Error(ErrorCode::ZeroFirstComponent, "uhat^" + std::to_string(i + 1) + "_1 vanishes");
    }
    sd.uhat_first.push_back(first);
    sd.u.col(i) = fac.U.row(i).transpose() / first;
    sd.rho.push_back(sd.u.col(i).squaredNorm());
    sd.beta.push_back(std::conj(first) / first);
  }

  sd.H = Matrix(m, m);
  for (Index k = 0; k < m; ++k) {
    for (Index i = k; i < m; ++i) {
      Complex sum{};
      for (Index row = 0; row < m; ++row) sum += std::conj(sd.u(row, k)) * std::conj(sd.u(row, i));
      sd.H(k, i) = sum;
      sd.H(i, k) = sum;
    }
  }

  for (Index i = 0; i < m; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const Complex scale = variant.phase_corrected ? sd.d[ii] * sd.beta[ii] : sd.d[ii];
    Complex sum{};
    for (Index k = 0; k < m; ++k) {
      const double denominator = variant.denominator == OmegaVariant::Denominator::rho_k
                                     ? sd.rho[static_cast<std::size_t>(k)]
                                     : sd.rho[ii];
      sum += sd.H(k, i) / denominator;
    }
    sd.omega.push_back(scale * sum);
  }
  return sd;
}

DiscreteMeasure build_measure(const SpectralData& sd, Complex a0) {
  DiscreteMeasure m;
  for (std::size_t k = 0; k < sd.size(); ++k) {
    m.support.push_back(sd.omega[k]);
    m.weights.push_back(a0 / sd.rho[k]);
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (std::abs(m.support[i] - m.support[j]) < kSupportSeparation) {
        throw Error(ErrorCode::DuplicateSupport,
                    "omega_" + std::to_string(i + 1) + " and omega_" + std::to_string(j + 1) + " coincide");
      }
    }
  }
  return canonical(std::move(m));
}

ResponseVector spectral_response(const DiscreteMeasure& m, std::size_t length) {
  ResponseVector out{ComplexVector(length)};
  for (std::size_t k = 0; k < m.size(); ++k) {
    const Complex omega = m.support[k];
    Complex previous = 0.0, current = 1.0;  // T_0, T_1
    for (std::size_t t = 1; t <= length; ++t) {
      out.r[t - 1] += m.weights[k] * current;
      const Complex next = omega * current - previous;
      previous = current;
      current = next;
    }
  }
  return out;
}

Complex measure_moment(const DiscreteMeasure& m, std::size_t k) {
  ComplexVector terms;
  terms.reserve(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    Complex power = 1.0;
    for (std::size_t p = 0; p < k; ++p) power *= m.support[j];
    terms.push_back(m.weights[j] * power);
  }
  std::stable_sort(terms.begin(), terms.end(), [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  CompensatedSum re, im;
  for (const Complex& z : terms) {
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.value(), im.value()};
}

DiscreteMeasure eigen_oracle_measure(const Matrix& A, Complex a0) {
  Eigen::ComplexEigenSolver<Matrix> es(A, true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NonDiagonalizable, "eigensolver did not converge");
  const Vector& lambda = es.eigenvalues();
  const Index n = A.rows();
  double scale = 1.0;
  for (Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(lambda(i)));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(lambda(i) - lambda(j)) < 1e-10 * scale) {
        throw Error(ErrorCode::NonDiagonalizable, "repeated eigenvalue of a Jacobi matrix (Jordan block)");
      }
    }
  }
  DiscreteMeasure m;
  for (Index i = 0; i < n; ++i) {
    const Vector v = es.eigenvectors().col(i);
    const Complex q = (v.transpose() * v)(0, 0);
    if (!(std::abs(q) > 1e-10 * v.squaredNorm())) {
      throw Error(ErrorCode::NonDiagonalizable, "eigenvector with v^T v = 0");
    }
    m.support.push_back(lambda(i));
    m.weights.push_back(a0 * v(0) * v(0) / q);
  }
  return canonical(std::move(m));
}

}  // namespace momentbc
