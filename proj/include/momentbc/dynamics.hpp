#pragma once

#include <cstddef>

#include "momentbc/jacobi.hpp"

namespace momentbc {

/// Boundary control f_0..f_{T-1}. Samples past the horizon are zero.
struct Control {
  ComplexVector samples;

  std::size_t horizon() const { return samples.size(); }
  Complex at(long t) const {
    return (t >= 0 && static_cast<std::size_t>(t) < samples.size()) ? samples[t] : Complex{};
  }

  /// delta = (1, 0, ..., 0) of length T.
  static Control impulse(std::size_t horizon);
};

/// Table of u_{n,t} for sites n = 0..sites()-1 and times t = -1..horizon().
/// Row n = 0 holds the control.
class WaveField {
 public:
  WaveField() = default;
  WaveField(std::size_t sites, std::size_t horizon);

  std::size_t sites() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t horizon() const { return static_cast<std::size_t>(values_.cols()) - 2; }

  Complex operator()(std::size_t n, long t) const { return values_(n, t + 1); }
  Complex& operator()(std::size_t n, long t) { return values_(n, t + 1); }

  const Matrix& raw() const { return values_; }

 private:
  Matrix values_;
};

/// Kernel w_{n,s}, 1 <= n <= s <= horizon-1, of the solution representation
///   u_{n,t} = P_n f_{t-n} + sum_{s=n}^{t-1} w_{n,s} f_{t-s-1},  P_n = a_0 a_1 ... a_{n-1}.
struct GoursatKernel {
  std::size_t horizon = 0;
  ComplexVector products;           // P_0..P_horizon
  std::vector<ComplexVector> rows;  // rows[n][s] = w_{n,s}; row 0 is identically zero

  /// w_{n,s}, zero outside the triangle.
  Complex w(std::size_t n, long s) const;
};

/// Convolution kernel r_0..r_{L-1} of the response operator.
struct ResponseVector {
  ComplexVector r;

  std::size_t size() const { return r.size(); }
};

enum class ResponseMethod { timestep, kernel };

/// Time-steps the system on sites 1..n with u_0 = f and a Dirichlet wall at n+1.
WaveField simulate_finite(const JacobiSpec& spec, const Control& f, std::size_t n, std::size_t horizon);

/// u^f on n <= T, t <= T for the semi-infinite chain. Exact: the wall at T+1 is outside
/// the light cone of the horizon. Requires spec.size() >= T.
WaveField simulate_semi_infinite(const JacobiSpec& spec, const Control& f, std::size_t horizon);

/// Solves the Goursat problem for w_{n,s} up to s = horizon - 1.
GoursatKernel goursat_kernel(const JacobiSpec& spec, std::size_t horizon);

/// Evaluates the kernel representation on sites 1..kernel.horizon.
WaveField solution_via_kernel(const JacobiSpec& spec, const GoursatKernel& kernel, const Control& f);

/// r_{t-1} = u^delta_{1,t}, t = 1..length, for the finite system A^N (N = spec.size()).
/// Agrees with the semi-infinite response for t - 1 <= 2N - 1.
ResponseVector response_vector(const JacobiSpec& spec, std::size_t length,
                               ResponseMethod method = ResponseMethod::timestep);

/// Full convolution c_t = sum_{s<=t} f_s g_{t-s}, length |f| + |g| - 1.
ComplexVector convolve(const ComplexVector& f, const ComplexVector& g);

/// (R^T f)_t = sum_{s=0}^{t-1} r_s f_{t-1-s}, t = 1..T.
ComplexVector apply_response(const ResponseVector& r, const Control& f);

/// Response of the system driven by conj(A), conj(a_0).
ResponseVector auxiliary_response(const JacobiSpec& spec, std::size_t length);

}  // namespace momentbc
