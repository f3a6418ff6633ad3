#include "momentbc/dynamics.hpp"

#include <string>

#include "momentbc/errors.hpp"

namespace momentbc {
namespace {

void require_valid(const JacobiSpec& spec) {
  try {
    validate(spec);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidSpec, e.what());
  }
}

}  // namespace

Control Control::impulse(std::size_t horizon) {
  Control f{ComplexVector(horizon)};
  if (horizon > 0) f.samples[0] = 1.0;
  return f;
}

WaveField::WaveField(std::size_t sites, std::size_t horizon)
    : values_(Matrix::Zero(static_cast<Index>(sites), static_cast<Index>(horizon) + 2)) {}

Complex GoursatKernel::w(std::size_t n, long s) const {
  if (n == 0 || n >= rows.size() || s < static_cast<long>(n) || s >= static_cast<long>(horizon)) return {};
  return rows[n][static_cast<std::size_t>(s)];
}

WaveField simulate_finite(const JacobiSpec& spec, const Control& f, std::size_t n, std::size_t horizon) {
  require_valid(spec);
  if (n == 0 || n > spec.size()) {
    throw Error(ErrorCode::SizeExceedsSpec,
                "finite system of size " + std::to_string(n) + " from a spec of size " + std::to_string(spec.size()));
  }
  WaveField v(n + 2, horizon);
  for (long t = 0; t <= static_cast<long>(horizon); ++t) v(0, t) = f.at(t);
  // v_{k,t+1} = a_k v_{k+1,t} + a_{k-1} v_{k-1,t} + b_k v_{k,t} - v_{k,t-1}; v_{n+1,t} = 0.
  for (long t = 0; t < static_cast<long>(horizon); ++t) {
    for (std::size_t k = 1; k <= n; ++k) {
      const Complex right = k < n ? spec.coupling(k) * v(k + 1, t) : Complex{};
      v(k, t + 1) = right + spec.coupling(k - 1) * v(k - 1, t) + spec.diagonal(k) * v(k, t) - v(k, t - 1);
    }
  }
  return v;
}

WaveField simulate_semi_infinite(const JacobiSpec& spec, const Control& f, std::size_t horizon) {
  if (spec.size() < horizon) {
    throw Error(ErrorCode::InsufficientCoefficients,
                "horizon " + std::to_string(horizon) + " needs b_1..b_" + std::to_string(horizon) +
                    ", spec has " + std::to_string(spec.size()));
  }
  return simulate_finite(spec, f, horizon, horizon);
}

GoursatKernel goursat_kernel(const JacobiSpec& spec, std::size_t horizon) {
  require_valid(spec);
  GoursatKernel kernel;
  kernel.horizon = horizon;
  kernel.products.assign(horizon + 1, Complex{});
  kernel.products[0] = 1.0;
  for (std::size_t n = 1; n <= horizon; ++n) kernel.products[n] = kernel.products[n - 1] * spec.coupling(n - 1);
  kernel.rows.assign(horizon + 1, ComplexVector(horizon));

  const auto& P = kernel.products;
  auto& w = kernel.rows;
  auto at = [&](std::size_t n, long s) { return kernel.w(n, s); };

  // Diagonal: w_{n,n} = b_n P_n + a_{n-1} w_{n-1,n-1}, w_{0,0} = 0.
  for (std::size_t s = 1; s < horizon; ++s) {
    w[s][s] = spec.diagonal(s) * P[s] + spec.coupling(s - 1) * at(s - 1, static_cast<long>(s) - 1);
  }
  // Interior, marching in s:
  // w_{n,s+1} = a_n w_{n+1,s} + a_{n-1} w_{n-1,s} + b_n w_{n,s} - w_{n,s-1} - delta_{sn} (1 - a_n^2) P_n.
  for (std::size_t s = 1; s + 1 < horizon; ++s) {
    const long sl = static_cast<long>(s);
    for (std::size_t n = 1; n <= s; ++n) {
      const Complex an = spec.coupling(n);
      Complex value = an * at(n + 1, sl) + spec.coupling(n - 1) * at(n - 1, sl) + spec.diagonal(n) * at(n, sl) -
                      at(n, sl - 1);
      if (n == s) value -= (1.0 - an * an) * P[n];
      w[n][s + 1] = value;
    }
  }
  return kernel;
}

WaveField solution_via_kernel(const JacobiSpec& spec, const GoursatKernel& kernel, const Control& f) {
  require_valid(spec);
  if (kernel.horizon < f.horizon()) {
    throw Error(ErrorCode::HorizonMismatch, "kernel horizon " + std::to_string(kernel.horizon) +
                                                " is shorter than control horizon " + std::to_string(f.horizon()));
  }
  const std::size_t horizon = kernel.horizon;
  WaveField u(horizon + 2, horizon);
  for (long t = 0; t <= static_cast<long>(horizon); ++t) u(0, t) = f.at(t);
  for (std::size_t n = 1; n <= horizon; ++n) {
    const long nl = static_cast<long>(n);
    for (long t = 1; t <= static_cast<long>(horizon); ++t) {
      Complex value = kernel.products[n] * f.at(t - nl);
      for (long s = nl; s <= t - 1; ++s) value += kernel.w(n, s) * f.at(t - s - 1);
      u(n, t) = value;
    }
  }
  return u;
}

ResponseVector response_vector(const JacobiSpec& spec, std::size_t length, ResponseMethod method) {
  ResponseVector out{ComplexVector(length)};
  if (length == 0) return out;
  if (method == ResponseMethod::timestep) {
    const WaveField field = simulate_finite(spec, Control::impulse(1), spec.size(), length);
    for (std::size_t t = 1; t <= length; ++t) out.r[t - 1] = field(1, static_cast<long>(t));
  } else {
    const GoursatKernel kernel = goursat_kernel(spec, length);
    out.r[0] = kernel.products[1];
    for (std::size_t s = 1; s < length; ++s) out.r[s] = kernel.w(1, static_cast<long>(s));
  }
  return out;
}

ComplexVector convolve(const ComplexVector& f, const ComplexVector& g) {
  if (f.empty() || g.empty()) return {};
  ComplexVector c(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) c[i + j] += f[i] * g[j];
  }
  return c;
}

ComplexVector apply_response(const ResponseVector& r, const Control& f) {
  const std::size_t horizon = f.horizon();
  if (r.size() < horizon) {
    throw Error(ErrorCode::HorizonMismatch, "response vector of length " + std::to_string(r.size()) +
                                                " cannot act on a control of horizon " + std::to_string(horizon));
  }
  ComplexVector out(horizon);
  for (std::size_t t = 1; t <= horizon; ++t) {
    Complex value{};
    for (std::size_t s = 0; s < t; ++s) value += r.r[s] * f.samples[t - 1 - s];
    out[t - 1] = value;
  }
  return out;
}

ResponseVector auxiliary_response(const JacobiSpec& spec, std::size_t length) {
  return response_vector(conjugate(spec), length, ResponseMethod::timestep);
}

}  // namespace momentbc
