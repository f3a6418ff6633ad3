#include "momentbc/jacobi.hpp"

#include <string>

#include "momentbc/errors.hpp"

namespace momentbc {

void validate(const JacobiSpec& spec) {
  if (spec.b.empty()) throw Error(ErrorCode::LengthMismatch, "spec has no diagonal entries");
  if (spec.b.size() != spec.a.size() + 1) {
    throw Error(ErrorCode::LengthMismatch, "length(b) = " + std::to_string(spec.b.size()) +
                                               " but length(a) + 1 = " + std::to_string(spec.a.size() + 1));
  }
  if (!is_finite(spec.a0)) throw Error(ErrorCode::NonFiniteEntry, "a_0 is not finite");
  for (std::size_t k = 0; k < spec.a.size(); ++k) {
    if (!is_finite(spec.a[k])) throw Error(ErrorCode::NonFiniteEntry, "a_" + std::to_string(k + 1) + " is not finite");
  }
  for (std::size_t k = 0; k < spec.b.size(); ++k) {
    if (!is_finite(spec.b[k])) throw Error(ErrorCode::NonFiniteEntry, "b_" + std::to_string(k + 1) + " is not finite");
  }
  if (spec.a0 == Complex{}) throw Error(ErrorCode::ZeroCoefficient, "a_0 must be nonzero");
  for (std::size_t k = 0; k < spec.a.size(); ++k) {
    if (spec.a[k] == Complex{}) throw Error(ErrorCode::ZeroCoefficient, "a_" + std::to_string(k + 1) + " must be nonzero");
  }
}

FiniteJacobiMatrix truncate(const JacobiSpec& spec, std::size_t n) {
  validate(spec);
  if (n == 0 || n > spec.size()) {
    throw Error(ErrorCode::SizeExceedsSpec,
                "requested A^" + std::to_string(n) + " from a spec of size " + std::to_string(spec.size()));
  }
  const auto m = static_cast<Index>(n);
  FiniteJacobiMatrix out{Matrix::Zero(m, m)};
  for (Index i = 0; i < m; ++i) {
    out.entries(i, i) = spec.b[i];
    if (i + 1 < m) {
      out.entries(i, i + 1) = spec.a[i];
      out.entries(i + 1, i) = spec.a[i];
    }
  }
  return out;
}

JacobiSpec conjugate(const JacobiSpec& spec) {
  JacobiSpec out{std::conj(spec.a0), {}, {}};
  out.a.reserve(spec.a.size());
  out.b.reserve(spec.b.size());
  for (const Complex& z : spec.a) out.a.push_back(std::conj(z));
  for (const Complex& z : spec.b) out.b.push_back(std::conj(z));
  return out;
}

JacobiSpec leading(const JacobiSpec& spec, std::size_t n) {
  if (n == 0 || n > spec.size()) {
    throw Error(ErrorCode::SizeExceedsSpec,
                "cannot take " + std::to_string(n) + " sites from a spec of size " + std::to_string(spec.size()));
  }
  return JacobiSpec{spec.a0, ComplexVector(spec.a.begin(), spec.a.begin() + static_cast<long>(n - 1)),
                    ComplexVector(spec.b.begin(), spec.b.begin() + static_cast<long>(n))};
}

JacobiSpec random_spec(std::mt19937_64& rng, std::size_t n, bool unit_a0) {
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  auto draw = [&] { return Complex{unit(rng), unit(rng)}; };
  auto draw_coupling = [&] {
    Complex z = draw();
    while (std::abs(z) < 0.1) z = draw();
    return z;
  };

  JacobiSpec spec;
  spec.a0 = unit_a0 ? Complex{1.0, 0.0} : draw_coupling();
  for (std::size_t k = 0; k + 1 < n; ++k) spec.a.push_back(draw_coupling());
  for (std::size_t k = 0; k < n; ++k) spec.b.push_back(draw());
  return spec;
}

}  // namespace momentbc
