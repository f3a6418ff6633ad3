#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace momentbc {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace momentbc
