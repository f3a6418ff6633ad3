#pragma once

#include "momentbc/types.hpp"

namespace momentbc {

/// Singular values, descending.
Eigen::VectorXd singular_values(const Matrix& m);

/// sigma_min / sigma_max; 0 for a zero or empty matrix.
double sigma_ratio(const Matrix& m);

double max_abs(const Matrix& m);

}  // namespace momentbc
