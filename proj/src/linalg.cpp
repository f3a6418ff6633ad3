#include "momentbc/linalg.hpp"

namespace momentbc {

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return Eigen::VectorXd{};
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

double sigma_ratio(const Matrix& m) {
  const Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace momentbc
