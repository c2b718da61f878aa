#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "simest/core/error.hpp"
#include "simest/solver/solver.hpp"

namespace simest {

Matrix jacobian_fd(const VectorMap& f, const ParamVector& theta, const SolverConfig& cfg) {
  const Vector x = theta.values();
  const Vector& lo = theta.space().lower();
  const Vector& hi = theta.space().upper();
  const Index K = x.size();
  Matrix jac;
  for (Index j = 0; j < K; ++j) {
    const double h = cfg.fd_step_rel * std::max(1.0, std::abs(x[j]));
    Vector a = x, b = x;
    Vector col;
    if (x[j] - h >= lo[j] && x[j] + h <= hi[j]) {
      a[j] = x[j] + h;
      b[j] = x[j] - h;
      col = (f(a) - f(b)) / (2.0 * h);
    } else {
      const double dir = (x[j] - h < lo[j]) ? 1.0 : -1.0;
      a[j] = x[j] + dir * h;
      b[j] = x[j] + dir * 2.0 * h;
      col = dir * (-3.0 * f(x) + 4.0 * f(a) - f(b)) / (2.0 * h);
    }
    if (j == 0) jac.resize(col.size(), K);
    if (col.size() != jac.rows()) throw Error(ErrorCode::ShapeMismatch, "map output size changed");
    if (!col.allFinite()) throw Error(ErrorCode::NonFiniteEntry, "finite-difference Jacobian is not finite");
    jac.col(j) = col;
  }
  return jac;
}

SignedLogDet signed_logdet(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  if (m.size() == 0) return {0.0, 1};
  const Eigen::PartialPivLU<Matrix> lu(m);
  const Matrix& packed = lu.matrixLU();
  double log_abs = 0.0;
  int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
  for (Index i = 0; i < packed.rows(); ++i) {
    const double d = packed(i, i);
    if (d == 0.0 || !std::isfinite(d)) return {-std::numeric_limits<double>::infinity(), 0};
    if (d < 0.0) sign = -sign;
    log_abs += std::log(std::abs(d));
  }
  return {log_abs, sign};
}

double logabsdet(const Matrix& m) { return signed_logdet(m).log_abs; }

}  // namespace simest
