#include "manakov/numeric.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace manakov {

RankResult numerical_rank(const Matrix& a, const RankPolicy& policy) {
  RankResult out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.threshold = policy.abs_floor;
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& sv = svd.singularValues();
  out.singulars.assign(sv.data(), sv.data() + sv.size());
  out.sigma_max = sv.size() ? sv(0) : 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const double max_dim = static_cast<double>(std::max(a.rows(), a.cols()));
  out.threshold = std::max(max_dim * eps * out.sigma_max * policy.tol_factor, policy.abs_floor);
  if (out.threshold == 0.0) {
    out.rank = 0;  // exactly zero matrix
    return out;
  }
  for (double s : out.singulars) {
    if (s > out.threshold) ++out.rank;
    if (s > out.threshold / policy.boundary_band && s < out.threshold * policy.boundary_band) {
      out.stable = false;
    }
  }
  return out;
}

Matrix nullspace(const Matrix& a, const RankPolicy& policy) {
  if (a.cols() == 0) return Matrix::Zero(0, 0);
  if (a.rows() == 0) return Matrix::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double eps = std::numeric_limits<double>::epsilon();
  const double max_dim = static_cast<double>(std::max(a.rows(), a.cols()));
  const double sigma_max = sv.size() ? sv(0) : 0.0;
  const double tau = std::max(max_dim * eps * sigma_max * policy.tol_factor, policy.abs_floor);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

Matrix orthonormal_span(const Matrix& a, const RankPolicy& policy) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix::Zero(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  const double eps = std::numeric_limits<double>::epsilon();
  const double max_dim = static_cast<double>(std::max(a.rows(), a.cols()));
  const double sigma_max = sv.size() ? sv(0) : 0.0;
  const double tau = std::max(max_dim * eps * sigma_max * policy.tol_factor, policy.abs_floor);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++rank;
  return svd.matrixU().leftCols(rank);
}

double containment_residual(const Matrix& u, const Matrix& w) {
  if (u.cols() == 0) return 0.0;
  if (w.cols() == 0) return 1.0;  // nonzero space cannot sit in the zero space
  const Matrix residual = u - w * (w.transpose() * u);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double subspace_distance(const Matrix& u, const Matrix& w) {
  return std::max(containment_residual(u, w), containment_residual(w, u));
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw shape_error("hcat: row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace manakov
