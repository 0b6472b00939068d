#include "manakov/sectional.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace manakov {

namespace {

constexpr double kPdThreshold = 1e-10;

void check_dim(const Matrix& m, int n, const char* who) {
  if (m.rows() != n || m.cols() != n) {
    throw shape_error(std::string(who) + ": expected " + std::to_string(n) + "x" +
                      std::to_string(n) + " matrix");
  }
}

}  // namespace

Matrix manakov_omega(const Matrix& m, const Vector& a, const Vector& b) {
  const int n = static_cast<int>(a.size());
  check_dim(m, n, "manakov_omega");
  if (b.size() != n) throw shape_error("manakov_omega: a and b sizes differ");
  Matrix omega = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double da = a(i) - a(j);
      if (da == 0.0) {
        throw singular_denominator_error("manakov_omega: a_" + std::to_string(i + 1) +
                                         " == a_" + std::to_string(j + 1));
      }
      omega(i, j) = (b(i) - b(j)) / da * m(i, j);
    }
  return omega;
}

Matrix rigid_body_omega(const Matrix& m, const Vector& b_diag) {
  const int n = static_cast<int>(b_diag.size());
  check_dim(m, n, "rigid_body_omega");
  Matrix omega = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double s = b_diag(i) + b_diag(j);
      if (s == 0.0) {
        throw singular_denominator_error("rigid_body_omega: b_" + std::to_string(i + 1) +
                                         " + b_" + std::to_string(j + 1) + " == 0");
      }
      omega(i, j) = m(i, j) / s;
    }
  return omega;
}

Matrix singular_omega(const Matrix& m, const SectionalOperator& op) {
  if (op.kind() != OperatorKind::Singular) {
    throw validation_error("singular_omega: operator kind must be singular");
  }
  return op.apply(m);
}

double check_manakov_condition(const Matrix& m, const Matrix& omega, const Vector& a,
                               const Vector& b) {
  const Matrix am = a.asDiagonal();
  const Matrix bm = b.asDiagonal();
  return (commutator(m, bm) - commutator(omega, am)).norm();
}

SectionalOperator::SectionalOperator(OperatorKind kind, SpectralParams params, Matrix interior)
    : kind_(kind), params_(std::move(params)), interior_(std::move(interior)) {
  const int iso_dim = params_.partition().isotropy_dim();
  if (interior_.size() == 0) {
    interior_ = Matrix::Identity(iso_dim, iso_dim);
  }
  if (interior_.rows() != iso_dim || interior_.cols() != iso_dim) {
    throw shape_error("SectionalOperator: interior operator must be " + std::to_string(iso_dim) +
                      "x" + std::to_string(iso_dim) + " in the isotropy wedge basis");
  }
  if ((interior_ - interior_.transpose()).norm() > 1e-12 * std::max(1.0, interior_.norm())) {
    throw validation_error("SectionalOperator: interior operator must be symmetric");
  }
  validate_positive_definite();
}

SectionalOperator SectionalOperator::regular(const Vector& a, const Vector& b) {
  return SectionalOperator(OperatorKind::Regular, SpectralParams::regular(a, b), Matrix());
}

SectionalOperator SectionalOperator::singular(const SpectralParams& params,
                                              const Matrix& interior) {
  return SectionalOperator(OperatorKind::Singular, params, interior);
}

SectionalOperator SectionalOperator::rigid_body(const BlockPartition& partition,
                                                const Vector& betas) {
  for (int i = 0; i < betas.size(); ++i) {
    if (betas(i) <= 0.0) {
      throw positivity_error("rigid_body: beta_" + std::to_string(i + 1) + " must be positive");
    }
  }
  Vector alphas = betas.array().square();
  return SectionalOperator(OperatorKind::RigidBody, SpectralParams(partition, alphas, betas),
                           Matrix());
}

Vector SectionalOperator::a_diag() const { return params_.expand_a(); }

Vector SectionalOperator::b_diag() const { return params_.expand_b(); }

Matrix SectionalOperator::apply(const Matrix& m) const {
  const int nn = n();
  check_dim(m, nn, "SectionalOperator::apply");
  switch (kind_) {
    case OperatorKind::Regular:
      return manakov_omega(m, a_diag(), b_diag());
    case OperatorKind::RigidBody:
      return rigid_body_omega(m, b_diag());
    case OperatorKind::Singular: {
      const auto& partition = params_.partition();
      const BlockSplit split = project_split(m, partition);
      // ad_A^{-1} ad_B acts entrywise on the transversal part.
      const Vector a = a_diag(), b = b_diag();
      Matrix omega = Matrix::Zero(nn, nn);
      for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
          if (i == j || partition.same_block(i, j)) continue;
          omega(i, j) = (b(i) - b(j)) / (a(i) - a(j)) * split.trans(i, j);
        }
      const WedgeBasis iso = WedgeBasis::isotropy(partition);
      if (iso.size() > 0) {
        omega += iso.matrix(interior_ * iso.coords(split.iso));
      }
      return omega;
    }
  }
  throw numerical_error("SectionalOperator::apply: bad kind");
}

double SectionalOperator::hamiltonian(const Matrix& m) const {
  return 0.5 * scalar_product(m, apply(m));
}

Matrix SectionalOperator::form_matrix() const {
  const auto& partition = params_.partition();
  const WedgeBasis iso = WedgeBasis::isotropy(partition);
  const WedgeBasis trans = WedgeBasis::transversal(partition);
  const int total = iso.size() + trans.size();
  Matrix form = Matrix::Zero(total, total);
  const Vector a = a_diag(), b = b_diag();
  switch (kind_) {
    case OperatorKind::Regular: {
      // Partition is (1,...,1): no isotropy pairs, diagonal on the rest.
      int p = iso.size();
      for (const auto& pair : trans.pairs()) {
        form(p, p) = (b(pair.i) - b(pair.j)) / (a(pair.i) - a(pair.j));
        ++p;
      }
      break;
    }
    case OperatorKind::RigidBody: {
      int p = 0;
      for (const auto& pair : iso.pairs()) {
        form(p, p) = 1.0 / (b(pair.i) + b(pair.j));
        ++p;
      }
      for (const auto& pair : trans.pairs()) {
        form(p, p) = 1.0 / (b(pair.i) + b(pair.j));
        ++p;
      }
      break;
    }
    case OperatorKind::Singular: {
      form.topLeftCorner(iso.size(), iso.size()) = interior_;
      int p = iso.size();
      for (const auto& pair : trans.pairs()) {
        form(p, p) = (b(pair.i) - b(pair.j)) / (a(pair.i) - a(pair.j));
        ++p;
      }
      break;
    }
  }
  return form;
}

void SectionalOperator::validate_positive_definite() const {
  if (kind_ == OperatorKind::Regular) {
    const Vector a = a_diag();
    for (int i = 0; i < a.size(); ++i)
      for (int j = i + 1; j < a.size(); ++j)
        if (a(i) == a(j)) {
          throw singular_denominator_error("regular operator: a_" + std::to_string(i + 1) +
                                           " == a_" + std::to_string(j + 1));
        }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(form_matrix());
  if (eig.info() != Eigen::Success) {
    throw numerical_error("SectionalOperator: eigenvalue check failed");
  }
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig <= kPdThreshold) {
    throw positivity_error("SectionalOperator: quadratic form not positive definite (min "
                           "eigenvalue " +
                           std::to_string(min_eig) + ")");
  }
}

std::string SectionalOperator::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case OperatorKind::Regular:
      os << "regular";
      break;
    case OperatorKind::Singular:
      os << "singular";
      break;
    case OperatorKind::RigidBody:
      os << "rigid-body";
      break;
  }
  os << " " << params_.partition().to_string();
  return os.str();
}

MetricSpec MetricSpec::normal(const BlockPartition& partition) {
  MetricSpec spec;
  spec.kind_ = MetricKind::Normal;
  spec.partition_ = partition;
  return spec;
}

MetricSpec MetricSpec::submersion(const SpectralParams& params) {
  MetricSpec spec;
  spec.kind_ = MetricKind::SubmersionAB;
  spec.partition_ = params.partition();
  spec.params_ = params;
  const auto& alphas = params.alphas();
  const auto& betas = params.betas();
  for (int p = 0; p < alphas.size(); ++p)
    for (int q = p + 1; q < alphas.size(); ++q) {
      const double coeff = (alphas(p) - alphas(q)) / (betas(p) - betas(q));
      if (coeff <= 0.0) {
        throw positivity_error("submersion metric: coefficient on v_{" + std::to_string(p + 1) +
                               "," + std::to_string(q + 1) + "} is " + std::to_string(coeff));
      }
    }
  return spec;
}

MetricSpec MetricSpec::stiefel(const BlockPartition& partition, int h_blocks, double chi,
                               double kappa) {
  int dim = 0;
  const auto& parts = partition.parts();
  for (int b = h_blocks; b < partition.blocks(); ++b) dim += parts[b] * (parts[b] - 1) / 2;
  return stiefel(partition, h_blocks, chi * Matrix::Identity(dim, dim), kappa);
}

MetricSpec MetricSpec::stiefel(const BlockPartition& partition, int h_blocks,
                               const Matrix& interior, double kappa) {
  if (h_blocks < 1 || h_blocks > partition.blocks()) {
    throw validation_error("stiefel metric: h_blocks outside [1, r]");
  }
  if (kappa <= 0.0) throw positivity_error("stiefel metric: kappa must be positive");
  MetricSpec spec;
  spec.kind_ = MetricKind::Stiefel;
  spec.partition_ = partition;
  spec.h_blocks_ = h_blocks;
  spec.kappa_ = kappa;
  spec.interior_ = interior;
  int dim = 0;
  const auto& parts = partition.parts();
  for (int b = h_blocks; b < partition.blocks(); ++b) dim += parts[b] * (parts[b] - 1) / 2;
  if (interior.rows() != dim || interior.cols() != dim) {
    throw shape_error("stiefel metric: interior operator must be " + std::to_string(dim) + "x" +
                      std::to_string(dim));
  }
  if (dim > 0) {
    if ((interior - interior.transpose()).norm() > 1e-12 * std::max(1.0, interior.norm())) {
      throw validation_error("stiefel metric: interior operator must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(interior);
    if (eig.eigenvalues().minCoeff() <= kPdThreshold) {
      throw positivity_error("stiefel metric: interior operator not positive definite");
    }
  }
  return spec;
}

MetricTable MetricSpec::coefficients() const {
  MetricTable table;
  const int r = partition_.blocks();
  switch (kind_) {
    case MetricKind::Normal:
      for (int p = 0; p < r; ++p)
        for (int q = p + 1; q < r; ++q) table.pair_coefficients[{p, q}] = 1.0;
      table.isotropy_factor = "none (normal metric on v)";
      break;
    case MetricKind::SubmersionAB: {
      const auto& alphas = params_->alphas();
      const auto& betas = params_->betas();
      for (int p = 0; p < r; ++p)
        for (int q = p + 1; q < r; ++q) {
          table.pair_coefficients[{p, q}] =
              (alphas(p) - alphas(q)) / (betas(p) - betas(q));
        }
      table.isotropy_factor = "none (metric on v)";
      break;
    }
    case MetricKind::Stiefel: {
      for (int p = 0; p < r; ++p)
        for (int q = p + 1; q < r; ++q) table.pair_coefficients[{p, q}] = kappa_;
      table.isotropy_factor = "interior operator on the K-blocks";
      table.isotropy_form = interior_;
      break;
    }
  }
  return table;
}

Matrix MetricSpec::cometric_apply(const Matrix& m) const {
  const int n = partition_.n();
  check_dim(m, n, "MetricSpec::cometric_apply");
  switch (kind_) {
    case MetricKind::Normal:
      return m;
    case MetricKind::SubmersionAB: {
      // Inverse of the (alpha_p - alpha_q)/(beta_p - beta_q) table; the same
      // map as the singular sectional operator with identity interior.
      const Vector a = params_->expand_a(), b = params_->expand_b();
      Matrix omega = m;  // isotropy part passes through
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j || partition_.same_block(i, j)) continue;
          omega(i, j) = (b(i) - b(j)) / (a(i) - a(j)) * m(i, j);
        }
      return omega;
    }
    case MetricKind::Stiefel: {
      // J^{-1} on the K-isotropy blocks, kappa^{-1} on v. The H part is not
      // part of the carrier; momenta are expected in p (H component zero).
      std::vector<WedgePair> k_pairs;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (partition_.same_block(i, j) && partition_.block_of(i) >= h_blocks_) {
            k_pairs.push_back({i, j});
          }
        }
      Matrix omega = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j || partition_.same_block(i, j)) continue;
          omega(i, j) = m(i, j) / kappa_;
        }
      if (!k_pairs.empty()) {
        Vector coords(static_cast<int>(k_pairs.size()));
        for (size_t p = 0; p < k_pairs.size(); ++p) {
          coords(static_cast<int>(p)) = m(k_pairs[p].i, k_pairs[p].j);
        }
        Vector mapped = interior_.ldlt().solve(coords);
        for (size_t p = 0; p < k_pairs.size(); ++p) {
          omega(k_pairs[p].i, k_pairs[p].j) = mapped(static_cast<int>(p));
          omega(k_pairs[p].j, k_pairs[p].i) = -mapped(static_cast<int>(p));
        }
      }
      return omega;
    }
  }
  throw numerical_error("MetricSpec::cometric_apply: bad kind");
}

double MetricSpec::hamiltonian(const Matrix& m) const {
  return 0.5 * scalar_product(m, cometric_apply(m));
}

std::string MetricSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case MetricKind::Normal:
      os << "normal";
      break;
    case MetricKind::SubmersionAB:
      os << "submersion-ab";
      break;
    case MetricKind::Stiefel:
      os << "stiefel(kappa=" << kappa_ << ")";
      break;
  }
  os << " " << partition_.to_string();
  return os.str();
}

}  // namespace manakov
