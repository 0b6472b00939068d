#pragma once

#include "manakov/liealg.hpp"

#include <map>
#include <optional>
#include <string>

namespace manakov {

enum class OperatorKind { Regular, Singular, RigidBody };

/// The inertia/sectional operator M -> Omega. Regular: entrywise
/// (b_i - b_j)/(a_i - a_j). Singular: ad_A^{-1} ad_B on the transversal
/// space plus an SPD interior operator on so(n)_A. RigidBody: A = B^2,
/// Omega_ij = M_ij / (b_i + b_j). Positive definiteness of the quadratic
/// form <M, A(M)> is validated eagerly at construction.
class SectionalOperator {
 public:
  static SectionalOperator regular(const Vector& a, const Vector& b);
  /// interior is the matrix of the operator on so(n)_A in the isotropy wedge
  /// basis; empty means identity.
  static SectionalOperator singular(const SpectralParams& params,
                                    const Matrix& interior = Matrix());
  static SectionalOperator rigid_body(const BlockPartition& partition, const Vector& betas);

  OperatorKind kind() const { return kind_; }
  const SpectralParams& params() const { return params_; }
  int n() const { return params_.partition().n(); }
  Vector a_diag() const;  // RigidBody derives a_i = b_i^2
  Vector b_diag() const;
  const Matrix& interior() const { return interior_; }

  Matrix apply(const Matrix& m) const;  // Omega = A(M)
  double hamiltonian(const Matrix& m) const;  // <M, A(M)> / 2
  /// Matrix of the quadratic form in the (isotropy ++ transversal) wedge
  /// basis; symmetric, and positive definite for every accepted operator.
  Matrix form_matrix() const;
  std::string describe() const;

 private:
  SectionalOperator(OperatorKind kind, SpectralParams params, Matrix interior);
  void validate_positive_definite() const;

  OperatorKind kind_;
  SpectralParams params_;
  Matrix interior_;  // isotropy wedge basis; identity when empty
};

Matrix manakov_omega(const Matrix& m, const Vector& a, const Vector& b);
Matrix singular_omega(const Matrix& m, const SectionalOperator& op);
Matrix rigid_body_omega(const Matrix& m, const Vector& b_diag);

/// || [M, B] - [Omega, A] ||_F, the defect of the Lax compatibility relation.
double check_manakov_condition(const Matrix& m, const Matrix& omega, const Vector& a,
                               const Vector& b);

enum class MetricKind { Normal, SubmersionAB, Stiefel };

struct MetricTable {
  std::map<std::pair<int, int>, double> pair_coefficients;  // (p, q) -> weight on v_{p,q}
  std::string isotropy_factor;
  Matrix isotropy_form;  // wedge-basis form on the isotropy part of the carrier
};

/// Invariant metric data on a homogeneous space. Normal and SubmersionAB
/// live on v; Stiefel lives on p = so(n - k) + v with H the first h_blocks
/// blocks and an SPD interior operator J on the remaining isotropy blocks.
class MetricSpec {
 public:
  static MetricSpec normal(const BlockPartition& partition);
  static MetricSpec submersion(const SpectralParams& params);
  static MetricSpec stiefel(const BlockPartition& partition, int h_blocks, double chi,
                            double kappa);
  static MetricSpec stiefel(const BlockPartition& partition, int h_blocks,
                            const Matrix& interior, double kappa);

  MetricKind kind() const { return kind_; }
  const BlockPartition& partition() const { return partition_; }
  int h_blocks() const { return h_blocks_; }
  double kappa() const { return kappa_; }
  const std::optional<SpectralParams>& params() const { return params_; }

  MetricTable coefficients() const;
  /// Cometric (inverse inertia) applied to a momentum; for Stiefel the
  /// momentum must lie in p = k + v.
  Matrix cometric_apply(const Matrix& m) const;
  double hamiltonian(const Matrix& m) const;  // <M, cometric(M)> / 2
  std::string describe() const;

 private:
  MetricSpec() = default;
  MetricKind kind_ = MetricKind::Normal;
  BlockPartition partition_{std::vector<int>{2}};
  std::optional<SpectralParams> params_;
  Matrix interior_;  // J on the k-blocks isotropy wedge basis (Stiefel)
  double kappa_ = 1.0;
  int h_blocks_ = 1;
};

}  // namespace manakov
