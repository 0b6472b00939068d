#pragma once

#include "manakov/liealg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace manakov {

/// Where a family lives. SoN: all of so(n). Transversal: v for a partition.
/// Momentum: p = k + v for a block split. GL: gl(n) = so(n) + Sym(n).
enum class Carrier { SoN, Transversal, Momentum, GL };

class CarrierSpace {
 public:
  static CarrierSpace so_n(int n);
  static CarrierSpace transversal(const BlockPartition& partition);
  static CarrierSpace momentum(const BlockPartition& partition, int h_blocks);
  static CarrierSpace gl(int n);

  Carrier carrier() const { return carrier_; }
  int n() const { return n_; }
  const BlockPartition& partition() const { return partition_; }
  int h_blocks() const { return h_blocks_; }
  const WedgeBasis& skew_basis() const { return skew_basis_; }
  bool includes_sym() const { return carrier_ == Carrier::GL; }
  int dim() const;

  /// Projects an ambient gradient onto the carrier (restriction gradient).
  Matrix project(const Matrix& g) const;
  /// Coordinates: wedge coordinates of the skew part, then (GL only) the
  /// Frobenius-orthonormal Sym coordinates.
  Vector coords(const Matrix& g) const;
  Matrix sample(uint64_t seed) const;

 private:
  CarrierSpace(Carrier carrier, BlockPartition partition, int h_blocks, WedgeBasis basis)
      : carrier_(carrier),
        n_(partition.n()),
        partition_(std::move(partition)),
        h_blocks_(h_blocks),
        skew_basis_(std::move(basis)) {}

  Carrier carrier_;
  int n_;
  BlockPartition partition_;
  int h_blocks_;
  WedgeBasis skew_basis_;
};

/// A scalar polynomial function on a carrier with an analytic gradient with
/// respect to the scalar product; gradients of restricted families are the
/// orthogonal projections of the ambient gradients onto the carrier.
class Integral {
 public:
  virtual ~Integral() = default;
  virtual std::string tag() const = 0;
  virtual double value(const Matrix& m) const = 0;
  virtual Matrix gradient(const Matrix& m) const = 0;
};

class IntegralFamily {
 public:
  /// Lax-pair coefficients p_{k,s} of tr(M + lambda A)^k, k = 2..n,
  /// s = 0..k-2, extracted at integer nodes by a Vandermonde solve.
  static IntegralFamily manakov(const CarrierSpace& space, const Vector& a_diag);
  /// Linear forms on so(n)_A.
  static IntegralFamily noether(const BlockPartition& partition);
  /// Linear forms on the K-blocks isotropy, carried on p.
  static IntegralFamily k_linear(const BlockPartition& partition, int h_blocks);
  /// Per-factor Manakov coefficients on each so(k_b), b >= h_blocks, with
  /// regular diagonal parameters 1..k_b inside the block; carried on p.
  static IntegralFamily factor_manakov(const BlockPartition& partition, int h_blocks);
  /// tr(M (lambda I + A)^{-1})^{2k}, k = 1..n/2, at the given lambda samples.
  static IntegralFamily bolsinov(const CarrierSpace& space, const Vector& a_diag,
                                 const std::vector<double>& lambdas);
  /// Central functions tr(M^{2k}) of the Lie-Poisson bracket.
  static IntegralFamily casimirs(int n);
  /// Pencil central functions tr(lambda M + P + lambda^2 A)^k on gl(n).
  static IntegralFamily pencil_casimirs(int n, const Vector& a_diag,
                                        const std::vector<double>& lambdas);

  static IntegralFamily unite(IntegralFamily a, IntegralFamily b);

  const CarrierSpace& space() const { return space_; }
  int size() const { return static_cast<int>(members_.size()); }
  const Integral& member(int i) const { return *members_[i]; }

  /// Rows = member gradients in carrier coordinates.
  Matrix gradient_matrix(const Matrix& m) const;

 private:
  explicit IntegralFamily(CarrierSpace space) : space_(std::move(space)) {}
  CarrierSpace space_;
  std::vector<std::shared_ptr<const Integral>> members_;
};

/// Default lambda sample set for the Bolsinov family: count values avoiding
/// the poles -alpha_i (and their negatives) by 0.1x the minimal alpha gap.
std::vector<double> default_j_lambdas(const Vector& alphas, int count, uint64_t seed);

/// tr(M (lambda I + A)^{-1})^{2k}; throws pole_error when lambda hits -a_i.
double j_family_eval(const Matrix& m, const Vector& a_diag, int k, double lambda);

/// Exact-degree coefficient table of tr(M + lambda A)^k: entry {k, s} for
/// k = 2..n, s = 0..k-2 (higher s vanish identically on skew matrices).
std::map<std::pair<int, int>, double> eval_manakov_coeffs(const Matrix& m, const Vector& a_diag);

struct BracketKind {
  enum class Type { LiePoisson, FrozenA, PencilGL, Reduced };
  Type type = Type::LiePoisson;
  Vector frozen_a;                 // FrozenA
  double lambda1 = 1.0, lambda2 = 0.0;  // PencilGL
  Matrix reduced_basis;  // Reduced: orthonormal columns, full wedge coords
  Vector pencil_a;       // PencilGL shift A

  static BracketKind lie_poisson();
  static BracketKind frozen(const Vector& a_diag);
  static BracketKind pencil_gl(double l1, double l2, const Vector& a_diag);
  static BracketKind reduced(const Matrix& j_basis_cols);
};

double poisson_bracket(const Integral& f, const Integral& g, const Matrix& m,
                       const BracketKind& kind);
/// Same bivector evaluation on precomputed gradients.
double gradient_bracket(const Matrix& gf, const Matrix& gg, const Matrix& m,
                        const BracketKind& kind);
/// |{f, g}| / (||grad f||_F ||grad g||_F ||M||_F + eps); the repo-wide
/// normalized residual convention.
double normalized_bracket(const Integral& f, const Integral& g, const Matrix& m,
                          const BracketKind& kind);
Matrix involution_matrix(const IntegralFamily& family, const Matrix& m, const BracketKind& kind);
double max_normalized_pairwise(const IntegralFamily& family, const Matrix& m,
                               const BracketKind& kind);
double max_normalized_cross(const IntegralFamily& fa, const IntegralFamily& fb, const Matrix& m,
                            const BracketKind& kind);

struct CrossCommutationResult {
  double max_normalized = 0.0;
  bool pass = false;
};
/// Max normalized bracket between the Manakov and Bolsinov families built
/// from the same spectral data, at the point m.
CrossCommutationResult cross_commutation_check(const Matrix& m, const SpectralParams& params,
                                               double tol);

double casimir_gl_eval(const Matrix& x, const Vector& a_diag, double lambda, int k);
/// | f_{lambda,k}(M) - lambda^k tr(M + lambda A)^k | with P = 0.
double restriction_check(const Matrix& m, const Vector& a_diag, double lambda, int k);
/// | det(M (A + alpha I)^{-1} + beta I) - det(M + beta A + alpha beta I)
///   / det(alpha I + A) |.
double det_identity_check(const Matrix& m, const Vector& a_diag, double alpha, double beta);

/// Residual together with the natural magnitude of the two sides, for
/// scale-relative pass thresholds.
struct IdentityResidual {
  double residual = 0.0;
  double scale = 1.0;
};
IdentityResidual restriction_identity(const Matrix& m, const Vector& a_diag, double lambda, int k);
IdentityResidual det_identity(const Matrix& m, const Vector& a_diag, double alpha, double beta);

/// Lie bracket of constant (linear-form) generators under the bracket kind,
/// with the affine constant split out: {<.,u>, <.,v>}(X) = -<X, elem> + c.
struct GeneratorBracket {
  Matrix elem;
  double constant = 0.0;
};
GeneratorBracket generator_bracket(const Matrix& u, const Matrix& v, const BracketKind& kind);
/// Jacobi residual of the bivector on three linear forms at the point.
double jacobi_residual(const Matrix& x, const Matrix& u, const Matrix& v, const Matrix& w,
                       const BracketKind& kind);

}  // namespace manakov
