#pragma once

#include "manakov/invariants.hpp"
#include "manakov/numeric.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace manakov {

struct Tolerances {
  RankPolicy rank;
  double bracket_rank_floor = 1e-7;  // abs floor for normalized bracket matrices
  double involutivity_tol = 1e-9;
  double subspace_tol = 1e-8;
  int max_resamples = 3;
  double non_generic_quota = 0.95;  // fraction of points that must pass
};

struct FamilySpanReport {
  uint64_t seed = 0;
  int ddim = 0;
  int dind = 0;
  RankResult gradient_rank;
  RankResult bracket_rank;
  bool stable = true;
};

/// ddim = numerical rank of the stacked gradient matrix (rows normalized);
/// dind = corank of the pairwise bracket matrix restricted to a
/// rank-revealing member subset chosen by column-pivoted QR.
FamilySpanReport ddim_dind(const IntegralFamily& family, const Matrix& m,
                           const BracketKind& kind, const Tolerances& tol = {});

/// Whether the skew-orthogonal complement of the gradient span sits inside
/// span + ker of the Lie-Poisson structure at m (largest principal-angle
/// sine at most tol.subspace_tol).
bool coisotropy_check(const IntegralFamily& family, const Matrix& m, const Tolerances& tol = {});

/// dim of the adjoint orbit through x: rank of Y -> [x, Y] on so(n).
int orbit_dimension(const Matrix& x, const Tolerances& tol = {});

/// Orthonormal basis (columns, full wedge coordinates) of the centralizer
/// of m in so(n).
Matrix centralizer_basis(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal basis of j_M = {eta in v | [M, eta] in v} in full wedge
/// coordinates; h_blocks generalizes the isotropy to the first h blocks
/// (h_blocks = r gives the standard j_M inside v).
Matrix j_space(const Matrix& m, const BlockPartition& partition);
Matrix j_space_split(const Matrix& m, const BlockPartition& partition, int h_blocks);

/// Anti-diagonal regular element m_1 E_1^E_n + m_2 E_2^E_{n-1} + ...
Matrix anti_diagonal_form(int n, const std::vector<double>& coeffs);

/// Nullity of the kernel system over so(n)_M x Sym(n):
/// [M, xi_2] + [A, xi_1] = 0 and proj_{so(n)_M} [A, xi_2] = 0.
struct NullityReport {
  int nullity = 0;
  bool stable = true;
  int centralizer_dim = 0;
};
NullityReport lemma1_nullity(const Matrix& m, const Vector& a_diag, const Tolerances& tol = {});

struct PointOutcome {
  uint64_t seed = 0;
  bool pass = false;
  bool generic = true;  // false when rank decisions stayed unstable
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::pair<std::string, double>> targets;
};

struct CompletenessVerdict {
  std::string target;
  int n = 0;
  std::string partition;
  bool pass = false;
  int points_used = 0;
  int points_passed = 0;
  int points_non_generic = 0;
  std::vector<PointOutcome> per_point;

  nlohmann::json to_json() const;
};

/// The theorem1 target: ddim + dind of the Manakov + Noether family equals
/// dim so(n) + rank so(n), and the gradient span is coisotropic.
CompletenessVerdict verify_theorem1(const BlockPartition& partition,
                                    const std::vector<uint64_t>& seeds,
                                    const Tolerances& tol = {});

/// The theorem3 target: ddim of the restricted Manakov family on v equals
/// dim v - dim O(M)/2, the reduced brackets vanish, and the reduced
/// skew-orthogonal complement equals the span.
CompletenessVerdict verify_theorem3(const BlockPartition& partition,
                                    const std::vector<uint64_t>& seeds,
                                    const Tolerances& tol = {});

struct ReductionResult {
  bool applicable = false;
  int l = 0;
  int n_prime = 0;
  std::optional<BlockPartition> reduced_partition;
  Matrix k;        // block-diagonal rotation in SO(n)_A
  Matrix m_prime;  // K M K^{-1}
  double zero_residual = 0.0;
};
ReductionResult normal_form_reduce(const Matrix& m, const BlockPartition& partition);

/// Equality of j_{M'} computed inside (n, partition) and inside the reduced
/// data, both embedded in so(n); not applicable when k_r is small enough
/// that no reduction happens.
struct ReductionEqualityResult {
  bool applicable = false;
  bool equal = false;
  double distance = 0.0;
};
ReductionEqualityResult verify_reduction_equality(const Matrix& m_prime,
                                                  const BlockPartition& partition,
                                                  const Tolerances& tol = {});

/// The theorem4 target on p = k + v for H = first l_split blocks: the
/// Manakov family plus the K-linear forms is complete (count + coisotropy
/// inside the invariant-gradient space), and the commutative variant with
/// per-factor families passes the halved count involutively.
CompletenessVerdict verify_theorem4(const BlockPartition& partition, int l_split,
                                    const std::vector<uint64_t>& seeds,
                                    const Tolerances& tol = {});

/// The lemma1 target: nullity n of the kernel system at the anti-diagonal
/// normal forms plus random generic points.
CompletenessVerdict verify_lemma1(int n, const std::vector<uint64_t>& seeds,
                                  const Tolerances& tol = {});

/// All partitions of n, each sorted ascending.
std::vector<std::vector<int>> partitions_of(int n);

/// Unit-scale pairwise-distinct block parameters used wherever a config does
/// not pin alphas/betas explicitly.
SpectralParams default_spectral_params(const BlockPartition& partition);

}  // namespace manakov
