#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace manakov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr int kMinDim = 2;
constexpr int kMaxDim = 16;

// Error taxonomy. Everything user-facing derives from validation_error so the
// CLI can map it to a single exit code.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct shape_error : validation_error {
  using validation_error::validation_error;
};
struct singular_denominator_error : validation_error {
  using validation_error::validation_error;
};
struct pole_error : validation_error {
  using validation_error::validation_error;
};
struct positivity_error : validation_error {
  using validation_error::validation_error;
};
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct rank_indeterminate_error : numerical_error {
  using numerical_error::numerical_error;
};

/// Exactly skew part (X - X^T)/2; entries satisfy s_ij == -s_ji bit-exactly.
Matrix skew_part(const Matrix& x);
/// Complement x - skew_part(x), so skew_part + sym_part reproduces x exactly.
Matrix sym_part(const Matrix& x);

double scalar_product(const Matrix& x, const Matrix& y);  // -tr(XY)/2
Matrix commutator(const Matrix& x, const Matrix& y);      // XY - YX
double frob(const Matrix& x);

/// Element of so(n). Construction symmetrizes the raw input, so the stored
/// entries obey m_ij == -m_ji exactly and arithmetic can use plain matrices.
class SkewMatrix {
 public:
  explicit SkewMatrix(const Matrix& raw);
  static SkewMatrix zero(int n);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  operator const Matrix&() const { return m_; }

 private:
  Matrix m_;
};

/// Sizes (k_1, ..., k_r) of the diagonal blocks, summing to n.
class BlockPartition {
 public:
  explicit BlockPartition(std::vector<int> parts);
  static BlockPartition regular(int n);  // (1, ..., 1)

  int n() const { return n_; }
  int blocks() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  int block_of(int index) const;  // 0-based matrix index -> 0-based block
  bool same_block(int i, int j) const { return block_of(i) == block_of(j); }
  int isotropy_dim() const;       // sum k_i(k_i-1)/2
  int transversal_dim() const;    // sum_{p<q} k_p k_q
  std::string to_string() const;  // "(2,3)"

 private:
  std::vector<int> parts_;
  std::vector<int> block_index_;  // per matrix index
  int n_ = 0;
};

/// Block-constant diagonal data: A = diag on blocks of alphas, B of betas.
class SpectralParams {
 public:
  SpectralParams(BlockPartition partition, Vector alphas, Vector betas);
  /// Fully regular parameters: partition (1,...,1) with a, b the diagonals.
  static SpectralParams regular(const Vector& a, const Vector& b);

  const BlockPartition& partition() const { return partition_; }
  const Vector& alphas() const { return alphas_; }
  const Vector& betas() const { return betas_; }
  Vector expand_a() const;  // diag entries a_1..a_n
  Vector expand_b() const;

 private:
  BlockPartition partition_;
  Vector alphas_, betas_;
};

struct WedgePair {
  int i = 0, j = 0;  // i < j
};

/// E_i ^ E_j = e_i e_j^T - e_j e_i^T (unit norm under scalar_product).
Matrix wedge_matrix(int n, int i, int j);

/// Ordered list of wedge pairs spanning a coordinate-aligned subspace of
/// so(n): the full algebra, the isotropy so(n)_A, the transversal space v,
/// a single v_{p,q}, or the momentum carrier p = k + v of a block split.
class WedgeBasis {
 public:
  static WedgeBasis full(int n);
  static WedgeBasis isotropy(const BlockPartition& partition);
  static WedgeBasis transversal(const BlockPartition& partition);
  static WedgeBasis transversal_pair(const BlockPartition& partition, int p, int q);
  /// Wedges of p = (blocks h_blocks..r-1 isotropy) + v for SO(n)/H with
  /// H the first h_blocks blocks.
  static WedgeBasis momentum_carrier(const BlockPartition& partition, int h_blocks);

  int n() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  const std::vector<WedgePair>& pairs() const { return pairs_; }

  Vector coords(const Matrix& m) const;   // <M, E_i^E_j> per pair
  Matrix matrix(const Vector& c) const;   // inverse of coords on the span
  Matrix project(const Matrix& m) const;  // orthogonal projection onto span

 private:
  WedgeBasis(int n, std::vector<WedgePair> pairs) : n_(n), pairs_(std::move(pairs)) {}
  int n_ = 0;
  std::vector<WedgePair> pairs_;
};

/// Splits M into the so(n)_A part (diagonal blocks) and the v part
/// (off-diagonal blocks); the parts sum to M exactly and are orthogonal.
struct BlockSplit {
  Matrix iso;
  Matrix trans;
};
BlockSplit project_split(const Matrix& m, const BlockPartition& partition);
Matrix project_isotropy(const Matrix& m, const BlockPartition& partition);
Matrix project_transversal(const Matrix& m, const BlockPartition& partition);

// Frobenius-orthonormal basis of Sym(n): E_ii, (E_ij + E_ji)/sqrt(2).
std::vector<Matrix> sym_basis(int n);
int sym_dim(int n);
Vector sym_coords(const Matrix& s);

// Seeded generic sampling. Deterministic for a fixed seed: free coordinates
// are i.i.d. uniform on [-1, 1] from a splitmix-seeded mt19937_64 with an
// explicit 53-bit mapping, so results are byte-identical across runs.
uint64_t derive_seed(uint64_t seed, uint64_t salt);
Matrix sample_skew(uint64_t seed, int n);
Matrix sample_sym(uint64_t seed, int n);
Matrix sample_wedge_span(uint64_t seed, const WedgeBasis& basis);

}  // namespace manakov
