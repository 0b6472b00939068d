#include "manakov/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace manakov {

namespace {

void check_square(const Matrix& x, const char* who) {
  if (x.rows() != x.cols()) {
    throw shape_error(std::string(who) + ": matrix is not square");
  }
}

void check_same_dim(const Matrix& x, const Matrix& y, const char* who) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw shape_error(std::string(who) + ": dimension mismatch " + std::to_string(x.rows()) +
                      "x" + std::to_string(x.cols()) + " vs " + std::to_string(y.rows()) + "x" +
                      std::to_string(y.cols()));
  }
}

}  // namespace

Matrix skew_part(const Matrix& x) {
  check_square(x, "skew_part");
  const int n = static_cast<int>(x.rows());
  Matrix s = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (x(i, j) - x(j, i));
      s(i, j) = v;
      s(j, i) = -v;
    }
  }
  return s;
}

Matrix sym_part(const Matrix& x) { return x - skew_part(x); }

double scalar_product(const Matrix& x, const Matrix& y) {
  check_same_dim(x, y, "scalar_product");
  return -0.5 * (x * y).trace();
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  check_same_dim(x, y, "commutator");
  return x * y - y * x;
}

double frob(const Matrix& x) { return x.norm(); }

SkewMatrix::SkewMatrix(const Matrix& raw) {
  check_square(raw, "SkewMatrix");
  const int n = static_cast<int>(raw.rows());
  if (n < kMinDim || n > kMaxDim) {
    throw validation_error("SkewMatrix: dimension " + std::to_string(n) + " outside [" +
                           std::to_string(kMinDim) + ", " + std::to_string(kMaxDim) + "]");
  }
  m_ = skew_part(raw);
}

SkewMatrix SkewMatrix::zero(int n) { return SkewMatrix(Matrix::Zero(n, n)); }

BlockPartition::BlockPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) {
    throw validation_error("BlockPartition: empty part list");
  }
  for (int k : parts_) {
    if (k < 1) {
      throw validation_error("BlockPartition: parts must be positive, got " + std::to_string(k));
    }
  }
  n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  if (n_ < kMinDim || n_ > kMaxDim) {
    throw validation_error("BlockPartition: sum of parts " + std::to_string(n_) + " outside [" +
                           std::to_string(kMinDim) + ", " + std::to_string(kMaxDim) + "]");
  }
  block_index_.resize(n_);
  int pos = 0;
  for (int b = 0; b < static_cast<int>(parts_.size()); ++b) {
    for (int k = 0; k < parts_[b]; ++k) block_index_[pos++] = b;
  }
}

BlockPartition BlockPartition::regular(int n) { return BlockPartition(std::vector<int>(n, 1)); }

int BlockPartition::block_of(int index) const {
  if (index < 0 || index >= n_) {
    throw shape_error("BlockPartition::block_of: index out of range");
  }
  return block_index_[index];
}

int BlockPartition::isotropy_dim() const {
  int d = 0;
  for (int k : parts_) d += k * (k - 1) / 2;
  return d;
}

int BlockPartition::transversal_dim() const { return n_ * (n_ - 1) / 2 - isotropy_dim(); }

std::string BlockPartition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ",";
    os << parts_[i];
  }
  os << ")";
  return os.str();
}

SpectralParams::SpectralParams(BlockPartition partition, Vector alphas, Vector betas)
    : partition_(std::move(partition)), alphas_(std::move(alphas)), betas_(std::move(betas)) {
  const int r = partition_.blocks();
  if (alphas_.size() != r || betas_.size() != r) {
    throw validation_error("SpectralParams: need one alpha and one beta per block (" +
                           std::to_string(r) + "), got " + std::to_string(alphas_.size()) +
                           " alphas, " + std::to_string(betas_.size()) + " betas");
  }
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      if (alphas_(i) == alphas_(j)) {
        throw validation_error("SpectralParams: alphas must be pairwise distinct, alpha_" +
                               std::to_string(i + 1) + " == alpha_" + std::to_string(j + 1));
      }
      if (betas_(i) == betas_(j)) {
        throw validation_error("SpectralParams: betas must be pairwise distinct, beta_" +
                               std::to_string(i + 1) + " == beta_" + std::to_string(j + 1));
      }
    }
  }
}

SpectralParams SpectralParams::regular(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw validation_error("SpectralParams::regular: a and b sizes differ");
  }
  return SpectralParams(BlockPartition::regular(static_cast<int>(a.size())), a, b);
}

Vector SpectralParams::expand_a() const {
  Vector out(partition_.n());
  for (int i = 0; i < partition_.n(); ++i) out(i) = alphas_(partition_.block_of(i));
  return out;
}

Vector SpectralParams::expand_b() const {
  Vector out(partition_.n());
  for (int i = 0; i < partition_.n(); ++i) out(i) = betas_(partition_.block_of(i));
  return out;
}

Matrix wedge_matrix(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw shape_error("wedge_matrix: bad index pair");
  }
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  m(j, i) = -1.0;
  return m;
}

WedgeBasis WedgeBasis::full(int n) {
  std::vector<WedgePair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return WedgeBasis(n, std::move(pairs));
}

WedgeBasis WedgeBasis::isotropy(const BlockPartition& partition) {
  std::vector<WedgePair> pairs;
  const int n = partition.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (partition.same_block(i, j)) pairs.push_back({i, j});
  return WedgeBasis(n, std::move(pairs));
}

WedgeBasis WedgeBasis::transversal(const BlockPartition& partition) {
  std::vector<WedgePair> pairs;
  const int n = partition.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!partition.same_block(i, j)) pairs.push_back({i, j});
  return WedgeBasis(n, std::move(pairs));
}

WedgeBasis WedgeBasis::transversal_pair(const BlockPartition& partition, int p, int q) {
  if (p == q || p < 0 || q < 0 || p >= partition.blocks() || q >= partition.blocks()) {
    throw shape_error("transversal_pair: bad block pair");
  }
  std::vector<WedgePair> pairs;
  const int n = partition.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int bi = partition.block_of(i), bj = partition.block_of(j);
      if ((bi == p && bj == q) || (bi == q && bj == p)) pairs.push_back({i, j});
    }
  return WedgeBasis(n, std::move(pairs));
}

WedgeBasis WedgeBasis::momentum_carrier(const BlockPartition& partition, int h_blocks) {
  if (h_blocks < 1 || h_blocks > partition.blocks()) {
    throw validation_error("momentum_carrier: h_blocks outside [1, r]");
  }
  std::vector<WedgePair> pairs;
  const int n = partition.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int bi = partition.block_of(i), bj = partition.block_of(j);
      const bool in_h = (bi == bj) && bi < h_blocks;
      if (!in_h) pairs.push_back({i, j});
    }
  return WedgeBasis(n, std::move(pairs));
}

Vector WedgeBasis::coords(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) {
    throw shape_error("WedgeBasis::coords: dimension mismatch");
  }
  Vector c(size());
  for (int p = 0; p < size(); ++p) {
    c(p) = 0.5 * (m(pairs_[p].i, pairs_[p].j) - m(pairs_[p].j, pairs_[p].i));
  }
  return c;
}

Matrix WedgeBasis::matrix(const Vector& c) const {
  if (c.size() != size()) {
    throw shape_error("WedgeBasis::matrix: coordinate count mismatch");
  }
  Matrix m = Matrix::Zero(n_, n_);
  for (int p = 0; p < size(); ++p) {
    m(pairs_[p].i, pairs_[p].j) = c(p);
    m(pairs_[p].j, pairs_[p].i) = -c(p);
  }
  return m;
}

Matrix WedgeBasis::project(const Matrix& m) const { return matrix(coords(m)); }

BlockSplit project_split(const Matrix& m, const BlockPartition& partition) {
  const int n = partition.n();
  if (m.rows() != n || m.cols() != n) {
    throw shape_error("project_split: dimension mismatch");
  }
  BlockSplit out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (partition.same_block(i, j)) {
        out.iso(i, j) = m(i, j);
      } else {
        out.trans(i, j) = m(i, j);
      }
    }
  return out;
}

Matrix project_isotropy(const Matrix& m, const BlockPartition& partition) {
  return project_split(m, partition).iso;
}

Matrix project_transversal(const Matrix& m, const BlockPartition& partition) {
  return project_split(m, partition).trans;
}

std::vector<Matrix> sym_basis(int n) {
  std::vector<Matrix> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = inv_sqrt2;
      e(j, i) = inv_sqrt2;
      basis.push_back(e);
    }
  return basis;
}

int sym_dim(int n) { return n * (n + 1) / 2; }

Vector sym_coords(const Matrix& s) {
  check_square(s, "sym_coords");
  const int n = static_cast<int>(s.rows());
  Vector c(sym_dim(n));
  int p = 0;
  for (int i = 0; i < n; ++i) c(p++) = s(i, i);
  const double sqrt2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c(p++) = 0.5 * sqrt2 * (s(i, j) + s(j, i));
  return c;
}

uint64_t derive_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Uniform on [-1, 1] from the top 53 bits; avoids distribution objects whose
// output is not pinned by the standard.
double next_uniform(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
  return 2.0 * u - 1.0;
}

}  // namespace

Matrix sample_wedge_span(uint64_t seed, const WedgeBasis& basis) {
  std::mt19937_64 rng(seed);
  Vector c(basis.size());
  for (int p = 0; p < basis.size(); ++p) c(p) = next_uniform(rng);
  return basis.matrix(c);
}

Matrix sample_skew(uint64_t seed, int n) { return sample_wedge_span(seed, WedgeBasis::full(n)); }

Matrix sample_sym(uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Matrix s = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = next_uniform(rng);
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

}  // namespace manakov
