#include "manakov/invariants.hpp"

#include "manakov/sectional.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace manakov {

namespace {

Matrix matrix_power(const Matrix& m, int k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

// Coefficient matrices of (M + lambda A)^k as a polynomial in lambda. Exact
// expansion keeps each coefficient at its own natural scale, which the
// interpolation route cannot do once k grows past ~6.
std::vector<Matrix> matrix_poly_power(const Matrix& m, const Matrix& a, int k) {
  const int n = static_cast<int>(m.rows());
  std::vector<Matrix> coeffs{Matrix::Identity(n, n)};
  for (int j = 0; j < k; ++j) {
    std::vector<Matrix> next(coeffs.size() + 1, Matrix::Zero(n, n));
    for (size_t t = 0; t < coeffs.size(); ++t) {
      next[t] += coeffs[t] * m;
      next[t + 1] += coeffs[t] * a;
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

// Integer interpolation nodes 0, 1, -1, 2, -2, ... (count of them).
std::vector<double> vandermonde_nodes(int count) {
  std::vector<double> nodes;
  nodes.push_back(0.0);
  for (int v = 1; static_cast<int>(nodes.size()) < count; ++v) {
    nodes.push_back(static_cast<double>(v));
    if (static_cast<int>(nodes.size()) < count) nodes.push_back(static_cast<double>(-v));
  }
  return nodes;
}

// Rows of V^{-1}: weight vectors extracting each lambda-power coefficient
// from samples of a degree-k polynomial at the integer nodes.
Matrix vandermonde_weights(int k) {
  const std::vector<double> nodes = vandermonde_nodes(k + 1);
  Matrix v(k + 1, k + 1);
  for (int j = 0; j <= k; ++j) {
    double p = 1.0;
    for (int s = 0; s <= k; ++s) {
      v(j, s) = p;
      p *= nodes[j];
    }
  }
  return Eigen::FullPivLU<Matrix>(v).inverse();
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

class ManakovCoefficient : public Integral {
 public:
  ManakovCoefficient(CarrierSpace space, Vector a_diag, int k, int s)
      : space_(std::move(space)), a_(Matrix(a_diag.asDiagonal())), k_(k), s_(s) {}

  std::string tag() const override {
    return "L(" + std::to_string(k_) + "," + std::to_string(s_) + ")";
  }

  double value(const Matrix& m) const override {
    return matrix_poly_power(m, a_, k_)[s_].trace();
  }

  Matrix gradient(const Matrix& m) const override {
    return space_.project(-2.0 * k_ * skew_part(matrix_poly_power(m, a_, k_ - 1)[s_]));
  }

 private:
  CarrierSpace space_;
  Matrix a_;
  int k_, s_;
};

class WedgeLinearForm : public Integral {
 public:
  WedgeLinearForm(int n, WedgePair pair, std::string prefix)
      : pair_(pair), grad_(wedge_matrix(n, pair.i, pair.j)), prefix_(std::move(prefix)) {}

  std::string tag() const override {
    return prefix_ + "(" + std::to_string(pair_.i + 1) + "," + std::to_string(pair_.j + 1) + ")";
  }
  double value(const Matrix& m) const override { return scalar_product(m, grad_); }
  Matrix gradient(const Matrix&) const override { return grad_; }

 private:
  WedgePair pair_;
  Matrix grad_;
  std::string prefix_;
};

class FactorManakovCoefficient : public Integral {
 public:
  FactorManakovCoefficient(CarrierSpace space, int offset, int block, int k, int s)
      : space_(std::move(space)), offset_(offset), block_(block), k_(k), s_(s) {
    const Vector a_loc = Vector::LinSpaced(block, 1.0, static_cast<double>(block));
    a_ = a_loc.asDiagonal();
  }

  std::string tag() const override {
    return "F(" + std::to_string(offset_ + 1) + ";" + std::to_string(k_) + "," +
           std::to_string(s_) + ")";
  }

  double value(const Matrix& m) const override {
    const Matrix mb = m.block(offset_, offset_, block_, block_);
    return matrix_poly_power(mb, a_, k_)[s_].trace();
  }

  Matrix gradient(const Matrix& m) const override {
    const Matrix mb = m.block(offset_, offset_, block_, block_);
    Matrix g = Matrix::Zero(m.rows(), m.cols());
    g.block(offset_, offset_, block_, block_) =
        -2.0 * k_ * skew_part(matrix_poly_power(mb, a_, k_ - 1)[s_]);
    return space_.project(g);
  }

 private:
  CarrierSpace space_;
  int offset_, block_, k_, s_;
  Matrix a_;
};

class BolsinovIntegral : public Integral {
 public:
  BolsinovIntegral(CarrierSpace space, Vector a_diag, int k, double lambda)
      : space_(std::move(space)), a_diag_(std::move(a_diag)), k_(k), lambda_(lambda) {
    for (int i = 0; i < a_diag_.size(); ++i) {
      if (std::abs(lambda_ + a_diag_(i)) < 1e-12) {
        throw pole_error("bolsinov integral: lambda hits pole -a_" + std::to_string(i + 1));
      }
    }
    resolvent_ = (1.0 / (a_diag_.array() + lambda_)).matrix();
  }

  std::string tag() const override {
    return "J(" + std::to_string(k_) + "," + fmt_double(lambda_) + ")";
  }

  double value(const Matrix& m) const override {
    const Matrix mc = m * resolvent_.asDiagonal();
    return matrix_power(mc, 2 * k_).trace();
  }

  Matrix gradient(const Matrix& m) const override {
    const Matrix c = resolvent_.asDiagonal();
    const Matrix mc = m * c;
    const Matrix g = -4.0 * k_ * skew_part(c * matrix_power(mc, 2 * k_ - 1));
    return space_.project(g);
  }

 private:
  CarrierSpace space_;
  Vector a_diag_;
  int k_;
  double lambda_;
  Vector resolvent_;
};

class CasimirPower : public Integral {
 public:
  CasimirPower(int k) : k_(k) {}
  std::string tag() const override { return "tr(M^" + std::to_string(2 * k_) + ")"; }
  double value(const Matrix& m) const override { return matrix_power(m, 2 * k_).trace(); }
  Matrix gradient(const Matrix& m) const override {
    return -4.0 * k_ * skew_part(matrix_power(m, 2 * k_ - 1));
  }

 private:
  int k_;
};

class PencilCasimir : public Integral {
 public:
  PencilCasimir(Vector a_diag, double lambda, int k)
      : a_diag_(std::move(a_diag)), lambda_(lambda), k_(k) {}

  std::string tag() const override {
    return "Cas(" + fmt_double(lambda_) + "," + std::to_string(k_) + ")";
  }

  double value(const Matrix& x) const override {
    return matrix_power(shifted(x), k_).trace();
  }

  Matrix gradient(const Matrix& x) const override {
    const Matrix g = matrix_power(shifted(x), k_ - 1);
    return -2.0 * k_ * (lambda_ * skew_part(g) + sym_part(g));
  }

 private:
  Matrix shifted(const Matrix& x) const {
    const Matrix a = a_diag_.asDiagonal();
    return lambda_ * skew_part(x) + sym_part(x) + lambda_ * lambda_ * a;
  }
  Vector a_diag_;
  double lambda_;
  int k_;
};

}  // namespace

CarrierSpace CarrierSpace::so_n(int n) {
  return CarrierSpace(Carrier::SoN, BlockPartition::regular(n), 0, WedgeBasis::full(n));
}

CarrierSpace CarrierSpace::transversal(const BlockPartition& partition) {
  return CarrierSpace(Carrier::Transversal, partition, partition.blocks(),
                      WedgeBasis::transversal(partition));
}

CarrierSpace CarrierSpace::momentum(const BlockPartition& partition, int h_blocks) {
  return CarrierSpace(Carrier::Momentum, partition, h_blocks,
                      WedgeBasis::momentum_carrier(partition, h_blocks));
}

CarrierSpace CarrierSpace::gl(int n) {
  return CarrierSpace(Carrier::GL, BlockPartition::regular(n), 0, WedgeBasis::full(n));
}

int CarrierSpace::dim() const {
  return skew_basis_.size() + (includes_sym() ? sym_dim(n_) : 0);
}

Matrix CarrierSpace::project(const Matrix& g) const {
  if (includes_sym()) return g;
  return skew_basis_.project(g);
}

Vector CarrierSpace::coords(const Matrix& g) const {
  const Vector skew = skew_basis_.coords(g);
  if (!includes_sym()) return skew;
  const Vector sym = sym_coords(sym_part(g));
  Vector out(skew.size() + sym.size());
  out << skew, sym;
  return out;
}

Matrix CarrierSpace::sample(uint64_t seed) const {
  if (includes_sym()) {
    return sample_skew(derive_seed(seed, 11), n_) + sample_sym(derive_seed(seed, 12), n_);
  }
  return sample_wedge_span(seed, skew_basis_);
}

namespace {

// p_{k,0} = tr(M^k) for odd k and p_{k,1} = k tr(M^{k-1} A) for even k are
// the zero polynomial on skew matrices (odd skew powers have zero diagonal);
// they are dropped from materialized families.
bool manakov_coefficient_vanishes(int k, int s) {
  return (s == 0 && k % 2 == 1) || (s == 1 && k % 2 == 0);
}

}  // namespace

IntegralFamily IntegralFamily::manakov(const CarrierSpace& space, const Vector& a_diag) {
  if (a_diag.size() != space.n()) throw shape_error("manakov family: a_diag size mismatch");
  IntegralFamily fam(space);
  for (int k = 2; k <= space.n(); ++k) {
    for (int s = 0; s <= k - 2; ++s) {
      if (manakov_coefficient_vanishes(k, s)) continue;
      fam.members_.push_back(std::make_shared<ManakovCoefficient>(space, a_diag, k, s));
    }
  }
  return fam;
}

IntegralFamily IntegralFamily::noether(const BlockPartition& partition) {
  IntegralFamily fam(CarrierSpace::so_n(partition.n()));
  const WedgeBasis iso_basis = WedgeBasis::isotropy(partition);
  for (const auto& pair : iso_basis.pairs()) {
    fam.members_.push_back(std::make_shared<WedgeLinearForm>(partition.n(), pair, "S"));
  }
  return fam;
}

IntegralFamily IntegralFamily::k_linear(const BlockPartition& partition, int h_blocks) {
  IntegralFamily fam(CarrierSpace::momentum(partition, h_blocks));
  const WedgeBasis iso_basis = WedgeBasis::isotropy(partition);
  for (const auto& pair : iso_basis.pairs()) {
    if (partition.block_of(pair.i) >= h_blocks) {
      fam.members_.push_back(std::make_shared<WedgeLinearForm>(partition.n(), pair, "K"));
    }
  }
  return fam;
}

IntegralFamily IntegralFamily::factor_manakov(const BlockPartition& partition, int h_blocks) {
  CarrierSpace space = CarrierSpace::momentum(partition, h_blocks);
  IntegralFamily fam(space);
  int offset = 0;
  for (int b = 0; b < partition.blocks(); ++b) {
    const int kb = partition.parts()[b];
    if (b >= h_blocks && kb >= 2) {
      for (int k = 2; k <= kb; ++k) {
        for (int s = 0; s <= k - 2; ++s) {
          if (manakov_coefficient_vanishes(k, s)) continue;
          fam.members_.push_back(
              std::make_shared<FactorManakovCoefficient>(space, offset, kb, k, s));
        }
      }
    }
    offset += kb;
  }
  return fam;
}

IntegralFamily IntegralFamily::bolsinov(const CarrierSpace& space, const Vector& a_diag,
                                        const std::vector<double>& lambdas) {
  IntegralFamily fam(space);
  for (double lambda : lambdas) {
    for (int k = 1; 2 * k <= space.n(); ++k) {
      fam.members_.push_back(std::make_shared<BolsinovIntegral>(space, a_diag, k, lambda));
    }
  }
  return fam;
}

IntegralFamily IntegralFamily::casimirs(int n) {
  IntegralFamily fam(CarrierSpace::so_n(n));
  for (int k = 1; 2 * k <= n; ++k) fam.members_.push_back(std::make_shared<CasimirPower>(k));
  return fam;
}

IntegralFamily IntegralFamily::pencil_casimirs(int n, const Vector& a_diag,
                                               const std::vector<double>& lambdas) {
  IntegralFamily fam(CarrierSpace::gl(n));
  for (double lambda : lambdas) {
    for (int k = 1; k <= n; ++k) {
      fam.members_.push_back(std::make_shared<PencilCasimir>(a_diag, lambda, k));
    }
  }
  return fam;
}

IntegralFamily IntegralFamily::unite(IntegralFamily a, IntegralFamily b) {
  if (a.space_.carrier() != b.space_.carrier() || a.space_.n() != b.space_.n()) {
    throw shape_error("IntegralFamily::unite: carrier mismatch");
  }
  for (auto& m : b.members_) a.members_.push_back(std::move(m));
  return a;
}

Matrix IntegralFamily::gradient_matrix(const Matrix& m) const {
  const int d = space_.dim();
  Matrix g(size(), d);
  for (int i = 0; i < size(); ++i) {
    g.row(i) = space_.coords(members_[i]->gradient(m)).transpose();
  }
  return g;
}

std::vector<double> default_j_lambdas(const Vector& alphas, int count, uint64_t seed) {
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < alphas.size(); ++i)
    for (int j = i + 1; j < alphas.size(); ++j)
      min_gap = std::min(min_gap, std::abs(alphas(i) - alphas(j)));
  if (!std::isfinite(min_gap)) min_gap = 1.0;
  const double margin = 0.1 * min_gap;
  const double range = alphas.cwiseAbs().maxCoeff() + 2.0;
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  while (static_cast<int>(out.size()) < count) {
    const double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    const double lambda = (2.0 * u - 1.0) * range;
    bool ok = true;
    for (int i = 0; i < alphas.size(); ++i) {
      if (std::abs(lambda + alphas(i)) < margin || std::abs(lambda - alphas(i)) < margin) {
        ok = false;
        break;
      }
    }
    for (double prev : out) {
      if (std::abs(lambda - prev) < 1e-6) ok = false;
    }
    if (ok) out.push_back(lambda);
  }
  return out;
}

double j_family_eval(const Matrix& m, const Vector& a_diag, int k, double lambda) {
  const CarrierSpace space = CarrierSpace::so_n(static_cast<int>(a_diag.size()));
  return BolsinovIntegral(space, a_diag, k, lambda).value(m);
}

std::map<std::pair<int, int>, double> eval_manakov_coeffs(const Matrix& m, const Vector& a_diag) {
  const int n = static_cast<int>(a_diag.size());
  if (m.rows() != n || m.cols() != n) throw shape_error("eval_manakov_coeffs: size mismatch");
  const Matrix a = a_diag.asDiagonal();
  std::map<std::pair<int, int>, double> out;
  for (int k = 2; k <= n; ++k) {
    const std::vector<double> nodes = vandermonde_nodes(k + 1);
    Vector vals(k + 1);
    for (int j = 0; j <= k; ++j) vals(j) = matrix_power(m + nodes[j] * a, k).trace();
    const Vector coeffs = vandermonde_weights(k) * vals;
    for (int s = 0; s <= k - 2; ++s) out[{k, s}] = coeffs(s);
  }
  return out;
}

BracketKind BracketKind::lie_poisson() { return BracketKind{}; }

BracketKind BracketKind::frozen(const Vector& a_diag) {
  BracketKind kind;
  kind.type = Type::FrozenA;
  kind.frozen_a = a_diag;
  return kind;
}

BracketKind BracketKind::pencil_gl(double l1, double l2, const Vector& a_diag) {
  if (l1 == 0.0 && l2 == 0.0) {
    throw validation_error("pencil bracket: (lambda1, lambda2) must not be (0, 0)");
  }
  BracketKind kind;
  kind.type = Type::PencilGL;
  kind.lambda1 = l1;
  kind.lambda2 = l2;
  kind.pencil_a = a_diag;
  return kind;
}

BracketKind BracketKind::reduced(const Matrix& j_basis_cols) {
  BracketKind kind;
  kind.type = Type::Reduced;
  kind.reduced_basis = j_basis_cols;
  return kind;
}

namespace {

Matrix reduce_gradient(const Matrix& g, const BracketKind& kind) {
  const int n = static_cast<int>(g.rows());
  const WedgeBasis full = WedgeBasis::full(n);
  const Vector c = full.coords(g);
  const Vector proj = kind.reduced_basis * (kind.reduced_basis.transpose() * c);
  return full.matrix(proj);
}

double bracket_of_gradients(const Matrix& gf, const Matrix& gg, const Matrix& m,
                            const BracketKind& kind) {
  switch (kind.type) {
    case BracketKind::Type::LiePoisson:
      return -scalar_product(m, commutator(gf, gg));
    case BracketKind::Type::FrozenA: {
      const Matrix a = kind.frozen_a.asDiagonal();
      return -scalar_product(m, gf * a * gg - gg * a * gf);
    }
    case BracketKind::Type::Reduced: {
      const Matrix pf = reduce_gradient(gf, kind);
      const Matrix pg = reduce_gradient(gg, kind);
      return -scalar_product(m, commutator(pf, pg));
    }
    case BracketKind::Type::PencilGL: {
      const Matrix xi1 = skew_part(gf), eta1 = sym_part(gf);
      const Matrix xi2 = skew_part(gg), eta2 = sym_part(gg);
      const Matrix a = kind.pencil_a.asDiagonal();
      const double l1_part =
          -scalar_product(m, commutator(xi1, xi2) + commutator(xi1, eta2) + commutator(eta1, xi2));
      const double l2_part = -scalar_product(m + a, commutator(gf, gg));
      return kind.lambda1 * l1_part + kind.lambda2 * l2_part;
    }
  }
  throw numerical_error("bracket: bad kind");
}

}  // namespace

double poisson_bracket(const Integral& f, const Integral& g, const Matrix& m,
                       const BracketKind& kind) {
  return bracket_of_gradients(f.gradient(m), g.gradient(m), m, kind);
}

double gradient_bracket(const Matrix& gf, const Matrix& gg, const Matrix& m,
                        const BracketKind& kind) {
  return bracket_of_gradients(gf, gg, m, kind);
}

double normalized_bracket(const Integral& f, const Integral& g, const Matrix& m,
                          const BracketKind& kind) {
  const Matrix gf = f.gradient(m), gg = g.gradient(m);
  const double value = bracket_of_gradients(gf, gg, m, kind);
  return std::abs(value) / (gf.norm() * gg.norm() * m.norm() + 1e-300);
}

Matrix involution_matrix(const IntegralFamily& family, const Matrix& m, const BracketKind& kind) {
  const int count = family.size();
  std::vector<Matrix> grads(count);
  for (int i = 0; i < count; ++i) grads[i] = family.member(i).gradient(m);
  Matrix out = Matrix::Zero(count, count);
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const double v = bracket_of_gradients(grads[i], grads[j], m, kind);
      out(i, j) = v;
      out(j, i) = -v;
    }
  }
  return out;
}

namespace {

// Gradients more than eight orders below the family's largest are rounding
// residue of a vanishing member; pairs involving them carry no information
// and would turn the normalized residual into 0/0 noise.
constexpr double kZeroGradientCutoff = 1e-8;

double max_normalized_over(const std::vector<Matrix>& ga, const std::vector<Matrix>& gb,
                           bool same_family, const Matrix& m, const BracketKind& kind) {
  double gmax = 0.0;
  for (const auto& g : ga) gmax = std::max(gmax, g.norm());
  for (const auto& g : gb) gmax = std::max(gmax, g.norm());
  const double cutoff = kZeroGradientCutoff * gmax;
  double worst = 0.0;
  for (size_t i = 0; i < ga.size(); ++i) {
    if (ga[i].norm() <= cutoff) continue;
    const size_t j0 = same_family ? i + 1 : 0;
    for (size_t j = j0; j < gb.size(); ++j) {
      if (gb[j].norm() <= cutoff) continue;
      const double v = bracket_of_gradients(ga[i], gb[j], m, kind);
      worst = std::max(worst, std::abs(v) / (ga[i].norm() * gb[j].norm() * m.norm() + 1e-300));
    }
  }
  return worst;
}

}  // namespace

double max_normalized_pairwise(const IntegralFamily& family, const Matrix& m,
                               const BracketKind& kind) {
  std::vector<Matrix> grads(family.size());
  for (int i = 0; i < family.size(); ++i) grads[i] = family.member(i).gradient(m);
  return max_normalized_over(grads, grads, true, m, kind);
}

double max_normalized_cross(const IntegralFamily& fa, const IntegralFamily& fb, const Matrix& m,
                            const BracketKind& kind) {
  std::vector<Matrix> ga(fa.size()), gb(fb.size());
  for (int i = 0; i < fa.size(); ++i) ga[i] = fa.member(i).gradient(m);
  for (int j = 0; j < fb.size(); ++j) gb[j] = fb.member(j).gradient(m);
  return max_normalized_over(ga, gb, false, m, kind);
}

CrossCommutationResult cross_commutation_check(const Matrix& m, const SpectralParams& params,
                                               double tol) {
  const CarrierSpace space = CarrierSpace::so_n(params.partition().n());
  const Vector a = params.expand_a();
  const IntegralFamily lax = IntegralFamily::manakov(space, a);
  const IntegralFamily bols =
      IntegralFamily::bolsinov(space, a, default_j_lambdas(params.alphas(), 2 * space.n(), 0xA11CE));
  CrossCommutationResult out;
  out.max_normalized = max_normalized_cross(lax, bols, m, BracketKind::lie_poisson());
  out.pass = out.max_normalized <= tol;
  return out;
}

double casimir_gl_eval(const Matrix& x, const Vector& a_diag, double lambda, int k) {
  const Matrix a = a_diag.asDiagonal();
  const Matrix w = lambda * skew_part(x) + sym_part(x) + lambda * lambda * a;
  return matrix_power(w, k).trace();
}

double restriction_check(const Matrix& m, const Vector& a_diag, double lambda, int k) {
  return restriction_identity(m, a_diag, lambda, k).residual;
}

IdentityResidual restriction_identity(const Matrix& m, const Vector& a_diag, double lambda,
                                      int k) {
  const Matrix a = a_diag.asDiagonal();
  const double lhs = casimir_gl_eval(skew_part(m), a_diag, lambda, k);
  const double rhs = std::pow(lambda, k) * matrix_power(m + lambda * a, k).trace();
  IdentityResidual out;
  out.residual = std::abs(lhs - rhs);
  out.scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
  return out;
}

double det_identity_check(const Matrix& m, const Vector& a_diag, double alpha, double beta) {
  return det_identity(m, a_diag, alpha, beta).residual;
}

IdentityResidual det_identity(const Matrix& m, const Vector& a_diag, double alpha, double beta) {
  const int n = static_cast<int>(a_diag.size());
  double det_shift = 1.0;
  for (int i = 0; i < n; ++i) {
    const double d = a_diag(i) + alpha;
    if (std::abs(d) < 1e-12) {
      throw pole_error("det identity: alpha + a_" + std::to_string(i + 1) + " is singular");
    }
    det_shift *= d;
  }
  const Matrix a = a_diag.asDiagonal();
  const Vector inv_entries = (1.0 / (a_diag.array() + alpha)).matrix();
  const Matrix inv_shift = inv_entries.asDiagonal();
  const Matrix eye = Matrix::Identity(n, n);
  const double lhs = (m * inv_shift + beta * eye).determinant();
  const double rhs = (m + beta * a + alpha * beta * eye).determinant() / det_shift;
  IdentityResidual out;
  out.residual = std::abs(lhs - rhs);
  out.scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
  return out;
}

GeneratorBracket generator_bracket(const Matrix& u, const Matrix& v, const BracketKind& kind) {
  GeneratorBracket out;
  switch (kind.type) {
    case BracketKind::Type::LiePoisson:
      out.elem = commutator(u, v);
      return out;
    case BracketKind::Type::FrozenA: {
      const Matrix a = kind.frozen_a.asDiagonal();
      out.elem = u * a * v - v * a * u;
      return out;
    }
    case BracketKind::Type::Reduced: {
      out.elem = commutator(reduce_gradient(u, kind), reduce_gradient(v, kind));
      return out;
    }
    case BracketKind::Type::PencilGL: {
      const Matrix xi1 = skew_part(u), eta1 = sym_part(u);
      const Matrix xi2 = skew_part(v), eta2 = sym_part(v);
      const Matrix a = kind.pencil_a.asDiagonal();
      out.elem = kind.lambda1 *
                     (commutator(xi1, xi2) + commutator(xi1, eta2) + commutator(eta1, xi2)) +
                 kind.lambda2 * commutator(u, v);
      out.constant = -kind.lambda2 * scalar_product(a, commutator(u, v));
      return out;
    }
  }
  throw numerical_error("generator_bracket: bad kind");
}

double jacobi_residual(const Matrix& x, const Matrix& u, const Matrix& v, const Matrix& w,
                       const BracketKind& kind) {
  // {f_u, {f_v, f_w}} with linear forms f_z(X) = -<X, z>: the inner bracket
  // is again affine with gradient -elem(v, w), so the cycle sum closes.
  auto nested = [&](const Matrix& a, const Matrix& b, const Matrix& c) {
    const GeneratorBracket inner = generator_bracket(b, c, kind);
    const GeneratorBracket outer = generator_bracket(a, -inner.elem, kind);
    return -scalar_product(x, outer.elem) + outer.constant;
  };
  return std::abs(nested(u, v, w) + nested(v, w, u) + nested(w, u, v));
}

}  // namespace manakov
