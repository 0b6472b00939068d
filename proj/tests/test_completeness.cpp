#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "manakov/completeness.hpp"

#include <cmath>

using namespace manakov;

namespace {

std::vector<uint64_t> seed_range(int count, uint64_t base = 1) {
  std::vector<uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(base + static_cast<uint64_t>(i));
  return out;
}

// Single complete commutative pair on so(3): the casimir and one lax member.
IntegralFamily so3_pair() {
  const Vector a = Vector::LinSpaced(3, 1, 3) / 3.0;
  return IntegralFamily::manakov(CarrierSpace::so_n(3), a);
}

}  // namespace

TEST_CASE("numerical rank policy") {
  SUBCASE("clean gaps are stable") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 0.5;
    const RankResult r = numerical_rank(a);
    CHECK(r.rank == 2);
    CHECK(r.stable);
  }
  SUBCASE("singular values inside the boundary band are flagged") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 0) = 1.0;
    // tau = 3 * eps * 1e4 ~ 6.7e-12; put a value just above it
    a(1, 1) = 2e-11;
    const RankResult r = numerical_rank(a);
    CHECK(!r.stable);
  }
  SUBCASE("zero matrix has rank zero") {
    const RankResult r = numerical_rank(Matrix::Zero(4, 4));
    CHECK(r.rank == 0);
    CHECK(r.stable);
  }
}

TEST_CASE("subspace utilities") {
  Matrix u = Matrix::Zero(4, 1);
  u(0, 0) = 1.0;
  Matrix w = Matrix::Zero(4, 2);
  w(0, 0) = 1.0;
  w(1, 1) = 1.0;
  CHECK(containment_residual(u, w) <= 1e-15);
  CHECK(containment_residual(w, u) > 0.9);
  CHECK(subspace_distance(u, w) > 0.9);
  CHECK(subspace_distance(w, w) <= 1e-15);
}

TEST_CASE("ddim and dind") {
  SUBCASE("so(3) lax family is complete commutative") {
    const IntegralFamily fam = so3_pair();
    const Matrix m = sample_skew(3, 3);
    const FamilySpanReport rep = ddim_dind(fam, m, BracketKind::lie_poisson());
    CHECK(rep.ddim == 2);
    CHECK(rep.dind == 2);  // 2 + 2 = dim so(3) + rank so(3)
  }
  SUBCASE("casimirs alone span the kernel") {
    for (int n : {4, 5}) {
      const IntegralFamily fam = IntegralFamily::casimirs(n);
      const Matrix m = sample_skew(7, n);
      const FamilySpanReport rep = ddim_dind(fam, m, BracketKind::lie_poisson());
      CHECK(rep.ddim == n / 2);
      CHECK(rep.dind == n / 2);
    }
  }
  SUBCASE("empty family") {
    const IntegralFamily fam = IntegralFamily::noether(BlockPartition::regular(4));
    CHECK(fam.size() == 0);
    const FamilySpanReport rep = ddim_dind(fam, sample_skew(3, 4), BracketKind::lie_poisson());
    CHECK(rep.ddim == 0);
    CHECK(rep.dind == 0);
  }
}

TEST_CASE("coisotropy check") {
  const BlockPartition p({2, 2});
  const Vector a = default_spectral_params(p).expand_a();
  SUBCASE("full noether family of the regular partition spans everything") {
    // all wedge coordinates: F = so(n), trivially coisotropic
    const IntegralFamily all = IntegralFamily::noether(BlockPartition({4}));
    CHECK(all.size() == 6);
    CHECK(coisotropy_check(all, sample_skew(5, 4)));
  }
  SUBCASE("lax plus noether is coisotropic") {
    const IntegralFamily fam = IntegralFamily::unite(
        IntegralFamily::manakov(CarrierSpace::so_n(4), a), IntegralFamily::noether(p));
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      CHECK(coisotropy_check(fam, sample_skew(seed, 4)));
    }
  }
  SUBCASE("the casimirs alone are not coisotropic") {
    // their span is exactly the kernel, whose skew-orthogonal complement is
    // all of so(4) and cannot fit inside span + kernel
    const IntegralFamily fam = IntegralFamily::casimirs(4);
    CHECK(!coisotropy_check(fam, sample_skew(9, 4)));
  }
}

TEST_CASE("orbit dimension and centralizer") {
  SUBCASE("generic so(4) orbits are four dimensional") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      CHECK(orbit_dimension(sample_skew(seed, 4)) == 4);
    }
  }
  SUBCASE("single wedge orbit in so(4)") {
    const Matrix x = wedge_matrix(4, 0, 1);
    CHECK(orbit_dimension(x) == 4);  // centralizer spans E1^E2 and E3^E4
    const Matrix cent = centralizer_basis(x);
    CHECK(cent.cols() == 2);
  }
  SUBCASE("zero matrix") { CHECK(orbit_dimension(Matrix::Zero(4, 4)) == 0); }
}

TEST_CASE("j space") {
  SUBCASE("wedge example in so(4) with partition (1,3)") {
    const BlockPartition p({1, 3});
    const Matrix m = wedge_matrix(4, 0, 1);
    const Matrix j = j_space(m, p);
    CHECK(j.cols() == 1);
    // spanned by the generator itself
    const WedgeBasis full = WedgeBasis::full(4);
    const Vector gen = full.coords(m).normalized();
    CHECK(std::abs(std::abs(j.col(0).dot(gen)) - 1.0) <= 1e-12);
  }
  SUBCASE("regular partition keeps all of so(n)") {
    const BlockPartition p = BlockPartition::regular(4);
    const Matrix j = j_space(sample_skew(3, 4), p);
    CHECK(j.cols() == 6);
  }
  SUBCASE("generic dimension is constant across samples") {
    const BlockPartition p({2, 3});
    int dim = -1;
    for (uint64_t seed = 1; seed <= 50; ++seed) {
      const Matrix m = sample_wedge_span(seed, WedgeBasis::transversal(p));
      const int d = static_cast<int>(j_space(m, p).cols());
      if (dim < 0) dim = d;
      CHECK(d == dim);
    }
  }
}

TEST_CASE("lemma 1 nullity") {
  SUBCASE("anti-diagonal normal forms") {
    const Matrix m4 = anti_diagonal_form(4, {1.0, 2.0});
    Vector a_reg = Vector::LinSpaced(4, 1, 4);
    Vector a_block(4);
    a_block << 1, 1, 2, 2;
    CHECK(lemma1_nullity(m4, a_reg).nullity == 4);
    CHECK(lemma1_nullity(m4, a_block).nullity == 4);
    const Matrix m5 = anti_diagonal_form(5, {1.0, 2.0});
    CHECK(lemma1_nullity(m5, Vector::LinSpaced(5, 1, 5)).nullity == 5);
  }
  SUBCASE("random generic points") {
    for (int n = 4; n <= 6; ++n) {
      const Vector a = Vector::LinSpaced(n, 1, n);
      for (uint64_t seed = 1; seed <= 5; ++seed) {
        const NullityReport rep = lemma1_nullity(sample_skew(seed, n), a);
        CHECK(rep.centralizer_dim == n / 2);
        CHECK(rep.nullity == n);
      }
    }
  }
  SUBCASE("verdict runner") {
    const CompletenessVerdict v = verify_lemma1(5, seed_range(10));
    CHECK(v.pass);
    CHECK(v.points_used == 12);  // two normal-form points plus the seeds
  }
}

TEST_CASE("theorem 1 verdicts") {
  SUBCASE("n=4 partition (2,2) targets eight") {
    const CompletenessVerdict v = verify_theorem1(BlockPartition({2, 2}), seed_range(10));
    CHECK(v.pass);
    for (const auto& point : v.per_point) {
      if (!point.generic) continue;
      double sum = 0;
      for (const auto& [key, val] : point.measured) {
        if (key == "ddim" || key == "dind") sum += val;
      }
      CHECK(sum == 8.0);
    }
  }
  SUBCASE("n=2 single block is trivially complete") {
    const CompletenessVerdict v = verify_theorem1(BlockPartition({2}), seed_range(5));
    CHECK(v.pass);
  }
  SUBCASE("regular partition reduces to the commutative count") {
    const CompletenessVerdict v = verify_theorem1(BlockPartition::regular(4), seed_range(5));
    CHECK(v.pass);
    for (const auto& point : v.per_point) {
      for (const auto& [key, val] : point.measured) {
        if (key == "ddim") CHECK(val == 4.0);
        if (key == "dind") CHECK(val == 4.0);
      }
    }
  }
}

TEST_CASE("theorem 4 handles size-one tail blocks") {
  // K made of so(1) factors: empty linear and factor families, the count
  // still has to close.
  const CompletenessVerdict v = verify_theorem4(BlockPartition({2, 1, 1}), 1, seed_range(8));
  CHECK(v.pass);
}

TEST_CASE("theorem 3 verdicts") {
  SUBCASE("n=4 partition (1,3) has one independent invariant") {
    const CompletenessVerdict v = verify_theorem3(BlockPartition({1, 3}), seed_range(10));
    CHECK(v.pass);
    for (const auto& point : v.per_point) {
      if (!point.generic) continue;
      for (const auto& [key, val] : point.measured) {
        if (key == "ddim") CHECK(val == 1.0);
        if (key == "orbit_dim") CHECK(val == 4.0);
      }
    }
  }
  SUBCASE("new-regime partition (1,4) of 5 passes") {
    CHECK(verify_theorem3(BlockPartition({1, 4}), seed_range(10)).pass);
  }
  SUBCASE("single-block partition is vacuous") {
    CHECK(verify_theorem3(BlockPartition({4}), seed_range(3)).pass);
  }
}

TEST_CASE("normal form reduction") {
  const BlockPartition p({1, 4});
  SUBCASE("rotation zeroes the trailing columns") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      const Matrix m = sample_wedge_span(seed, WedgeBasis::transversal(p));
      const ReductionResult red = normal_form_reduce(m, p);
      CHECK(red.applicable);
      CHECK(red.l == 1);
      CHECK(red.n_prime == 3);
      CHECK(red.reduced_partition->to_string() == "(1,2)");
      CHECK(red.zero_residual <= 1e-12 * std::max(1.0, m.norm()));
      CHECK((red.k * red.k.transpose() - Matrix::Identity(5, 5)).norm() <= 1e-13);
      CHECK(red.k.determinant() == doctest::Approx(1.0).epsilon(1e-12));
      // conjugation is an isometry
      CHECK(scalar_product(red.m_prime, red.m_prime) ==
            doctest::Approx(scalar_product(m, m)).epsilon(1e-12));
      // result lies in the reduced transversal space
      CHECK(red.m_prime.rightCols(2).norm() <= 1e-12 * std::max(1.0, m.norm()));
    }
  }
  SUBCASE("identity on partitions without excess") {
    const BlockPartition small({2, 3});
    const Matrix m = sample_wedge_span(3, WedgeBasis::transversal(small));
    const ReductionResult red = normal_form_reduce(m, small);
    CHECK(!red.applicable);
    CHECK((red.m_prime - m).norm() == 0.0);
  }
  SUBCASE("points already reduced stay in the small space") {
    // embed a point of v' and reduce: the result must stay in v'
    const Matrix m_small = sample_wedge_span(5, WedgeBasis::transversal(BlockPartition({1, 2})));
    Matrix m = Matrix::Zero(5, 5);
    m.topLeftCorner(3, 3) = m_small;
    const ReductionResult red = normal_form_reduce(m, p);
    CHECK(red.zero_residual <= 1e-13);
    CHECK(scalar_product(red.m_prime, red.m_prime) ==
          doctest::Approx(scalar_product(m, m)).epsilon(1e-12));
  }
}

TEST_CASE("reduction equality of the invariant-gradient spaces") {
  SUBCASE("applicable cases agree") {
    for (const auto& parts : {std::vector<int>{1, 4}, {2, 5}}) {
      const BlockPartition p(parts);
      for (uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix m = sample_wedge_span(seed, WedgeBasis::transversal(p));
        const ReductionResult red = normal_form_reduce(m, p);
        const ReductionEqualityResult eq = verify_reduction_equality(red.m_prime, p);
        CHECK(eq.applicable);
        CHECK(eq.equal);
      }
    }
  }
  SUBCASE("not applicable below the threshold") {
    const BlockPartition p({2, 3});
    const Matrix m = sample_wedge_span(1, WedgeBasis::transversal(p));
    CHECK(!verify_reduction_equality(m, p).applicable);
  }
}

TEST_CASE("theorem 4 verdicts") {
  SUBCASE("stiefel shapes pass") {
    CHECK(verify_theorem4(BlockPartition({2, 2}), 1, seed_range(8)).pass);
  }
  SUBCASE("splitting everything reduces to theorem 3 numbers") {
    const CompletenessVerdict v = verify_theorem4(BlockPartition({2, 2}), 2, seed_range(8));
    CHECK(v.pass);
  }
  SUBCASE("l_split bounds are validated") {
    CHECK_THROWS_AS(verify_theorem4(BlockPartition({2, 2}), 3, seed_range(2)),
                    validation_error);
  }
}

TEST_CASE("generating set saturation") {
  // appending extra lambda samples or higher trace powers does not grow the
  // gradient span of the restricted family
  const BlockPartition p({2, 3});
  const SpectralParams params = default_spectral_params(p);
  const Vector a = params.expand_a();
  const CarrierSpace space = CarrierSpace::transversal(p);
  const IntegralFamily fam = IntegralFamily::manakov(space, a);
  const Matrix a_mat = a.asDiagonal();
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix m = space.sample(seed);
    const Matrix j = j_space(m, p);
    const BracketKind reduced = BracketKind::reduced(j);
    const FamilySpanReport rep = ddim_dind(fam, m, reduced, Tolerances{});

    // extra gradients: fresh lambda samples and powers beyond n
    const WedgeBasis full = WedgeBasis::full(p.n());
    std::vector<Vector> extra;
    for (double lambda : {0.37, -1.21, 2.9}) {
      for (int k = 2; k <= p.n() + 2; ++k) {
        Matrix w = m + lambda * a_mat;
        Matrix pw = Matrix::Identity(p.n(), p.n());
        for (int t = 0; t < k - 1; ++t) pw = pw * w;
        const Matrix grad = space.project(-2.0 * k * skew_part(pw));
        extra.push_back(j.transpose() * full.coords(grad));
      }
    }
    Matrix rows(static_cast<int>(extra.size()) + fam.size(), j.cols());
    std::vector<Matrix> grads;
    for (int i = 0; i < fam.size(); ++i) {
      rows.row(i) = (j.transpose() * full.coords(fam.member(i).gradient(m))).transpose();
    }
    for (size_t e = 0; e < extra.size(); ++e) {
      rows.row(fam.size() + static_cast<int>(e)) = extra[e].transpose();
    }
    for (int i = 0; i < rows.rows(); ++i) {
      const double norm = rows.row(i).norm();
      if (norm > 1.0) rows.row(i) /= norm;
    }
    CHECK(numerical_rank(rows).rank == rep.ddim);
  }
}

TEST_CASE("ddim and dind are conjugation invariant") {
  const BlockPartition p({1, 4});
  const SpectralParams params = default_spectral_params(p);
  const CarrierSpace space = CarrierSpace::transversal(p);
  const IntegralFamily fam = IntegralFamily::manakov(space, params.expand_a());
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix m = space.sample(seed);
    const ReductionResult red = normal_form_reduce(m, p);
    const FamilySpanReport before =
        ddim_dind(fam, m, BracketKind::reduced(j_space(m, p)), Tolerances{});
    const FamilySpanReport after =
        ddim_dind(fam, red.m_prime, BracketKind::reduced(j_space(red.m_prime, p)), Tolerances{});
    CHECK(before.ddim == after.ddim);
    CHECK(before.dind == after.dind);
  }
}

TEST_CASE("skew-orthogonal complement computed two ways") {
  const BlockPartition p({2, 3});
  const CarrierSpace space = CarrierSpace::transversal(p);
  const IntegralFamily fam =
      IntegralFamily::manakov(space, default_spectral_params(p).expand_a());
  const WedgeBasis full = WedgeBasis::full(5);
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix m = space.sample(seed);
    const Matrix j = j_space(m, p);
    const int dim_j = static_cast<int>(j.cols());
    // Route 1: kernel of the bracket rows C * Lambda-bar.
    Matrix lambda_bar = Matrix::Zero(dim_j, dim_j);
    std::vector<Matrix> j_mats(dim_j);
    for (int q = 0; q < dim_j; ++q) j_mats[q] = full.matrix(j.col(q));
    for (int q = 0; q < dim_j; ++q) {
      for (int r = q + 1; r < dim_j; ++r) {
        lambda_bar(q, r) = -scalar_product(m, commutator(j_mats[q], j_mats[r]));
        lambda_bar(r, q) = -lambda_bar(q, r);
      }
    }
    Matrix rows(fam.size(), dim_j);
    for (int i = 0; i < fam.size(); ++i) {
      rows.row(i) = (j.transpose() * full.coords(fam.member(i).gradient(m))).transpose();
    }
    const Matrix route1 = nullspace(rows * lambda_bar);
    // Route 2: orthogonal complement of the projected commutators [M, grad].
    Matrix comm_rows(fam.size(), dim_j);
    for (int i = 0; i < fam.size(); ++i) {
      const Matrix g = full.matrix(j * (j.transpose() * full.coords(fam.member(i).gradient(m))));
      comm_rows.row(i) = (j.transpose() * full.coords(commutator(m, g))).transpose();
    }
    const Matrix route2 = nullspace(comm_rows);
    CHECK(subspace_distance(route1, route2) <= 1e-8);
  }
}

TEST_CASE("partition enumeration") {
  const auto parts4 = partitions_of(4);
  CHECK(parts4.size() == 5);
  const auto parts7 = partitions_of(7);
  CHECK(parts7.size() == 15);
  for (const auto& parts : parts7) {
    int sum = 0;
    for (size_t i = 0; i + 1 < parts.size(); ++i) CHECK(parts[i] <= parts[i + 1]);
    for (int k : parts) sum += k;
    CHECK(sum == 7);
  }
}

TEST_CASE("verdict serialization") {
  const CompletenessVerdict v = verify_theorem1(BlockPartition({2, 2}), seed_range(3));
  const nlohmann::json j = v.to_json();
  CHECK(j["theorem"] == "theorem1");
  CHECK(j["n"] == 4);
  CHECK(j["verdict"] == "PASS");
  CHECK(j["per_point"].size() == 3);
  CHECK(j["per_point"][0].contains("seed"));
  CHECK(j["per_point"][0].contains("measured"));
}
