// Acceptance suite: every structural and dynamical requirement of the
// laboratory, one line of output per criterion. Exit code 0 only when all
// criteria hold at their stated tolerances.

#include "manakov/cli.hpp"
#include "manakov/completeness.hpp"
#include "manakov/flows.hpp"
#include "manakov/invariants.hpp"
#include "manakov/sectional.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace manakov;

namespace {

std::vector<uint64_t> seed_range(int count, uint64_t base = 1) {
  std::vector<uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(base + static_cast<uint64_t>(i));
  return out;
}

const std::vector<double> kLambdaSamples{-1.7, -0.6, 0.3, 1.1, 1.9};

struct DriftSummary {
  double family = 0.0;
  double energy = 0.0;
  double spectrum = 0.0;
  double noether = 0.0;
};

DriftSummary measure_drifts(const Trajectory& traj, const IntegralFamily& fam,
                            const std::function<double(const Matrix&)>& energy,
                            const Vector& a_diag, const BlockPartition& partition) {
  DriftSummary out;
  const Matrix& m0 = traj.states.front().mat();
  std::vector<double> initial(fam.size());
  for (int i = 0; i < fam.size(); ++i) initial[i] = fam.member(i).value(m0);
  const double e0 = energy(m0);
  std::vector<std::vector<std::pair<double, double>>> spec0;
  for (double lambda : kLambdaSamples) spec0.push_back(lax_spectrum(m0, a_diag, lambda));
  for (const auto& state : traj.states) {
    const Matrix& m = state.mat();
    for (int i = 0; i < fam.size(); ++i) {
      out.family = std::max(out.family, std::abs(fam.member(i).value(m) - initial[i]) /
                                            std::max(std::abs(initial[i]), 1.0));
    }
    out.energy =
        std::max(out.energy, std::abs(energy(m) - e0) / std::max(std::abs(e0), 1.0));
    for (size_t l = 0; l < kLambdaSamples.size(); ++l) {
      out.spectrum = std::max(
          out.spectrum, spectrum_displacement(lax_spectrum(m, a_diag, kLambdaSamples[l]),
                                              spec0[l]));
    }
  }
  out.noether = noether_drift(traj, partition);
  return out;
}

bool report(int index, const std::string& label, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
  return pass;
}

bool criterion1() {
  bool pass = true;
  std::string detail;
  for (const auto& parts :
       {std::vector<int>{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}) {
    const BlockPartition partition(parts);
    const CompletenessVerdict v = verify_theorem1(partition, seed_range(20));
    pass = pass && v.pass;
    detail += partition.to_string() + (v.pass ? " ok " : " FAIL ");
  }
  return report(1, "ddim + dind of the Lax + Noether family matches dim + rank, coisotropic",
                pass, detail);
}

bool criterion2() {
  bool pass = true;
  std::string detail;
  for (int n = 4; n <= 8; ++n) {
    const CompletenessVerdict v = verify_lemma1(n, seed_range(20));
    pass = pass && v.pass;
    detail += "n=" + std::to_string(n) + (v.pass ? " ok " : " FAIL ");
  }
  return report(2, "kernel system nullity equals n at normal forms and generic points", pass,
                detail);
}

bool criterion3() {
  bool pass = true;
  int partitions_checked = 0;
  std::string failures;
  for (int n = 2; n <= 7; ++n) {
    for (const auto& parts : partitions_of(n)) {
      const BlockPartition partition(parts);
      const CompletenessVerdict v = verify_theorem3(partition, seed_range(20));
      ++partitions_checked;
      if (!v.pass) {
        pass = false;
        failures += partition.to_string() + " ";
      }
    }
  }
  return report(3, "restricted family rank matches dim v - orbit/2 on every partition, n <= 7",
                pass,
                std::to_string(partitions_checked) + " partitions" +
                    (failures.empty() ? "" : ", failed: " + failures));
}

bool criterion4() {
  const double tol = 1e-9;
  double worst = 0.0;
  int points = 0;
  const std::vector<std::vector<int>> configs{{1, 1, 1},    {2, 2},    {1, 3},
                                              {2, 3},       {1, 4},    {3, 3},
                                              {2, 2, 2},    {1, 1, 1, 1, 1, 1}};
  for (const auto& parts : configs) {
    const BlockPartition partition(parts);
    const SpectralParams params = default_spectral_params(partition);
    const Vector a = params.expand_a();
    const int n = partition.n();
    const CarrierSpace so_n = CarrierSpace::so_n(n);
    const CarrierSpace v_space = CarrierSpace::transversal(partition);
    const IntegralFamily lax = IntegralFamily::manakov(so_n, a);
    const IntegralFamily noether = IntegralFamily::noether(partition);
    const IntegralFamily lax_v = IntegralFamily::manakov(v_space, a);
    for (uint64_t seed : seed_range(13)) {
      const Matrix m = sample_skew(seed, n);
      worst = std::max(worst, max_normalized_cross(lax, noether, m, BracketKind::lie_poisson()));
      worst = std::max(worst,
                       cross_commutation_check(m, params, tol).max_normalized);
      const Matrix mv = v_space.sample(seed);
      const BracketKind reduced = BracketKind::reduced(j_space(mv, partition));
      worst = std::max(worst, max_normalized_pairwise(lax_v, mv, reduced));
      ++points;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%d points, max normalized bracket %.3g", points, worst);
  return report(4, "reduced and cross involutivity at 1e-9", worst <= tol, detail);
}

bool criterion5() {
  const double drift_tol = 1e-6, noether_tol = 1e-8, order_factor = 8.0;
  bool pass = true;
  std::string detail;

  // n = 5 regular Manakov flow.
  Vector a5(5), b5(5);
  a5 << 1, 2, 3, 4, 5;
  b5 << 2, 3, 5, 7, 11;
  const SectionalOperator op5 = SectionalOperator::regular(a5, b5);
  const Matrix m05 = 3.0 * sample_skew(3, 5);
  auto field5 = [&](const Matrix& m) { return euler_field(m, op5); };
  const IntegratorConfig full{IntegratorMethod::RK4, 1e-3, 100.0, 100};
  const IntegratorConfig halved{IntegratorMethod::RK4, 5e-4, 100.0, 200};
  const Trajectory traj5 = integrate(field5, SkewMatrix(m05), full);
  const Trajectory traj5h = integrate(field5, SkewMatrix(m05), halved);
  const IntegralFamily fam5 = IntegralFamily::manakov(CarrierSpace::so_n(5), a5);
  auto energy5 = [&](const Matrix& m) { return op5.hamiltonian(m); };
  const DriftSummary d5 =
      measure_drifts(traj5, fam5, energy5, a5, BlockPartition::regular(5));
  const DriftSummary d5h =
      measure_drifts(traj5h, fam5, energy5, a5, BlockPartition::regular(5));
  const double ratio5 = d5.energy / std::max(d5h.energy, 1e-300);
  pass = pass && d5.family <= drift_tol && d5.energy <= drift_tol &&
         d5.spectrum <= drift_tol && ratio5 >= order_factor;
  {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "manakov drift %.2g spec %.2g order x%.1f; ", d5.family,
                  d5.spectrum, ratio5);
    detail += buf;
  }

  // n = 6 symmetric rigid body on (3,3).
  const BlockPartition p33({3, 3});
  Vector betas(2);
  betas << 1, 4;
  const SectionalOperator op6 = SectionalOperator::rigid_body(p33, betas);
  const Matrix m06 = 16.0 * sample_skew(4, 6);
  auto field6 = [&](const Matrix& m) { return rigid_body_field(m, op6.params()); };
  const Trajectory traj6 = integrate(field6, SkewMatrix(m06), full);
  const Trajectory traj6h = integrate(field6, SkewMatrix(m06), halved);
  const IntegralFamily fam6 = IntegralFamily::manakov(CarrierSpace::so_n(6), op6.a_diag());
  auto energy6 = [&](const Matrix& m) { return op6.hamiltonian(m); };
  const DriftSummary d6 = measure_drifts(traj6, fam6, energy6, op6.a_diag(), p33);
  const DriftSummary d6h = measure_drifts(traj6h, fam6, energy6, op6.a_diag(), p33);
  const double ratio6 = d6.energy / std::max(d6h.energy, 1e-300);
  pass = pass && d6.family <= drift_tol && d6.energy <= drift_tol &&
         d6.spectrum <= drift_tol && d6.noether <= noether_tol && ratio6 >= order_factor;
  {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "rigid body drift %.2g noether %.2g order x%.1f", d6.family,
                  d6.noether, ratio6);
    detail += buf;
  }
  return report(5, "conservation, isospectrality, and fourth-order convergence", pass, detail);
}

bool criterion6() {
  const double tol = 1e-10;
  double worst = 0.0;
  std::mt19937_64 rng(0xC0FFEE);
  auto uniform = [&](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    return lo + (hi - lo) * u;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);  // 3..8
    std::vector<int> parts;
    int rest = n;
    while (rest > 0) {
      const int k = 1 + static_cast<int>(rng() % static_cast<uint64_t>(rest));
      parts.push_back(k);
      rest -= k;
    }
    const BlockPartition partition(parts);
    const SpectralParams params = default_spectral_params(partition);
    const SectionalOperator op = SectionalOperator::singular(params);
    const Matrix m = sample_skew(derive_seed(1000, trial), n);
    const Matrix omega = op.apply(m);
    const Vector a = op.a_diag(), b = op.b_diag();

    // Manakov compatibility residual.
    {
      const double scale =
          std::max(1.0, commutator(m, Matrix(b.asDiagonal())).norm() +
                            commutator(omega, Matrix(a.asDiagonal())).norm());
      worst = std::max(worst, check_manakov_condition(m, omega, a, b) / scale);
    }
    // Lax residual at a random spectral parameter.
    {
      const double lambda = uniform(-2.0, 2.0);
      const Matrix lhs = euler_field(m, op);
      const Matrix rhs = commutator(m + lambda * Matrix(a.asDiagonal()),
                                    omega + lambda * Matrix(b.asDiagonal()));
      const double scale = std::max(1.0, lhs.norm() + rhs.norm());
      worst = std::max(worst, lax_residual(m, op, lambda) / scale);
    }
    // Split-field consistency.
    {
      const Matrix split = singular_flow_field(m, op);
      const Matrix euler = euler_field(m, op);
      const double scale = std::max(1.0, split.norm() + euler.norm());
      worst = std::max(worst, (split - euler).norm() / scale);
    }
    // Restriction of the pencil central functions.
    {
      const double lambda = uniform(-2.0, 2.0);
      const int k = 2 + static_cast<int>(rng() % static_cast<uint64_t>(n - 1));
      const IdentityResidual r = restriction_identity(m, a, lambda, k);
      worst = std::max(worst, r.residual / r.scale);
    }
    // Footnote determinant identity.
    {
      const double alpha = uniform(0.3, 2.0);
      const double beta = uniform(-2.0, 2.0);
      const IdentityResidual r = det_identity(m, a, alpha, beta);
      worst = std::max(worst, r.residual / r.scale);
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "500 identity instances, max scaled residual %.3g",
                worst);
  return report(6, "algebraic identities at 1e-10 scale", worst <= tol, detail);
}

bool criterion7() {
  bool pass = true;
  std::string detail;
  for (const auto& parts : {std::vector<int>{1, 4}, {1, 6}, {2, 5}}) {
    const BlockPartition partition(parts);
    int good = 0;
    for (uint64_t seed : seed_range(20)) {
      const Matrix m = sample_wedge_span(seed, WedgeBasis::transversal(partition));
      const ReductionResult red = normal_form_reduce(m, partition);
      const bool zero_ok =
          red.applicable && red.zero_residual <= 1e-12 * std::max(1.0, m.norm());
      const ReductionEqualityResult eq = verify_reduction_equality(red.m_prime, partition);
      if (zero_ok && eq.applicable && eq.equal) ++good;
    }
    pass = pass && good == 20;
    detail += partition.to_string() + "=" + std::to_string(good) + "/20 ";
  }
  return report(7, "normal-form reduction zeroes trailing columns and preserves j_M", pass,
                detail);
}

bool criterion8() {
  bool pass = true;
  std::string detail;
  const IntegratorConfig cfg{IntegratorMethod::RK4, 1e-3, 100.0, 100};
  // Stiefel shapes with scalar interior operator and arbitrary kappa.
  for (const auto& parts : {std::vector<int>{2, 2}, {3, 3}}) {
    const BlockPartition partition(parts);
    const CompletenessVerdict verdict = verify_theorem4(partition, 1, seed_range(20));
    const MetricSpec metric = MetricSpec::stiefel(partition, 1, 0.7, 1.9);
    const CarrierSpace space = CarrierSpace::momentum(partition, 1);
    const Matrix m0 = 3.0 * space.sample(11);
    const Trajectory traj = integrate(
        [&](const Matrix& m) { return metric_flow_field(m, metric); }, SkewMatrix(m0), cfg);
    const IntegralFamily fam = IntegralFamily::unite(
        IntegralFamily::manakov(space, default_spectral_params(partition).expand_a()),
        IntegralFamily::k_linear(partition, 1));
    double drift = 0.0;
    std::vector<double> initial(fam.size());
    for (int i = 0; i < fam.size(); ++i) initial[i] = fam.member(i).value(m0);
    for (const auto& state : traj.states) {
      for (int i = 0; i < fam.size(); ++i) {
        drift = std::max(drift, std::abs(fam.member(i).value(state.mat()) - initial[i]) /
                                    std::max(std::abs(initial[i]), 1.0));
      }
    }
    const bool ok = verdict.pass && drift <= 1e-6;
    pass = pass && ok;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s count %s drift %.2g; ", partition.to_string().c_str(),
                  verdict.pass ? "ok" : "FAIL", drift);
    detail += buf;
  }
  // Submersion metric on SO(6)/SO(2)^3 conserves the restricted family.
  {
    const BlockPartition partition({2, 2, 2});
    Vector alphas(3), betas(3);
    alphas << 1, 2, 3;
    betas << 2, 5, 7;
    const SpectralParams params(partition, alphas, betas);
    const MetricSpec metric = MetricSpec::submersion(params);
    const Matrix m0 = 2.0 * sample_wedge_span(13, WedgeBasis::transversal(partition));
    const Trajectory traj = integrate(
        [&](const Matrix& m) { return metric_flow_field(m, metric); }, SkewMatrix(m0), cfg);
    const IntegralFamily fam =
        IntegralFamily::manakov(CarrierSpace::transversal(partition), params.expand_a());
    double drift = 0.0;
    std::vector<double> initial(fam.size());
    for (int i = 0; i < fam.size(); ++i) initial[i] = fam.member(i).value(m0);
    for (const auto& state : traj.states) {
      for (int i = 0; i < fam.size(); ++i) {
        drift = std::max(drift, std::abs(fam.member(i).value(state.mat()) - initial[i]) /
                                    std::max(std::abs(initial[i]), 1.0));
      }
    }
    pass = pass && drift <= 1e-6;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(2,2,2) submersion drift %.2g", drift);
    detail += buf;
  }
  return report(8, "homogeneous-metric families complete and conserved along their flows", pass,
                detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  all &= criterion1();
  all &= criterion2();
  all &= criterion3();
  all &= criterion4();
  all &= criterion5();
  all &= criterion6();
  all &= criterion7();
  all &= criterion8();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s in %.1fs\n", all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED", elapsed);
  return all ? 0 : 1;
}
