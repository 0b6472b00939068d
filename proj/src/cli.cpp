#include "manakov/cli.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

namespace manakov {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw validation_error("config: field '" + field + "' must be a number");
  }
  return j[field].get<double>();
}

Vector parse_vector(const json& j, const std::string& field) {
  if (!j.is_array()) throw validation_error("config: field '" + field + "' must be an array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw validation_error("config: field '" + field + "[" + std::to_string(i) +
                             "]' must be a number");
    }
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  return v;
}

Matrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw validation_error("config: field '" + field + "' must be a non-empty array of rows");
  }
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw validation_error("config: field '" + field + "' rows must have equal length");
    }
    for (size_t c = 0; c < cols; ++c) m(static_cast<int>(i), static_cast<int>(c)) = j[i][c];
  }
  return m;
}

std::vector<double> seeded_lambdas(int count, double range, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    out.push_back((2.0 * u - 1.0) * range);
  }
  return out;
}

template <typename Fn>
void parallel_for(int count, int jobs, Fn fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      int i;
      while ((i = next.fetch_add(1)) < count) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

bool Defaults::set(const std::string& key, double value) {
  if (key == "rank_tol_factor") rank_tol_factor = value;
  else if (key == "rank_boundary_band") rank_boundary_band = value;
  else if (key == "max_resamples") max_resamples = static_cast<int>(value);
  else if (key == "non_generic_quota") non_generic_quota = value;
  else if (key == "bracket_rank_floor") bracket_rank_floor = value;
  else if (key == "involutivity_tol") involutivity_tol = value;
  else if (key == "subspace_tol") subspace_tol = value;
  else if (key == "identity_tol") identity_tol = value;
  else if (key == "drift_tol") drift_tol = value;
  else if (key == "noether_tol") noether_tol = value;
  else if (key == "spectrum_tol") spectrum_tol = value;
  else if (key == "lambda_samples") lambda_samples = static_cast<int>(value);
  else if (key == "lambda_range") lambda_range = value;
  else if (key == "j_sample_factor") j_sample_factor = static_cast<int>(value);
  else return false;
  return true;
}

json Defaults::to_json() const {
  json j;
  j["rank_tol_factor"] = rank_tol_factor;
  j["rank_boundary_band"] = rank_boundary_band;
  j["max_resamples"] = max_resamples;
  j["non_generic_quota"] = non_generic_quota;
  j["bracket_rank_floor"] = bracket_rank_floor;
  j["involutivity_tol"] = involutivity_tol;
  j["subspace_tol"] = subspace_tol;
  j["identity_tol"] = identity_tol;
  j["drift_tol"] = drift_tol;
  j["noether_tol"] = noether_tol;
  j["spectrum_tol"] = spectrum_tol;
  j["lambda_samples"] = lambda_samples;
  j["lambda_range"] = lambda_range;
  j["j_sample_factor"] = j_sample_factor;
  return j;
}

Tolerances Defaults::tolerances() const {
  Tolerances tol;
  tol.rank.tol_factor = rank_tol_factor;
  tol.rank.boundary_band = rank_boundary_band;
  tol.bracket_rank_floor = bracket_rank_floor;
  tol.involutivity_tol = involutivity_tol;
  tol.subspace_tol = subspace_tol;
  tol.max_resamples = max_resamples;
  tol.non_generic_quota = non_generic_quota;
  return tol;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig cfg;
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw validation_error("config: field 'n' (integer) is required");
  }
  cfg.n = j["n"].get<int>();
  if (cfg.n < kMinDim || cfg.n > kMaxDim) {
    throw validation_error("config: field 'n' must lie in [" + std::to_string(kMinDim) + ", " +
                           std::to_string(kMaxDim) + "]");
  }
  if (j.contains("partition")) {
    std::vector<int> parts;
    for (const auto& p : j["partition"]) parts.push_back(p.get<int>());
    cfg.partition = BlockPartition(parts);
    if (cfg.partition.n() != cfg.n) {
      throw validation_error("config: field 'partition' must sum to n = " + std::to_string(cfg.n));
    }
  } else {
    cfg.partition = BlockPartition::regular(cfg.n);
  }

  const SpectralParams fallback = default_spectral_params(cfg.partition);
  Vector alphas = fallback.alphas();
  Vector betas = fallback.betas();
  if (j.contains("alphas")) alphas = parse_vector(j["alphas"], "alphas");
  if (j.contains("betas")) betas = parse_vector(j["betas"], "betas");
  cfg.params = SpectralParams(cfg.partition, alphas, betas);  // validates distinctness

  if (j.contains("operator")) {
    if (!j["operator"].is_string()) {
      throw validation_error("config: field 'operator' must be a string kind");
    }
    cfg.operator_kind = j["operator"].get<std::string>();
  }
  if (j.contains("interior")) cfg.interior = parse_matrix(j["interior"], "interior");
  if (j.contains("metric")) cfg.metric = j["metric"];

  if (j.contains("integrator")) {
    const json& ij = j["integrator"];
    if (ij.contains("method")) {
      const std::string m = ij["method"].get<std::string>();
      if (m == "rk4") cfg.integrator.method = IntegratorMethod::RK4;
      else if (m == "implicit-midpoint") cfg.integrator.method = IntegratorMethod::ImplicitMidpoint;
      else throw validation_error("config: integrator.method must be rk4 or implicit-midpoint");
    }
    if (ij.contains("step")) cfg.integrator.step = require_number(ij, "step");
    if (ij.contains("horizon")) cfg.integrator.horizon = require_number(ij, "horizon");
    if (ij.contains("stride")) cfg.integrator.stride = ij["stride"].get<int>();
  } else {
    cfg.integrator.stride = 100;
  }
  cfg.integrator.validate();

  if (j.contains("initial")) {
    const json& init = j["initial"];
    if (init.contains("seed")) cfg.initial_seed = init["seed"].get<uint64_t>();
    if (init.contains("entries")) {
      cfg.initial_entries = parse_matrix(init["entries"], "initial.entries");
      if (cfg.initial_entries->rows() != cfg.n) {
        throw validation_error("config: initial.entries must be n x n");
      }
    }
    if (!cfg.initial_seed && !cfg.initial_entries) {
      throw validation_error("config: initial must provide 'seed' or 'entries'");
    }
  } else {
    cfg.initial_seed = 1;
  }

  if (j.contains("targets")) {
    for (const auto& t : j["targets"]) cfg.targets.push_back(t.get<std::string>());
  }
  if (j.contains("l_split")) cfg.l_split = j["l_split"].get<int>();

  if (j.contains("seeds")) {
    const json& sj = j["seeds"];
    if (sj.is_array()) {
      for (const auto& s : sj) cfg.seeds.push_back(s.get<uint64_t>());
    } else if (sj.is_object()) {
      const uint64_t base = sj.value("base", 1);
      const int count = sj.value("count", 20);
      for (int i = 0; i < count; ++i) cfg.seeds.push_back(base + static_cast<uint64_t>(i));
    } else {
      throw validation_error("config: 'seeds' must be an array or {base, count}");
    }
  } else {
    for (int i = 0; i < 20; ++i) cfg.seeds.push_back(1 + static_cast<uint64_t>(i));
  }
  if (cfg.seeds.empty()) throw validation_error("config: 'seeds' must not be empty");

  if (j.contains("tolerances")) {
    for (const auto& [key, value] : j["tolerances"].items()) {
      if (!value.is_number()) {
        throw validation_error("config: tolerances." + key + " must be a number");
      }
      if (!cfg.defaults.set(key, value.get<double>())) {
        throw validation_error("config: unknown tolerance key '" + key + "'");
      }
    }
  }
  if (j.contains("output") && j["output"].contains("dir")) {
    cfg.out_dir = j["output"]["dir"].get<std::string>();
  }
  if (j.contains("sweep")) {
    const json& sw = j["sweep"];
    if (sw.contains("cap")) cfg.sweep_cap = sw["cap"].get<int>();
    if (sw.contains("partitions")) {
      std::vector<std::vector<int>> parts;
      for (const auto& p : sw["partitions"]) {
        parts.push_back(p.get<std::vector<int>>());
      }
      cfg.sweep_partitions = parts;
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw validation_error("config: JSON parse failure: " + std::string(e.what()));
  }
  return from_json(j);
}

SectionalOperator RunConfig::build_operator() const {
  if (!operator_kind) throw validation_error("config: 'operator' kind is required here");
  const std::string& kind = *operator_kind;
  if (kind == "regular") {
    if (partition.blocks() != n) {
      throw validation_error("config: regular operator needs the regular partition (1,...,1)");
    }
    return SectionalOperator::regular(params->alphas(), params->betas());
  }
  if (kind == "singular") return SectionalOperator::singular(*params, interior);
  if (kind == "rigid-body") return SectionalOperator::rigid_body(partition, params->betas());
  throw validation_error("config: unknown operator kind '" + kind + "'");
}

MetricSpec RunConfig::build_metric() const {
  if (!metric) throw validation_error("config: 'metric' spec is required here");
  const json& mj = *metric;
  const std::string kind = mj.value("kind", "");
  if (kind == "normal") return MetricSpec::normal(partition);
  if (kind == "submersion") return MetricSpec::submersion(*params);
  if (kind == "stiefel") {
    const int h = mj.value("h_blocks", 1);
    const double kappa = mj.contains("kappa") ? require_number(mj, "kappa") : 1.0;
    if (mj.contains("interior")) {
      return MetricSpec::stiefel(partition, h, parse_matrix(mj["interior"], "metric.interior"),
                                 kappa);
    }
    const double chi = mj.contains("chi") ? require_number(mj, "chi") : 1.0;
    return MetricSpec::stiefel(partition, h, chi, kappa);
  }
  throw validation_error("config: metric.kind must be normal, submersion, or stiefel");
}

namespace {

struct FlowSetup {
  FlowField field;
  std::string description;
  Matrix m0;
  IntegralFamily monitors;
  bool gate_noether = false;
  bool gate_spectrum = true;
  Vector a_diag;
};

FlowSetup build_flow(const RunConfig& cfg) {
  const uint64_t seed = cfg.initial_seed.value_or(1);
  if (cfg.operator_kind) {
    auto op = std::make_shared<SectionalOperator>(cfg.build_operator());
    FlowSetup setup{
        [op](const Matrix& m) { return euler_field(m, *op); },
        op->describe(),
        cfg.initial_entries ? skew_part(*cfg.initial_entries) : sample_skew(seed, cfg.n),
        IntegralFamily::manakov(CarrierSpace::so_n(cfg.n), op->a_diag()),
        op->kind() == OperatorKind::RigidBody,
        true,
        op->a_diag()};
    return setup;
  }
  auto metric = std::make_shared<MetricSpec>(cfg.build_metric());
  const BlockPartition& partition = cfg.partition;
  Matrix m0;
  IntegralFamily monitors = IntegralFamily::manakov(CarrierSpace::so_n(cfg.n),
                                                    cfg.params->expand_a());
  bool gate_spectrum = true;
  switch (metric->kind()) {
    case MetricKind::Normal:
    case MetricKind::SubmersionAB:
      m0 = cfg.initial_entries
               ? project_transversal(skew_part(*cfg.initial_entries), partition)
               : sample_wedge_span(seed, WedgeBasis::transversal(partition));
      break;
    case MetricKind::Stiefel: {
      const CarrierSpace space = CarrierSpace::momentum(partition, metric->h_blocks());
      m0 = cfg.initial_entries ? space.project(skew_part(*cfg.initial_entries))
                               : space.sample(seed);
      monitors = IntegralFamily::unite(
          IntegralFamily::manakov(space, cfg.params->expand_a()),
          IntegralFamily::k_linear(partition, metric->h_blocks()));
      const MetricTable table = metric->coefficients();
      const Matrix& j_form = table.isotropy_form;
      gate_spectrum = j_form.size() == 0 ||
                      (j_form - j_form(0, 0) * Matrix::Identity(j_form.rows(), j_form.cols()))
                              .norm() < 1e-12;
      break;
    }
  }
  FlowSetup setup{[metric](const Matrix& m) { return metric_flow_field(m, *metric); },
                  metric->describe(),
                  m0,
                  std::move(monitors),
                  false,
                  gate_spectrum,
                  cfg.params->expand_a()};
  return setup;
}

double relative_drift(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1.0);
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
  try {
    const FlowSetup setup = build_flow(cfg);
    const Trajectory traj = integrate(setup.field, SkewMatrix(setup.m0), cfg.integrator);

    json report;
    report["defaults"] = cfg.defaults.to_json();
    report["flow"] = setup.description;
    report["integrator"] = {{"method", cfg.integrator.method_name()},
                            {"step", cfg.integrator.step},
                            {"horizon", cfg.integrator.horizon},
                            {"stride", cfg.integrator.stride}};
    if (cfg.initial_seed) report["seed"] = *cfg.initial_seed;

    double worst = 0.0;
    json drifts;
    std::vector<double> initial(setup.monitors.size());
    for (int i = 0; i < setup.monitors.size(); ++i) {
      initial[i] = setup.monitors.member(i).value(traj.states.front().mat());
    }
    std::vector<double> drift(setup.monitors.size(), 0.0);
    for (const auto& state : traj.states) {
      for (int i = 0; i < setup.monitors.size(); ++i) {
        drift[i] = std::max(drift[i],
                            relative_drift(setup.monitors.member(i).value(state.mat()),
                                           initial[i]));
      }
    }
    for (int i = 0; i < setup.monitors.size(); ++i) {
      drifts[setup.monitors.member(i).tag()] = drift[i];
      worst = std::max(worst, drift[i]);
    }
    double energy_drift = 0.0;
    {
      // Hamiltonian via the builder (operator or metric).
      std::function<double(const Matrix&)> energy;
      if (cfg.operator_kind) {
        auto op = std::make_shared<SectionalOperator>(cfg.build_operator());
        energy = [op](const Matrix& m) { return op->hamiltonian(m); };
      } else {
        auto metric = std::make_shared<MetricSpec>(cfg.build_metric());
        energy = [metric](const Matrix& m) { return metric->hamiltonian(m); };
      }
      const double e0 = energy(traj.states.front().mat());
      for (const auto& state : traj.states) {
        energy_drift = std::max(energy_drift, relative_drift(energy(state.mat()), e0));
      }
    }
    drifts["energy"] = energy_drift;
    worst = std::max(worst, energy_drift);
    report["drifts"] = drifts;

    const std::vector<double> lambdas =
        seeded_lambdas(cfg.defaults.lambda_samples, cfg.defaults.lambda_range, 0x5EED);
    json spectrum;
    double spectrum_worst = 0.0;
    for (double lambda : lambdas) {
      const auto initial_spec = lax_spectrum(traj.states.front().mat(), setup.a_diag, lambda);
      double worst_disp = 0.0;
      for (const auto& state : traj.states) {
        worst_disp = std::max(
            worst_disp, spectrum_displacement(lax_spectrum(state.mat(), setup.a_diag, lambda),
                                              initial_spec));
      }
      std::ostringstream key;
      key << "lambda=" << lambda;
      spectrum[key.str()] = worst_disp;
      spectrum_worst = std::max(spectrum_worst, worst_disp);
    }
    report["spectrum_drift"] = spectrum;

    bool pass = worst <= cfg.defaults.drift_tol;
    if (setup.gate_spectrum) pass = pass && spectrum_worst <= cfg.defaults.spectrum_tol;
    if (setup.gate_noether) {
      const double noether = noether_drift(traj, cfg.partition);
      report["noether_drift"] = noether;
      pass = pass && noether <= cfg.defaults.noether_tol;
    }
    report["max_drift"] = worst;
    report["max_spectrum_drift"] = spectrum_worst;
    report["pass"] = pass;

    std::filesystem::create_directories(cfg.out_dir);
    {
      std::ofstream csv(cfg.out_dir + "/trajectory.csv");
      if (!csv) throw std::ios_base::failure("cannot write trajectory.csv");
      write_trajectory_csv(csv, traj);
    }
    {
      std::ofstream out(cfg.out_dir + "/simulate_report.json");
      if (!out) throw std::ios_base::failure("cannot write simulate_report.json");
      out << report.dump(2) << "\n";
    }
    return pass ? kExitPass : kExitVerificationFail;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}

namespace {

json run_verify_target(const std::string& target, const RunConfig& cfg, bool& pass);

json verdict_json(const CompletenessVerdict& verdict, bool& pass) {
  pass = verdict.pass;
  return verdict.to_json();
}

json run_involution(const RunConfig& cfg, bool& pass) {
  const Vector a_diag = cfg.params->expand_a();
  const IntegralFamily lax = IntegralFamily::manakov(CarrierSpace::so_n(cfg.n), a_diag);
  const IntegralFamily noether = IntegralFamily::noether(cfg.partition);
  const CarrierSpace v_space = CarrierSpace::transversal(cfg.partition);
  const IntegralFamily lax_v = IntegralFamily::manakov(v_space, a_diag);
  double worst = 0.0;
  for (uint64_t seed : cfg.seeds) {
    const Matrix m = sample_skew(seed, cfg.n);
    worst = std::max(worst, max_normalized_pairwise(lax, m, BracketKind::lie_poisson()));
    worst = std::max(worst, max_normalized_cross(lax, noether, m, BracketKind::lie_poisson()));
    const Matrix mv = v_space.sample(seed);
    const BracketKind reduced = BracketKind::reduced(j_space(mv, cfg.partition));
    worst = std::max(worst, max_normalized_pairwise(lax_v, mv, reduced));
  }
  pass = worst <= cfg.defaults.involutivity_tol;
  json j;
  j["max_normalized_bracket"] = worst;
  j["tolerance"] = cfg.defaults.involutivity_tol;
  j["verdict"] = pass ? "PASS" : "FAIL";
  return j;
}

json run_cross_commute(const RunConfig& cfg, bool& pass) {
  double worst = 0.0;
  for (uint64_t seed : cfg.seeds) {
    const Matrix m = sample_skew(seed, cfg.n);
    worst = std::max(
        worst,
        cross_commutation_check(m, *cfg.params, cfg.defaults.involutivity_tol).max_normalized);
  }
  pass = worst <= cfg.defaults.involutivity_tol;
  json j;
  j["max_normalized_bracket"] = worst;
  j["tolerance"] = cfg.defaults.involutivity_tol;
  j["verdict"] = pass ? "PASS" : "FAIL";
  return j;
}

json run_det_identity(const RunConfig& cfg, bool& pass) {
  double worst = 0.0;
  const Vector a_diag = cfg.params->expand_a();
  for (uint64_t seed : cfg.seeds) {
    const Matrix m = sample_skew(seed, cfg.n);
    std::mt19937_64 rng(derive_seed(seed, 77));
    const double alpha = 0.5 + static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    const double beta =
        -1.0 + 2.0 * static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    const IdentityResidual r = det_identity(m, a_diag, alpha, beta);
    worst = std::max(worst, r.residual / r.scale);
  }
  pass = worst <= cfg.defaults.identity_tol;
  json j;
  j["max_scaled_residual"] = worst;
  j["tolerance"] = cfg.defaults.identity_tol;
  j["verdict"] = pass ? "PASS" : "FAIL";
  return j;
}

json run_lax(const RunConfig& cfg, bool& pass) {
  double worst = 0.0;
  const SectionalOperator op =
      cfg.operator_kind ? cfg.build_operator() : SectionalOperator::singular(*cfg.params);
  const std::vector<double> lambdas =
      seeded_lambdas(cfg.defaults.lambda_samples, cfg.defaults.lambda_range, 0x5EED);
  for (uint64_t seed : cfg.seeds) {
    const Matrix m = sample_skew(seed, cfg.n);
    const Matrix omega = op.apply(m);
    {
      const double scale = std::max(
          1.0, commutator(m, Matrix(op.b_diag().asDiagonal())).norm() +
                   commutator(omega, Matrix(op.a_diag().asDiagonal())).norm());
      worst = std::max(worst,
                       check_manakov_condition(m, omega, op.a_diag(), op.b_diag()) / scale);
    }
    for (double lambda : lambdas) {
      const Matrix lax_lhs = euler_field(m, op);
      const Matrix a = op.a_diag().asDiagonal();
      const Matrix b = op.b_diag().asDiagonal();
      const double scale =
          std::max(1.0, lax_lhs.norm() + commutator(m + lambda * a, omega + lambda * b).norm());
      worst = std::max(worst, lax_residual(m, op, lambda) / scale);
    }
    if (op.kind() == OperatorKind::Singular) {
      const Matrix split = singular_flow_field(m, op);
      const Matrix euler = euler_field(m, op);
      const double scale = std::max(1.0, split.norm() + euler.norm());
      worst = std::max(worst, (split - euler).norm() / scale);
    }
    std::mt19937_64 rng(derive_seed(seed, 99));
    const double lambda =
        -2.0 + 4.0 * static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    const int k = 2 + static_cast<int>(rng() % static_cast<uint64_t>(cfg.n - 1));
    const IdentityResidual rr = restriction_identity(m, op.a_diag(), lambda, k);
    worst = std::max(worst, rr.residual / rr.scale);
  }
  pass = worst <= cfg.defaults.identity_tol;
  json j;
  j["max_scaled_residual"] = worst;
  j["tolerance"] = cfg.defaults.identity_tol;
  j["verdict"] = pass ? "PASS" : "FAIL";
  return j;
}

json run_reduction(const RunConfig& cfg, bool& pass) {
  json j;
  const Tolerances tol = cfg.defaults.tolerances();
  const int k_r = cfg.partition.parts().back();
  const int l = k_r - (cfg.n + 1) / 2;
  if (cfg.partition.blocks() < 2 || l <= 0) {
    pass = true;
    j["verdict"] = "NOT-APPLICABLE";
    return j;
  }
  int passed = 0;
  double worst_zero = 0.0, worst_dist = 0.0;
  for (uint64_t seed : cfg.seeds) {
    const Matrix m = sample_wedge_span(seed, WedgeBasis::transversal(cfg.partition));
    const ReductionResult red = normal_form_reduce(m, cfg.partition);
    const bool zero_ok = red.zero_residual <= 1e-12 * std::max(1.0, m.norm());
    const ReductionEqualityResult eq = verify_reduction_equality(red.m_prime, cfg.partition, tol);
    worst_zero = std::max(worst_zero, red.zero_residual);
    worst_dist = std::max(worst_dist, eq.distance);
    if (zero_ok && eq.applicable && eq.equal) ++passed;
  }
  pass = passed == static_cast<int>(cfg.seeds.size());
  j["points_passed"] = passed;
  j["points_used"] = cfg.seeds.size();
  j["max_zero_residual"] = worst_zero;
  j["max_subspace_distance"] = worst_dist;
  j["verdict"] = pass ? "PASS" : "FAIL";
  return j;
}

json run_verify_target(const std::string& target, const RunConfig& cfg, bool& pass) {
  const Tolerances tol = cfg.defaults.tolerances();
  if (target == "theorem1") return verdict_json(verify_theorem1(cfg.partition, cfg.seeds, tol), pass);
  if (target == "theorem3") return verdict_json(verify_theorem3(cfg.partition, cfg.seeds, tol), pass);
  if (target == "theorem4") {
    return verdict_json(verify_theorem4(cfg.partition, cfg.l_split, cfg.seeds, tol), pass);
  }
  if (target == "lemma1") return verdict_json(verify_lemma1(cfg.n, cfg.seeds, tol), pass);
  if (target == "involution") return run_involution(cfg, pass);
  if (target == "cross-commute") return run_cross_commute(cfg, pass);
  if (target == "det-identity") return run_det_identity(cfg, pass);
  if (target == "lax") return run_lax(cfg, pass);
  if (target == "reduction") return run_reduction(cfg, pass);
  throw validation_error("verify: unknown target '" + target + "'");
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
  try {
    if (cfg.targets.empty()) {
      throw validation_error("verify: config must list at least one target");
    }
    json report;
    report["defaults"] = cfg.defaults.to_json();
    report["n"] = cfg.n;
    report["partition"] = cfg.partition.to_string();
    bool all_pass = true;
    for (const std::string& target : cfg.targets) {
      bool pass = false;
      report["targets"][target] = run_verify_target(target, cfg, pass);
      all_pass = all_pass && pass;
    }
    report["pass"] = all_pass;
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir + "/verify_report.json");
    if (!out) throw std::ios_base::failure("cannot write verify_report.json");
    out << report.dump(2) << "\n";
    return all_pass ? kExitPass : kExitVerificationFail;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}

int cmd_sweep(const RunConfig& cfg, int jobs) {
  try {
    if (cfg.n > cfg.sweep_cap) {
      throw validation_error("sweep: n exceeds cap " + std::to_string(cfg.sweep_cap));
    }
    std::vector<std::vector<int>> partitions;
    if (cfg.sweep_partitions) {
      partitions = *cfg.sweep_partitions;
      if (partitions.empty()) throw validation_error("sweep: empty partition list");
    } else {
      partitions = partitions_of(cfg.n);
    }
    std::vector<std::string> targets = cfg.targets;
    if (targets.empty()) targets = {"theorem3"};
    for (const auto& t : targets) {
      if (t != "theorem1" && t != "theorem3" && t != "theorem4") {
        throw validation_error("sweep: target '" + t + "' not sweepable");
      }
    }

    struct Row {
      std::string partition;
      std::string target;
      CompletenessVerdict verdict;
    };
    std::vector<Row> rows(partitions.size() * targets.size());
    const Tolerances tol = cfg.defaults.tolerances();
    parallel_for(static_cast<int>(rows.size()), jobs, [&](int idx) {
      const auto& parts = partitions[idx / targets.size()];
      const std::string& target = targets[idx % targets.size()];
      const BlockPartition partition(parts);
      Row row;
      row.partition = partition.to_string();
      row.target = target;
      if (target == "theorem1") {
        row.verdict = verify_theorem1(partition, cfg.seeds, tol);
      } else if (target == "theorem3") {
        row.verdict = verify_theorem3(partition, cfg.seeds, tol);
      } else {
        row.verdict = verify_theorem4(partition, cfg.l_split, cfg.seeds, tol);
      }
      rows[idx] = std::move(row);
    });

    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream csv(cfg.out_dir + "/sweep.csv");
    if (!csv) throw std::ios_base::failure("cannot write sweep.csv");
    csv << "n,partition,target,verdict,points_passed,points_used,measured,targets\n";
    bool all_pass = true;
    for (const auto& row : rows) {
      all_pass = all_pass && row.verdict.pass;
      std::string measured, target_values;
      for (const auto& p : row.verdict.per_point) {
        if (p.generic) {
          std::ostringstream ms, ts;
          for (const auto& [k, v] : p.measured) ms << k << "=" << v << " ";
          for (const auto& [k, v] : p.targets) ts << k << "=" << v << " ";
          measured = ms.str();
          target_values = ts.str();
          break;
        }
      }
      csv << cfg.n << ",\"" << row.partition << "\"," << row.target << ","
          << (row.verdict.pass ? "PASS" : "FAIL") << "," << row.verdict.points_passed << ","
          << row.verdict.points_used << ",\"" << measured << "\",\"" << target_values << "\"\n";
    }
    return all_pass ? kExitPass : kExitVerificationFail;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace manakov
