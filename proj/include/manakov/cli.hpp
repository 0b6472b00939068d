#pragma once

#include "manakov/completeness.hpp"
#include "manakov/flows.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace manakov {

// Exit codes shared by every subcommand.
constexpr int kExitPass = 0;
constexpr int kExitVerificationFail = 1;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;

/// Every tunable default in one place; reports embed the effective values.
struct Defaults {
  double rank_tol_factor = 1e4;
  double rank_boundary_band = 10.0;
  int max_resamples = 3;
  double non_generic_quota = 0.95;
  double bracket_rank_floor = 1e-7;
  double involutivity_tol = 1e-9;
  double subspace_tol = 1e-8;
  double identity_tol = 1e-10;
  double drift_tol = 1e-6;
  double noether_tol = 1e-8;
  double spectrum_tol = 1e-6;
  int lambda_samples = 5;
  double lambda_range = 2.0;
  int j_sample_factor = 2;  // Bolsinov family gets factor * n lambda values

  bool set(const std::string& key, double value);
  nlohmann::json to_json() const;
  Tolerances tolerances() const;
};

struct RunConfig {
  int n = 0;
  BlockPartition partition{std::vector<int>{2}};
  std::optional<SpectralParams> params;
  std::optional<std::string> operator_kind;  // regular | singular | rigid-body
  Matrix interior;                           // optional, singular kind
  std::optional<nlohmann::json> metric;      // raw metric spec
  IntegratorConfig integrator;
  std::optional<uint64_t> initial_seed;
  std::optional<Matrix> initial_entries;
  std::vector<std::string> targets;
  int l_split = 1;
  std::vector<uint64_t> seeds;
  Defaults defaults;
  std::string out_dir = "out";
  // sweep controls
  int sweep_cap = 8;
  std::optional<std::vector<std::vector<int>>> sweep_partitions;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);

  SectionalOperator build_operator() const;
  MetricSpec build_metric() const;
};

int cmd_simulate(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_sweep(const RunConfig& config, int jobs);

}  // namespace manakov
