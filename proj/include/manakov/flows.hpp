#pragma once

#include "manakov/liealg.hpp"
#include "manakov/sectional.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace manakov {

enum class IntegratorMethod { RK4, ImplicitMidpoint };

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::RK4;
  double step = 1e-3;
  double horizon = 100.0;
  int stride = 1;

  void validate() const;
  std::string method_name() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SkewMatrix> states;
  std::string operator_desc;
  std::string integrator;
  double step = 0.0;
  uint64_t seed = 0;
};

using FlowField = std::function<Matrix(const Matrix&)>;

Matrix euler_field(const Matrix& m, const SectionalOperator& op);  // [M, A(M)]
/// The split system assembled as one field: the isotropy equation decouples
/// and the transversal one collects the three cross terms; agrees with
/// euler_field to rounding on singular operators.
Matrix singular_flow_field(const Matrix& m, const SectionalOperator& op);
/// Coordinate form of the free rigid body: dM_ij = sum_k (b_i - b_j) /
/// ((b_k + b_i)(b_k + b_j)) M_ik M_kj.
Matrix rigid_body_field(const Matrix& m, const SpectralParams& params);
Matrix metric_flow_field(const Matrix& m, const MetricSpec& metric);  // [M, cometric(M)]

Trajectory integrate(const FlowField& field, const SkewMatrix& m0, const IntegratorConfig& cfg);

/// || d/dt (M + lambda A) - [M + lambda A, Omega + lambda B] ||_F along the
/// Euler field of op.
double lax_residual(const Matrix& m, const SectionalOperator& op, double lambda);

/// Eigenvalues of M + lambda A as (re, im) pairs, sorted lexicographically.
std::vector<std::pair<double, double>> lax_spectrum(const Matrix& m, const Vector& a_diag,
                                                    double lambda);
/// Max displacement of the sorted spectrum between two points, relative to
/// max(1, |eigenvalue|).
double spectrum_displacement(const std::vector<std::pair<double, double>>& a,
                             const std::vector<std::pair<double, double>>& b);

/// max_t || M_iso(t) - M_iso(0) ||_F over the recorded states.
double noether_drift(const Trajectory& traj, const BlockPartition& partition);

/// CSV rows: time, then the upper-triangle entries in (i, j) lexicographic
/// order, one row per recorded state.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace manakov
