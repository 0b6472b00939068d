#include "manakov/flows.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace manakov {

void IntegratorConfig::validate() const {
  if (step <= 0.0) throw validation_error("integrator: step must be positive");
  if (horizon <= 0.0) throw validation_error("integrator: horizon must be positive");
  if (step > horizon) throw validation_error("integrator: step exceeds horizon");
  if (stride < 1) throw validation_error("integrator: stride must be >= 1");
}

std::string IntegratorConfig::method_name() const {
  return method == IntegratorMethod::RK4 ? "rk4" : "implicit-midpoint";
}

Matrix euler_field(const Matrix& m, const SectionalOperator& op) {
  return commutator(m, op.apply(m));
}

Matrix singular_flow_field(const Matrix& m, const SectionalOperator& op) {
  if (op.kind() != OperatorKind::Singular) {
    throw validation_error("singular_flow_field: operator kind must be singular");
  }
  const BlockPartition& partition = op.params().partition();
  const BlockSplit split = project_split(m, partition);
  const Vector a = op.a_diag(), b = op.b_diag();
  const int n = partition.n();
  Matrix omega_v = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || partition.same_block(i, j)) continue;
      omega_v(i, j) = (b(i) - b(j)) / (a(i) - a(j)) * split.trans(i, j);
    }
  const WedgeBasis iso_basis = WedgeBasis::isotropy(partition);
  Matrix b_iso = Matrix::Zero(n, n);
  if (iso_basis.size() > 0) {
    b_iso = iso_basis.matrix(op.interior() * iso_basis.coords(split.iso));
  }
  // Isotropy equation decouples; the transversal self-interaction stays in v
  // (its isotropy projection vanishes for block-scalar coefficients).
  const Matrix iso_dot = commutator(split.iso, b_iso);
  const Matrix trans_dot =
      commutator(split.iso, omega_v) + commutator(split.trans, b_iso) +
      commutator(split.trans, omega_v);
  return iso_dot + trans_dot;
}

Matrix rigid_body_field(const Matrix& m, const SpectralParams& params) {
  const Vector b = params.expand_b();
  const int n = static_cast<int>(b.size());
  if (m.rows() != n || m.cols() != n) throw shape_error("rigid_body_field: size mismatch");
  Matrix dot = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        sum += (b(i) - b(j)) / ((b(k) + b(i)) * (b(k) + b(j))) * m(i, k) * m(k, j);
      }
      dot(i, j) = sum;
    }
  return dot;
}

Matrix metric_flow_field(const Matrix& m, const MetricSpec& metric) {
  return commutator(m, metric.cometric_apply(m));
}

Trajectory integrate(const FlowField& field, const SkewMatrix& m0, const IntegratorConfig& cfg) {
  cfg.validate();
  const long long steps = std::max<long long>(1, std::llround(cfg.horizon / cfg.step));
  const double h = cfg.step;
  Trajectory traj;
  traj.integrator = cfg.method_name();
  traj.step = h;
  Matrix m = m0.mat();
  traj.times.push_back(0.0);
  traj.states.push_back(SkewMatrix(m));
  for (long long k = 0; k < steps; ++k) {
    if (cfg.method == IntegratorMethod::RK4) {
      const Matrix k1 = field(m);
      const Matrix k2 = field(m + 0.5 * h * k1);
      const Matrix k3 = field(m + 0.5 * h * k2);
      const Matrix k4 = field(m + h * k3);
      m += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
    } else {
      // Fixed-point solve of K = f(M + h/2 K).
      Matrix stage = field(m);
      bool converged = false;
      for (int it = 0; it < 50; ++it) {
        const Matrix next = field(m + 0.5 * h * stage);
        const double delta = (next - stage).norm();
        stage = next;
        if (delta <= 1e-13 * std::max(1.0, stage.norm())) {
          converged = true;
          break;
        }
      }
      if (!converged) {
        throw numerical_error("implicit midpoint failed to converge at step " +
                              std::to_string(k));
      }
      m += h * stage;
    }
    m = skew_part(m);
    if ((k + 1) % cfg.stride == 0 || k + 1 == steps) {
      traj.times.push_back(static_cast<double>(k + 1) * h);
      traj.states.push_back(SkewMatrix(m));
    }
  }
  return traj;
}

double lax_residual(const Matrix& m, const SectionalOperator& op, double lambda) {
  const Matrix a = op.a_diag().asDiagonal();
  const Matrix b = op.b_diag().asDiagonal();
  const Matrix omega = op.apply(m);
  const Matrix lhs = euler_field(m, op);  // d/dt (M + lambda A)
  const Matrix rhs = commutator(m + lambda * a, omega + lambda * b);
  return (lhs - rhs).norm();
}

std::vector<std::pair<double, double>> lax_spectrum(const Matrix& m, const Vector& a_diag,
                                                    double lambda) {
  const Matrix a = a_diag.asDiagonal();
  Eigen::EigenSolver<Matrix> eig(m + lambda * a, false);
  if (eig.info() != Eigen::Success) {
    throw numerical_error("lax_spectrum: eigenvalue solver failed");
  }
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    out.emplace_back(eig.eigenvalues()(i).real(), eig.eigenvalues()(i).imag());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double spectrum_displacement(const std::vector<std::pair<double, double>>& a,
                             const std::vector<std::pair<double, double>>& b) {
  if (a.size() != b.size()) throw shape_error("spectrum_displacement: size mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double dr = a[i].first - b[i].first;
    const double di = a[i].second - b[i].second;
    const double mag = std::hypot(a[i].first, a[i].second);
    worst = std::max(worst, std::hypot(dr, di) / std::max(1.0, mag));
  }
  return worst;
}

double noether_drift(const Trajectory& traj, const BlockPartition& partition) {
  if (traj.states.empty()) return 0.0;
  const Matrix iso0 = project_isotropy(traj.states.front().mat(), partition);
  double worst = 0.0;
  for (const auto& state : traj.states) {
    worst = std::max(worst, (project_isotropy(state.mat(), partition) - iso0).norm());
  }
  return worst;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const int n = traj.states.front().dim();
  os << "time";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) os << ",m_" << (i + 1) << "_" << (j + 1);
  os << "\n";
  os.precision(17);
  for (size_t t = 0; t < traj.states.size(); ++t) {
    os << traj.times[t];
    const Matrix& m = traj.states[t].mat();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) os << "," << m(i, j);
    os << "\n";
  }
}

}  // namespace manakov
