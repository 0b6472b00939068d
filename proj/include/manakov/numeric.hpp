#pragma once

#include "manakov/liealg.hpp"

namespace manakov {

/// SVD rank threshold: tau = max(max_dim * eps * sigma_max * tol_factor,
/// abs_floor). A decision is "stable" when no singular value falls inside
/// (tau / boundary_band, tau * boundary_band), i.e. it survives scaling the
/// tolerance by the band in either direction.
struct RankPolicy {
  double tol_factor = 1e4;
  double boundary_band = 10.0;
  double abs_floor = 0.0;
};

struct RankResult {
  int rank = 0;
  bool stable = true;
  double threshold = 0.0;
  double sigma_max = 0.0;
  std::vector<double> singulars;
};

RankResult numerical_rank(const Matrix& a, const RankPolicy& policy = {});

/// Orthonormal basis (columns) of the nullspace of a.
Matrix nullspace(const Matrix& a, const RankPolicy& policy = {});

/// Orthonormal basis (columns) of the column span of a.
Matrix orthonormal_span(const Matrix& a, const RankPolicy& policy = {});

/// Largest principal-angle sine of span(u) against span(w); 0 when u is
/// contained in w. Both inputs must have orthonormal columns.
double containment_residual(const Matrix& u, const Matrix& w);

/// max of the two containment residuals (a symmetric subspace distance).
double subspace_distance(const Matrix& u, const Matrix& w);

/// Horizontal concatenation helper for basis matrices (either side may have
/// zero columns).
Matrix hcat(const Matrix& a, const Matrix& b);

}  // namespace manakov
