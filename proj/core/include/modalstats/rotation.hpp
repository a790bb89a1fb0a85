#pragma once

#include <Eigen/Dense>
#include <vector>

#include "modalstats/tensor4.hpp"

namespace modalstats {

/// In-plane rotation grid over [0, 180) degrees; normal and shear statistics
/// have period 180 degrees.
struct RotationSweep {
  double delta_deg = 2.0;

  void validate() const;
  std::vector<double> angles_deg() const;
};

/// Plane-stress Voigt rotation matrix for components [sx, sy, txy]:
/// rows are (c^2, s^2, 2cs), (s^2, c^2, -2cs), (-cs, cs, c^2 - s^2).
Eigen::Matrix3d plane_stress_rotation(double alpha_deg);

/// T(alpha) * cov * T(alpha)^T. Requires a symmetric 3x3 input
/// (plane stress); other dimensions raise unsupported_dimension_error.
Eigen::MatrixXd rotate_cov(const Eigen::MatrixXd& cov, double alpha_deg);

/// Contraction of the rank-4 tensor with T(alpha) on all four indices
/// (same kernel as mode-shape scaling).
MomentTensor4 rotate_m4(const MomentTensor4& m4, double alpha_deg);

// Exact rotation invariants of plane-stress statistics, used as sweep checks.
// The stress tensor trace sx + sy is pointwise invariant, hence so is its
// variance; the Frobenius norm invariance gives the Mandel-weighted traces
// (shear carries weight 2).
double normal_trace_variance(const Eigen::MatrixXd& cov);                  // Var(sx + sy)
double tensor_trace_variance(const Eigen::MatrixXd& cov);                  // Var diag, Mandel
double contracted_m4_invariant(const MomentTensor4& m4);                   // sum_aabb, Mandel

/// Extremum of one statistic over the sweep: maxima of the normal (sx) and
/// shear (txy) components with their angles; ties resolve to the smallest
/// angle.
struct StatExtremum {
  double normal_max = 0.0;
  double normal_angle_deg = 0.0;
  double shear_max = 0.0;
  double shear_angle_deg = 0.0;
  bool defined = true;
};

struct CriticalPlaneSummary {
  StatExtremum mu2;
  StatExtremum mu4;
  StatExtremum mu4_stat;
  StatExtremum c4;
  StatExtremum beta;            // mu4 / mu2^2 per component
  int excluded_beta_angles = 0; // angles where a zero variance left beta undefined
};

/// Sweeps the rotation grid and records per-statistic maxima of the normal
/// and shear components. Only the swept diagonals are evaluated per angle;
/// the result matches a full tensor rotation followed by reading the
/// component diagonals.
CriticalPlaneSummary critical_plane(const Eigen::MatrixXd& cov, const MomentTensor4& m4,
                                    const RotationSweep& sweep);

}  // namespace modalstats
