#include "modalstats/rotation.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "modalstats/errors.hpp"

namespace modalstats {

void RotationSweep::validate() const {
  if (!(delta_deg > 0.0) || delta_deg > 180.0)
    throw invalid_input_error("rotation_sweep: delta must be in (0, 180]");
  const double steps = 180.0 / delta_deg;
  if (std::abs(steps - std::round(steps)) > 1e-9)
    throw invalid_input_error("rotation_sweep: 180 must be divisible by delta");
}

std::vector<double> RotationSweep::angles_deg() const {
  validate();
  const int n = static_cast<int>(std::llround(180.0 / delta_deg));
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) angles[static_cast<std::size_t>(i)] = delta_deg * i;
  return angles;
}

Eigen::Matrix3d plane_stress_rotation(double alpha_deg) {
  const double a = alpha_deg * std::numbers::pi / 180.0;
  const double c = std::cos(a);
  const double s = std::sin(a);
  Eigen::Matrix3d T;
  T << c * c, s * s, 2.0 * c * s,
       s * s, c * c, -2.0 * c * s,
       -c * s, c * s, c * c - s * s;
  return T;
}

namespace {

void require_plane_stress(Eigen::Index dim) {
  if (dim != 3)
    throw unsupported_dimension_error("rotation: only plane stress (3 components) is supported");
}

}  // namespace

Eigen::MatrixXd rotate_cov(const Eigen::MatrixXd& cov, double alpha_deg) {
  require_plane_stress(cov.rows());
  if (cov.cols() != 3) throw invalid_input_error("rotate_cov: covariance must be square");
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, cov.cwiseAbs().maxCoeff()))
    throw invalid_input_error("rotate_cov: covariance must be symmetric");
  const Eigen::Matrix3d T = plane_stress_rotation(alpha_deg);
  return T * cov * T.transpose();
}

MomentTensor4 rotate_m4(const MomentTensor4& m4, double alpha_deg) {
  require_plane_stress(m4.dim());
  return contract_all_indices(m4, plane_stress_rotation(alpha_deg));
}

double normal_trace_variance(const Eigen::MatrixXd& cov) {
  require_plane_stress(cov.rows());
  return cov(0, 0) + cov(1, 1) + 2.0 * cov(0, 1);
}

double tensor_trace_variance(const Eigen::MatrixXd& cov) {
  require_plane_stress(cov.rows());
  return cov(0, 0) + cov(1, 1) + 2.0 * cov(2, 2);
}

double contracted_m4_invariant(const MomentTensor4& m4) {
  require_plane_stress(m4.dim());
  const double w[3] = {1.0, 1.0, 2.0};  // squared Mandel weights
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += w[a] * w[b] * m4(a, a, b, b);
  return s;
}

CriticalPlaneSummary critical_plane(const Eigen::MatrixXd& cov, const MomentTensor4& m4,
                                    const RotationSweep& sweep) {
  require_plane_stress(cov.rows());
  require_plane_stress(m4.dim());

  CriticalPlaneSummary out;
  const auto angles = sweep.angles_deg();

  auto update = [](StatExtremum& e, bool& started, double normal, double shear, double angle) {
    if (!started) {
      e.normal_max = normal;
      e.normal_angle_deg = angle;
      e.shear_max = shear;
      e.shear_angle_deg = angle;
      started = true;
      return;
    }
    if (normal > e.normal_max) {
      e.normal_max = normal;
      e.normal_angle_deg = angle;
    }
    if (shear > e.shear_max) {
      e.shear_max = shear;
      e.shear_angle_deg = angle;
    }
  };

  bool s2 = false, s4 = false, s4stat = false, sc4 = false, sbeta = false;
  for (double angle : angles) {
    const Eigen::Matrix3d T = plane_stress_rotation(angle);
    const Eigen::Vector3d rn = T.row(0);
    const Eigen::Vector3d rs = T.row(2);
    const double v2n = rn.dot(cov * rn);
    const double v2s = rs.dot(cov * rs);
    const double v4n = quartic_form(m4, rn);
    const double v4s = quartic_form(m4, rs);
    const double statn = 3.0 * v2n * v2n;
    const double stats = 3.0 * v2s * v2s;

    update(out.mu2, s2, v2n, v2s, angle);
    update(out.mu4, s4, v4n, v4s, angle);
    update(out.mu4_stat, s4stat, statn, stats, angle);
    update(out.c4, sc4, v4n - statn, v4s - stats, angle);
    if (v2n > 0.0 && v2s > 0.0) {
      update(out.beta, sbeta, v4n / (v2n * v2n), v4s / (v2s * v2s), angle);
    } else {
      ++out.excluded_beta_angles;
    }
  }
  out.beta.defined = sbeta;
  return out;
}

}  // namespace modalstats
