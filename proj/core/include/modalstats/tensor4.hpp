#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace modalstats {

/// Dense fully symmetric rank-4 central-moment tensor over U variables.
///
/// Storage is the full U^4 array in row-major index order; symmetry is kept
/// exact by construction (estimators and contractions write one value per
/// sorted index quadruple and broadcast it to all permutations).
class MomentTensor4 {
public:
  MomentTensor4() = default;
  explicit MomentTensor4(int U) : U_(U), v_(static_cast<std::size_t>(U) * U * U * U, 0.0) {}

  int dim() const { return U_; }
  std::size_t size() const { return v_.size(); }

  double operator()(int i, int j, int k, int l) const { return v_[flat(i, j, k, l)]; }
  double& operator()(int i, int j, int k, int l) { return v_[flat(i, j, k, l)]; }

  const std::vector<double>& raw() const { return v_; }
  std::vector<double>& raw() { return v_; }

  /// Largest |T(p) - T(canonical(p))| over all index permutations.
  double max_asymmetry() const;

  /// Copies the value at each sorted quadruple onto all its permutations.
  void symmetrize_from_canonical();

  double frobenius_norm() const;

  MomentTensor4 operator-(const MomentTensor4& other) const;
  MomentTensor4 operator+(const MomentTensor4& other) const;

private:
  std::size_t flat(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * U_ + j) * U_ + k) * U_ + l;
  }

  int U_ = 0;
  std::vector<double> v_;
};

/// Rank-2 Voigt projection of a symmetric rank-4 tensor.
///
/// Slot order follows the rows of the upper triangle: the U diagonal pairs
/// (1,1)..(U,U) first, then (1,2)..(1,U),(2,3)..,(U-1,U). Note this ordering
/// deviates from the mechanics convention that walks the off-diagonals
/// bottom-up; index_map is the authoritative slot -> pair mapping.
struct VoigtTensor4 {
  Eigen::MatrixXd M;                          // (U+Q) x (U+Q), Q = U(U-1)/2
  std::vector<std::pair<int, int>> index_map; // slot -> (u1, u2), u1 <= u2
  int U = 0;
  bool normalized = false;
};

/// Voigt slot order for U variables: diagonal pairs, then upper-triangle rows.
std::vector<std::pair<int, int>> voigt_index_map(int U);

/// Projects a symmetric rank-4 tensor to its unnormalized Voigt matrix,
/// M[a,b] = T(pair(a), pair(b)). Throws invalid_input_error when the input
/// is not permutation symmetric.
VoigtTensor4 voigt_project(const MomentTensor4& T);

/// Applies the norm-preserving prefactors: mixed diagonal/off-diagonal blocks
/// by sqrt(2), the off-diagonal/off-diagonal block by 2. Throws
/// invalid_state_error when already normalized.
VoigtTensor4 voigt_normalize(const VoigtTensor4& V);

/// Rebuilds the full symmetric tensor from an unnormalized Voigt matrix.
MomentTensor4 voigt_reconstruct(const VoigtTensor4& V);

/// Fourth-order moment tensor of a stationary Gaussian process with
/// covariance sigma: the three-pairing covariance-product sum.
MomentTensor4 isserlis_stationary(const Eigen::MatrixXd& sigma);

/// Fourth-order cumulant c4 = mu4 - isserlis_stationary(sigma), elementwise.
MomentTensor4 cumulant4(const MomentTensor4& mu4, const Eigen::MatrixXd& sigma);

/// Elementwise kurtosis tensor mu4 / mu4_stat with explicit 0/0 bookkeeping.
struct KurtosisTensor4 {
  int U = 0;
  std::vector<double> values;    // flat U^4, row-major; meaningless where !defined
  std::vector<std::uint8_t> defined;

  double value(int i, int j, int k, int l) const;
  bool is_defined(int i, int j, int k, int l) const;
};

/// Elementwise mu4 / mu4_stat. Exact-zero denominator with nonzero numerator
/// throws singular_statistic_error; 0/0 entries are marked undefined.
KurtosisTensor4 kurtosis_tensor(const MomentTensor4& mu4, const MomentTensor4& mu4_stat);

/// Contracts all four indices with B (rows_out x U): the rank-4 congruence
/// R(a,b,c,d) = sum_{ijkl} B(a,i) B(b,j) B(c,k) B(d,l) T(i,j,k,l).
/// The result is symmetrized exactly.
MomentTensor4 contract_all_indices(const MomentTensor4& T, const Eigen::MatrixXd& B);

/// Full contraction of the tensor with one direction per index:
/// sum_{ijkl} w_i w_j w_k w_l T(i,j,k,l). Used for fast per-angle diagonals.
double quartic_form(const MomentTensor4& T, const Eigen::VectorXd& w);

}  // namespace modalstats
