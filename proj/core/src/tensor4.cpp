#include "modalstats/tensor4.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "modalstats/errors.hpp"

namespace modalstats {

namespace {

std::array<int, 4> sorted_quad(int i, int j, int k, int l) {
  std::array<int, 4> q{i, j, k, l};
  std::sort(q.begin(), q.end());
  return q;
}

void for_each_quad(int U, const std::function<void(int, int, int, int)>& fn) {
  for (int i = 0; i < U; ++i)
    for (int j = 0; j < U; ++j)
      for (int k = 0; k < U; ++k)
        for (int l = 0; l < U; ++l) fn(i, j, k, l);
}

}  // namespace

double MomentTensor4::max_asymmetry() const {
  double worst = 0.0;
  for_each_quad(U_, [&](int i, int j, int k, int l) {
    auto q = sorted_quad(i, j, k, l);
    worst = std::max(worst, std::abs((*this)(i, j, k, l) - (*this)(q[0], q[1], q[2], q[3])));
  });
  return worst;
}

void MomentTensor4::symmetrize_from_canonical() {
  for_each_quad(U_, [&](int i, int j, int k, int l) {
    auto q = sorted_quad(i, j, k, l);
    (*this)(i, j, k, l) = (*this)(q[0], q[1], q[2], q[3]);
  });
}

double MomentTensor4::frobenius_norm() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return std::sqrt(s);
}

MomentTensor4 MomentTensor4::operator-(const MomentTensor4& other) const {
  if (other.U_ != U_) throw invalid_input_error("tensor4: dimension mismatch");
  MomentTensor4 r(U_);
  for (std::size_t p = 0; p < v_.size(); ++p) r.v_[p] = v_[p] - other.v_[p];
  return r;
}

MomentTensor4 MomentTensor4::operator+(const MomentTensor4& other) const {
  if (other.U_ != U_) throw invalid_input_error("tensor4: dimension mismatch");
  MomentTensor4 r(U_);
  for (std::size_t p = 0; p < v_.size(); ++p) r.v_[p] = v_[p] + other.v_[p];
  return r;
}

std::vector<std::pair<int, int>> voigt_index_map(int U) {
  std::vector<std::pair<int, int>> map;
  map.reserve(static_cast<std::size_t>(U) * (U + 1) / 2);
  for (int u = 0; u < U; ++u) map.emplace_back(u, u);
  for (int a = 0; a < U; ++a)
    for (int b = a + 1; b < U; ++b) map.emplace_back(a, b);
  return map;
}

VoigtTensor4 voigt_project(const MomentTensor4& T) {
  const int U = T.dim();
  if (U < 1) throw invalid_input_error("voigt: empty tensor");
  double scale = std::max(T.frobenius_norm(), 1.0);
  if (T.max_asymmetry() > 1e-12 * scale)
    throw invalid_input_error("voigt: tensor is not permutation symmetric");

  VoigtTensor4 V;
  V.U = U;
  V.index_map = voigt_index_map(U);
  const int P = static_cast<int>(V.index_map.size());
  V.M.resize(P, P);
  for (int a = 0; a < P; ++a)
    for (int b = 0; b < P; ++b) {
      auto [i, j] = V.index_map[static_cast<std::size_t>(a)];
      auto [k, l] = V.index_map[static_cast<std::size_t>(b)];
      V.M(a, b) = T(i, j, k, l);
    }
  V.normalized = false;
  return V;
}

VoigtTensor4 voigt_normalize(const VoigtTensor4& V) {
  if (V.normalized) throw invalid_state_error("voigt: already normalized");
  VoigtTensor4 N = V;
  const int U = V.U;
  const int P = static_cast<int>(V.index_map.size());
  const double root2 = std::sqrt(2.0);
  for (int a = 0; a < P; ++a)
    for (int b = 0; b < P; ++b) {
      const bool a_off = a >= U;
      const bool b_off = b >= U;
      if (a_off && b_off)
        N.M(a, b) *= 2.0;
      else if (a_off || b_off)
        N.M(a, b) *= root2;
    }
  N.normalized = true;
  return N;
}

MomentTensor4 voigt_reconstruct(const VoigtTensor4& V) {
  if (V.normalized)
    throw invalid_state_error("voigt: reconstruct expects the unnormalized form");
  const int U = V.U;
  // pair -> slot lookup
  Eigen::MatrixXi slot(U, U);
  for (int s = 0; s < static_cast<int>(V.index_map.size()); ++s) {
    auto [a, b] = V.index_map[static_cast<std::size_t>(s)];
    slot(a, b) = s;
    slot(b, a) = s;
  }
  MomentTensor4 T(U);
  for (int i = 0; i < U; ++i)
    for (int j = 0; j < U; ++j)
      for (int k = 0; k < U; ++k)
        for (int l = 0; l < U; ++l) T(i, j, k, l) = V.M(slot(i, j), slot(k, l));
  T.symmetrize_from_canonical();
  return T;
}

MomentTensor4 isserlis_stationary(const Eigen::MatrixXd& sigma) {
  const int U = static_cast<int>(sigma.rows());
  if (sigma.cols() != U) throw invalid_input_error("isserlis: covariance must be square");
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, sigma.cwiseAbs().maxCoeff()))
    throw invalid_input_error("isserlis: covariance must be symmetric");

  MomentTensor4 T(U);
  for (int i = 0; i < U; ++i)
    for (int j = i; j < U; ++j)
      for (int k = j; k < U; ++k)
        for (int l = k; l < U; ++l)
          T(i, j, k, l) =
              sigma(i, j) * sigma(k, l) + sigma(i, k) * sigma(j, l) + sigma(i, l) * sigma(j, k);
  T.symmetrize_from_canonical();
  return T;
}

MomentTensor4 cumulant4(const MomentTensor4& mu4, const Eigen::MatrixXd& sigma) {
  if (static_cast<int>(sigma.rows()) != mu4.dim())
    throw invalid_input_error("cumulant4: dimension mismatch");
  return mu4 - isserlis_stationary(sigma);
}

double KurtosisTensor4::value(int i, int j, int k, int l) const {
  return values[((static_cast<std::size_t>(i) * U + j) * U + k) * U + l];
}

bool KurtosisTensor4::is_defined(int i, int j, int k, int l) const {
  return defined[((static_cast<std::size_t>(i) * U + j) * U + k) * U + l] != 0;
}

KurtosisTensor4 kurtosis_tensor(const MomentTensor4& mu4, const MomentTensor4& mu4_stat) {
  if (mu4.dim() != mu4_stat.dim()) throw invalid_input_error("kurtosis_tensor: dimension mismatch");
  KurtosisTensor4 K;
  K.U = mu4.dim();
  K.values.assign(mu4.size(), 0.0);
  K.defined.assign(mu4.size(), 1);
  const auto& num = mu4.raw();
  const auto& den = mu4_stat.raw();
  for (std::size_t p = 0; p < num.size(); ++p) {
    if (den[p] == 0.0) {
      if (num[p] == 0.0) {
        K.defined[p] = 0;
        K.values[p] = 0.0;
      } else {
        throw singular_statistic_error("kurtosis_tensor: zero Gaussian baseline entry with nonzero moment");
      }
    } else {
      K.values[p] = num[p] / den[p];
    }
  }
  return K;
}

MomentTensor4 contract_all_indices(const MomentTensor4& T, const Eigen::MatrixXd& B) {
  const int U = T.dim();
  if (static_cast<int>(B.cols()) != U)
    throw invalid_input_error("tensor4: contraction matrix columns must match tensor dimension");
  const int M = static_cast<int>(B.rows());

  // Four successive mode products; after each, rotate the contracted index
  // to the back so the next raw index is leading again.
  std::vector<double> cur(T.raw());
  std::array<int, 4> dims{U, U, U, U};
  for (int step = 0; step < 4; ++step) {
    const int d0 = dims[0];
    const std::size_t rest = static_cast<std::size_t>(dims[1]) * dims[2] * dims[3];
    // out(a, rest) = sum_i B(a,i) * cur(i, rest), then move axis 0 to axis 3.
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        in(cur.data(), d0, static_cast<Eigen::Index>(rest));
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> prod = B * in;
    std::vector<double> next(static_cast<std::size_t>(M) * rest);
    // prod is (a; j,k,l); next must be (j,k,l; a)
    for (int a = 0; a < M; ++a)
      for (std::size_t r = 0; r < rest; ++r)
        next[r * static_cast<std::size_t>(M) + static_cast<std::size_t>(a)] =
            prod(a, static_cast<Eigen::Index>(r));
    cur.swap(next);
    dims = {dims[1], dims[2], dims[3], M};
  }

  MomentTensor4 R(M);
  R.raw() = std::move(cur);
  R.symmetrize_from_canonical();
  return R;
}

double quartic_form(const MomentTensor4& T, const Eigen::VectorXd& w) {
  const int U = T.dim();
  if (static_cast<int>(w.size()) != U)
    throw invalid_input_error("tensor4: direction length must match tensor dimension");
  // Contract two indices first: A(k,l) = sum_ij w_i w_j T(i,j,k,l).
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(U, U);
  for (int i = 0; i < U; ++i)
    for (int j = 0; j < U; ++j) {
      const double wij = w(i) * w(j);
      if (wij == 0.0) continue;
      for (int k = 0; k < U; ++k)
        for (int l = 0; l < U; ++l) A(k, l) += wij * T(i, j, k, l);
    }
  return w.dot(A * w);
}

}  // namespace modalstats
