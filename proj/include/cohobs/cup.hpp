#pragma once

#include "cohobs/complex.hpp"
#include "cohobs/homology.hpp"

#include <Eigen/Dense>

#include <string>

namespace cohobs {

/// Alexander-Whitney cup product. On an increasing simplex (v0..v_{k+l})
/// the value is a(v0..vk) * b(vk..v_{k+l}).
template <class T>
Cochain<T> cup(const SimplicialComplex& K, const Cochain<T>& a, const Cochain<T>& b) {
  const int k = a.degree;
  const int l = b.degree;
  if (k < 0 || l < 0 || k + l > K.dim())
    throw Error(ErrorCode::DegreeOverflow, "cup of degrees " + std::to_string(k) + " and " + std::to_string(l) +
                                               " exceeds dimension " + std::to_string(K.dim()));
  if (a.size() != K.count(k) || b.size() != K.count(l))
    throw Error(ErrorCode::BaseMismatch, "cup operand does not match the complex");
  Cochain<T> out{k + l, std::vector<T>(K.count(k + l), T(0))};
  for (std::size_t t = 0; t < K.count(k + l); ++t) {
    const auto& s = K.simplex(k + l, t);
    const Simplex front(s.begin(), s.begin() + k + 1);
    const Simplex back(s.begin() + k, s.end());
    out.values[t] = a.values[*K.index_of(front)] * b.values[*K.index_of(back)];
  }
  return out;
}

/// Evaluation of a top-degree cochain on the fundamental cycle.
template <class T>
T pair_with_fundamental(const SimplicialComplex& K, const Cochain<T>& w) {
  if (w.degree != K.dim())
    throw Error(ErrorCode::DegreeOutOfRange, "pairing needs a top-degree cochain, got degree " +
                                                 std::to_string(w.degree));
  if (w.size() != K.count(w.degree)) throw Error(ErrorCode::BaseMismatch, "cochain length does not match the complex");
  const auto z = fundamental_cycle(K);
  T acc(0);
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (z.coeffs[t] > 0) acc += w.values[t];
    else acc -= w.values[t];
  }
  return acc;
}

/// P[i][j] = <w_i cup h_j, [X]> over the real bases of H^k and H^{n-k}.
struct PairingMatrix {
  int degree = 0;
  int codegree = 0;
  Eigen::MatrixXd values;
  Eigen::VectorXd singular_values;
  bool nondegenerate = false;
};

/// Singular values below this fraction of the largest count as zero.
inline constexpr double pairing_rank_threshold = 1e-8;

inline PairingMatrix poincare_pairing_matrix(const SimplicialComplex& K, int k) {
  detail::check_degree(K, k);
  const int n = K.dim();
  const auto left = cohobs::cohomology_basis_real(K, k);
  const auto right = cohobs::cohomology_basis_real(K, n - k);
  PairingMatrix out;
  out.degree = k;
  out.codegree = n - k;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(left->size()), static_cast<Eigen::Index>(right->size()));
  for (std::size_t i = 0; i < left->size(); ++i)
    for (std::size_t j = 0; j < right->size(); ++j)
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          pair_with_fundamental(K, cup(K, left->representatives[i], right->representatives[j]));
  Eigen::Index rank = 0;
  if (out.values.size() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.values);
    out.singular_values = svd.singularValues();
    const double top = out.singular_values(0);
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
      if (out.singular_values(i) > pairing_rank_threshold * top) ++rank;
  }
  out.nondegenerate = rank == out.values.rows() && rank == out.values.cols();
  return out;
}

}  // namespace cohobs
