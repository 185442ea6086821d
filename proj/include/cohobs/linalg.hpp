#pragma once

#include "cohobs/complex.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <vector>

namespace cohobs {

using RealSparse = Eigen::SparseMatrix<double>;

/// Relative tolerance against an input norm with an absolute floor.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  double bound(double scale) const { return std::max(abs, rel * scale); }
};

inline double norm_inf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double norm_inf(const RealCochain& c) { return norm_inf(c.values); }

inline Eigen::VectorXd as_vector(const RealCochain& c) {
  return Eigen::Map<const Eigen::VectorXd>(c.values.data(), static_cast<Eigen::Index>(c.values.size()));
}

inline RealCochain as_cochain(int degree, const Eigen::VectorXd& v) {
  return RealCochain{degree, std::vector<double>(v.data(), v.data() + v.size())};
}

inline RealCochain to_real(const IntCochain& c) {
  RealCochain r{c.degree, {}};
  r.values.reserve(c.values.size());
  for (const auto& x : c.values) r.values.push_back(to_double(x));
  return r;
}

inline RealSparse real_coboundary(const SimplicialComplex& K, int k) {
  return coboundary_matrix(K, k).cast<double>();
}

/// Rank over the reals by column-pivoted Householder QR.
inline Eigen::Index real_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.rank();
}

/// Orthonormal basis of the column space of `m`.
inline Eigen::MatrixXd column_space(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), qr.rank());
  return q;
}

/// Some minimizer of ||A x - b||_2. Small systems use a dense complete
/// orthogonal decomposition (minimum-norm solution); large ones use
/// conjugate gradients on the normal equations. Both are deterministic.
inline Eigen::VectorXd least_squares(const RealSparse& A, const Eigen::VectorXd& b) {
  if (A.cols() == 0) return Eigen::VectorXd(0);
  constexpr double dense_limit = 4e6;
  if (static_cast<double>(A.rows()) * static_cast<double>(A.cols()) <= dense_limit) {
    Eigen::MatrixXd dense(A);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(dense);
    return cod.solve(b);
  }
  Eigen::LeastSquaresConjugateGradient<RealSparse> solver;
  solver.setTolerance(1e-15);
  solver.setMaxIterations(20 * A.cols());
  solver.compute(A);
  return solver.solve(b);
}

}  // namespace cohobs
