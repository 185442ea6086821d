#pragma once

#include "cohobs/complex.hpp"
#include "cohobs/linalg.hpp"
#include "cohobs/snf.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cohobs {

enum class Ring { Int, Real };

/// Rank of a (co)homology group plus its torsion coefficients.
struct GroupDescriptor {
  std::size_t betti = 0;
  std::vector<Integer> torsion;

  bool operator==(const GroupDescriptor&) const = default;
};

namespace detail {

inline void check_degree(const SimplicialComplex& K, int k) {
  if (k < 0 || k > K.dim())
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(k) + " outside [0, " +
                                                 std::to_string(K.dim()) + "]");
}

/// Invariant factors of d_k; empty when d_k is the zero map.
inline const std::vector<Integer>& coboundary_divisors(const SimplicialComplex& K, int k) {
  static const std::vector<Integer> none;
  if (k < 0 || k >= K.dim()) return none;
  return *K.memoize<std::vector<Integer>>("divisors:" + std::to_string(k), [&] {
    return elementary_divisors(IntMatrix::from_sparse(coboundary_matrix(K, k)));
  });
}

inline std::size_t coboundary_real_rank(const SimplicialComplex& K, int k) {
  if (k < 0 || k >= K.dim()) return 0;
  return *K.memoize<std::size_t>("real_rank:" + std::to_string(k), [&] {
    return static_cast<std::size_t>(real_rank(Eigen::MatrixXd(real_coboundary(K, k))));
  });
}

inline std::vector<Integer> nontrivial(const std::vector<Integer>& divisors) {
  std::vector<Integer> t;
  for (const auto& d : divisors)
    if (d > 1) t.push_back(d);
  return t;
}

}  // namespace detail

/// Cohomology H^k(K). Betti = dim ker d_k - rank d_{k-1}; integral torsion
/// comes from the invariant factors of d_{k-1}. Over the reals the ranks are
/// computed in floating point, independently of the integer reduction.
inline GroupDescriptor homology_groups(const SimplicialComplex& K, int k, Ring ring) {
  detail::check_degree(K, k);
  GroupDescriptor g;
  if (ring == Ring::Int) {
    const auto rank_k = detail::coboundary_divisors(K, k).size();
    const auto& below = detail::coboundary_divisors(K, k - 1);
    g.betti = K.count(k) - rank_k - below.size();
    g.torsion = detail::nontrivial(below);
  } else {
    g.betti = K.count(k) - detail::coboundary_real_rank(K, k) - detail::coboundary_real_rank(K, k - 1);
  }
  return g;
}

/// Homology H_k(K) of the chain complex. Torsion comes from the boundary
/// operator out of degree k+1, which is the transpose of d_k.
inline GroupDescriptor chain_homology_groups(const SimplicialComplex& K, int k, Ring ring) {
  auto g = homology_groups(K, k, ring);
  g.torsion.clear();
  if (ring == Ring::Int) g.torsion = detail::nontrivial(detail::coboundary_divisors(K, k));
  return g;
}

inline std::vector<std::size_t> betti_numbers(const SimplicialComplex& K, Ring ring = Ring::Real) {
  std::vector<std::size_t> b;
  for (int k = 0; k <= K.dim(); ++k) b.push_back(homology_groups(K, k, ring).betti);
  return b;
}

/// Integer cochains whose classes form a basis of the free part of H^k(K; Z).
struct IntegralBasis {
  int degree = 0;
  std::vector<IntCochain> generators;
  std::vector<Integer> torsion;
  /// Cocycles generating the torsion summands, aligned with `torsion`.
  std::vector<IntCochain> torsion_generators;
};

inline std::shared_ptr<const IntegralBasis> integral_cohomology_basis(const SimplicialComplex& K, int k) {
  detail::check_degree(K, k);
  return K.memoize<IntegralBasis>("integral_basis:" + std::to_string(k), [&] {
    const std::size_t n = K.count(k);
    // Kernel of d_k over Z: with d_k = U S V, ker d_k = V^{-1} [e_r .. e_{n-1}].
    IntMatrix V = IntMatrix::identity(n);
    IntMatrix Vi = IntMatrix::identity(n);
    std::size_t r = 0;
    if (k < K.dim()) {
      auto snf = smith_normal_form(IntMatrix::from_sparse(coboundary_matrix(K, k)));
      r = snf.rank();
      V = std::move(snf.V);
      Vi = std::move(snf.V_inverse);
    }
    const std::size_t z = n - r;

    // Coordinates of im d_{k-1} in that kernel basis: rows r.. of V * d_{k-1}.
    IntMatrix X(z, K.count(k - 1));
    if (k > 0) {
      const auto below = coboundary_matrix(K, k - 1);
      for (int col = 0; col < below.outerSize(); ++col)
        for (IncidenceMatrix::InnerIterator it(below, col); it; ++it)
          for (std::size_t i = 0; i < z; ++i) {
            const auto& v = V(r + i, static_cast<std::size_t>(it.row()));
            if (!v.is_zero()) X(i, static_cast<std::size_t>(col)) += v * it.value();
          }
    }
    // X = U' S' V'; the last z - rank' columns of Z U' span the free part.
    auto inner = smith_normal_form(X);
    const std::size_t r2 = inner.rank();
    IntegralBasis basis;
    basis.degree = k;
    basis.torsion = detail::nontrivial(inner.divisors());
    auto column = [&](std::size_t c) {
      IntCochain g{k, std::vector<Integer>(n)};
      for (std::size_t i = 0; i < z; ++i) {
        const auto& u = inner.U(i, c);
        if (u.is_zero()) continue;
        for (std::size_t row = 0; row < n; ++row)
          if (!Vi(row, r + i).is_zero()) g.values[row] += u * Vi(row, r + i);
      }
      return g;
    };
    for (std::size_t c = 0; c < r2; ++c)
      if (inner.S(c, c) > 1) basis.torsion_generators.push_back(column(c));
    for (std::size_t c = r2; c < z; ++c) basis.generators.push_back(column(c));
    return basis;
  });
}

/// True when y = d x has an integer solution x, i.e. the integral class of
/// the cocycle y vanishes.
inline bool integrally_exact(const SimplicialComplex& K, const IntCochain& y) {
  const int k = y.degree;
  detail::check_degree(K, k);
  if (y.size() != K.count(k)) throw Error(ErrorCode::BaseMismatch, "cochain length does not match the complex");
  if (k == 0) return std::all_of(y.values.begin(), y.values.end(), [](const Integer& x) { return x.is_zero(); });
  const auto cached = K.memoize<SNFResult>("snf:" + std::to_string(k - 1), [&] {
    return smith_normal_form(IntMatrix::from_sparse(coboundary_matrix(K, k - 1)));
  });
  const auto& snf = *cached;
  // d = U S V, so d x = y  <=>  S (V x) = U^{-1} y.
  const auto r = snf.rank();
  for (std::size_t i = 0; i < snf.U_inverse.rows(); ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!snf.U_inverse(i, j).is_zero() && !y.values[j].is_zero()) acc += snf.U_inverse(i, j) * y.values[j];
    if (i < r ? Integer(acc % snf.S(i, i)) != 0 : acc != 0) return false;
  }
  return true;
}

/// Real cohomology basis with a projector to class coordinates.
///
/// Representatives are the integral generators. The projector P satisfies
/// P * w_i = e_i for every representative and P * (exact) = 0, so it maps a
/// closed cochain to its class coordinates.
struct CohomologyBasis {
  int degree = 0;
  std::vector<IntCochain> integral;
  std::vector<RealCochain> representatives;
  Eigen::MatrixXd projector;

  std::size_t size() const { return representatives.size(); }

  Eigen::VectorXd coordinates(const RealCochain& w) const {
    if (w.degree != degree || static_cast<Eigen::Index>(w.size()) != projector.cols())
      throw Error(ErrorCode::BaseMismatch, "cochain does not match the cohomology basis");
    return projector * as_vector(w);
  }
};

inline std::shared_ptr<const CohomologyBasis> cohomology_basis_real(const SimplicialComplex& K, int k) {
  detail::check_degree(K, k);
  return K.memoize<CohomologyBasis>("real_basis:" + std::to_string(k), [&] {
    const auto integral = integral_cohomology_basis(K, k);
    CohomologyBasis basis;
    basis.degree = k;
    basis.integral = integral->generators;
    const auto n = static_cast<Eigen::Index>(K.count(k));
    const auto b = static_cast<Eigen::Index>(basis.integral.size());
    Eigen::MatrixXd W(n, b);
    for (Eigen::Index j = 0; j < b; ++j) {
      basis.representatives.push_back(to_real(basis.integral[j]));
      W.col(j) = as_vector(basis.representatives.back());
    }
    Eigen::MatrixXd Wp = W;
    if (k > 0 && b > 0) {
      const Eigen::MatrixXd Q = column_space(Eigen::MatrixXd(real_coboundary(K, k - 1)));
      Wp -= Q * (Q.transpose() * W);
    }
    if (b > 0) {
      const Eigen::MatrixXd G = Wp.transpose() * Wp;
      basis.projector = G.ldlt().solve(Wp.transpose());
    } else {
      basis.projector = Eigen::MatrixXd(0, n);
    }
    return basis;
  });
}

/// Class coordinates of a closed cochain in the basis of its degree.
inline Eigen::VectorXd class_coordinates(const SimplicialComplex& K, const RealCochain& w) {
  return cohomology_basis_real(K, w.degree)->coordinates(w);
}

struct PrimitiveResult {
  std::optional<RealCochain> primitive;
  Eigen::VectorXd class_coordinates;
  double residual = 0.0;
};

namespace detail {

inline void require_closed(const SimplicialComplex& K, const RealCochain& w, const Tolerance& tol) {
  if (w.degree < K.dim()) {
    const double defect = norm_inf(apply_d(K, w));
    if (defect > tol.bound(norm_inf(w)))
      throw Error(ErrorCode::NotClosed, "cochain of degree " + std::to_string(w.degree) +
                                            " has |dw| = " + std::to_string(defect));
  }
}

}  // namespace detail

/// Solves d(beta) = w by least squares when the class of w vanishes.
/// Any minimizer is acceptable; beta is not gauge fixed.
inline PrimitiveResult find_primitive(const SimplicialComplex& K, const RealCochain& w, const Tolerance& tol = {}) {
  if (w.degree < 1 || w.degree > K.dim())
    throw Error(ErrorCode::DegreeOutOfRange, "primitive of a degree-" + std::to_string(w.degree) + " cochain");
  if (w.size() != K.count(w.degree)) throw Error(ErrorCode::BaseMismatch, "cochain length does not match the complex");
  detail::require_closed(K, w, tol);
  PrimitiveResult out;
  out.class_coordinates = class_coordinates(K, w);
  const double bound = tol.bound(norm_inf(w));
  if (out.class_coordinates.size() > 0 && out.class_coordinates.cwiseAbs().maxCoeff() > bound) return out;

  const auto beta = as_cochain(w.degree - 1, least_squares(real_coboundary(K, w.degree - 1), as_vector(w)));
  const auto dbeta = apply_d(K, beta);
  double residual = 0.0;
  for (std::size_t i = 0; i < dbeta.size(); ++i) residual = std::max(residual, std::abs(dbeta.values[i] - w.values[i]));
  out.residual = residual;
  if (residual <= bound) out.primitive = beta;
  return out;
}

}  // namespace cohobs
