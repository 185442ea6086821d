#pragma once

#include "cohobs/complex.hpp"
#include "cohobs/cup.hpp"
#include "cohobs/homology.hpp"
#include "cohobs/linalg.hpp"

#include <Eigen/Dense>

#include <numbers>
#include <string>

namespace cohobs {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Discrete U(1) bundle: an integer 2-cocycle c representing the first
/// Chern class over a fixed base.
struct U1Bundle {
  SimplicialComplex base;
  IntCochain c;
};

/// A section of the affine bundle of connections.
///
/// The real value on each edge is `a + 2*pi*winding`. Keeping the integer
/// winding apart lets large gauge transformations shift the connection
/// without any rounding in the curvature.
struct Connection {
  RealCochain a;
  IntCochain winding;

  static Connection from_real(RealCochain a) {
    IntCochain w{1, std::vector<Integer>(a.size())};
    return {std::move(a), std::move(w)};
  }

  RealCochain values() const {
    RealCochain v = a;
    for (std::size_t e = 0; e < v.size(); ++e)
      if (!winding.values[e].is_zero()) v.values[e] += two_pi * to_double(winding.values[e]);
    return v;
  }
};

/// Least-squares flattening of a bundle.
struct FlatResult {
  Connection A_star;
  double residual = 0.0;
  double tolerance = 0.0;
  bool flat = false;
  Eigen::VectorXd obstruction_coords;
};

namespace detail {

inline void check_connection(const SimplicialComplex& K, const Connection& A) {
  if (A.a.degree != 1 || A.a.size() != K.count(1) || A.winding.size() != K.count(1))
    throw Error(ErrorCode::BaseMismatch, "connection is not a 1-cochain on the bundle base");
}

inline void check_base(const SimplicialComplex& K, const U1Bundle& bundle) {
  if (!(K == bundle.base)) throw Error(ErrorCode::BaseMismatch, "bundle lives on a different complex");
}

inline RealCochain add(RealCochain x, const RealCochain& y) {
  for (std::size_t i = 0; i < x.size(); ++i) x.values[i] += y.values[i];
  return x;
}

}  // namespace detail

inline U1Bundle make_bundle(const SimplicialComplex& K, IntCochain c) {
  if (c.degree != 2)
    throw Error(ErrorCode::DegreeOutOfRange, "Chern cocycle must have degree 2, got " + std::to_string(c.degree));
  if (c.size() != K.count(2)) throw Error(ErrorCode::BaseMismatch, "Chern cocycle length does not match the complex");
  if (K.dim() > 2) {
    const auto dc = apply_d(K, c);
    for (std::size_t t = 0; t < dc.size(); ++t)
      if (!dc.values[t].is_zero())
        throw Error(ErrorCode::NotACocycle, "dc is nonzero on tetrahedron " + std::to_string(t));
  }
  return {K, std::move(c)};
}

inline U1Bundle trivial_bundle(const SimplicialComplex& K) { return make_bundle(K, zero_cochain<Integer>(K, 2)); }

/// F = dA + 2*pi*c. The integer parts (winding and c) are combined exactly
/// before conversion.
inline RealCochain curvature(const U1Bundle& bundle, const Connection& A) {
  const auto& K = bundle.base;
  detail::check_connection(K, A);
  auto F = apply_d(K, A.a);
  auto integral = apply_d(K, A.winding);
  for (std::size_t t = 0; t < F.size(); ++t) {
    integral.values[t] += bundle.c.values[t];
    if (!integral.values[t].is_zero()) F.values[t] += two_pi * to_double(integral.values[t]);
  }
  return F;
}

/// Real class of the curvature: 2*pi times the class coordinates of c.
inline Eigen::VectorXd real_chern_class(const U1Bundle& bundle) {
  return two_pi * class_coordinates(bundle.base, to_real(bundle.c));
}

inline double flat_tolerance(const U1Bundle& bundle, const Tolerance& tol = {}) {
  double cmax = 0.0;
  for (const auto& x : bundle.c.values) cmax = std::max(cmax, std::abs(to_double(x)));
  return tol.rel * (1.0 + two_pi * cmax);
}

/// Minimizes ||dA + 2*pi*c||_2 over real connections.
inline FlatResult flatten(const U1Bundle& bundle, const Tolerance& tol = {}) {
  const auto& K = bundle.base;
  const auto D = real_coboundary(K, 1);
  const Eigen::VectorXd rhs = -two_pi * as_vector(to_real(bundle.c));
  const Eigen::VectorXd a = least_squares(D, rhs);

  FlatResult out;
  out.A_star = Connection::from_real(as_cochain(1, a));
  const auto F = curvature(bundle, out.A_star);
  out.residual = norm_inf(F);
  out.tolerance = flat_tolerance(bundle, tol);
  out.flat = out.residual <= out.tolerance;
  out.obstruction_coords = real_chern_class(bundle);

  // A minimizer has F orthogonal to the image of d.
  const Eigen::VectorXd normal = D.transpose() * as_vector(F);
  const double scale = 1.0 + two_pi * as_vector(to_real(bundle.c)).lpNorm<Eigen::Infinity>();
  if (!a.allFinite() || normal.lpNorm<Eigen::Infinity>() > 1e-6 * scale)
    throw Error(ErrorCode::SolverFailure, "least-squares connection fails the normal equations (|D^T F| = " +
                                              std::to_string(normal.lpNorm<Eigen::Infinity>()) + ")");
  return out;
}

/// A' = A + df + 2*pi*m for a real 0-cochain f and an integer 1-cocycle m.
inline Connection gauge_transform(const U1Bundle& bundle, const Connection& A, const RealCochain& f,
                                  const IntCochain& m) {
  const auto& K = bundle.base;
  detail::check_connection(K, A);
  if (f.degree != 0 || f.size() != K.count(0) || m.degree != 1 || m.size() != K.count(1))
    throw Error(ErrorCode::BaseMismatch, "gauge parameters do not match the bundle base");
  const auto dm = apply_d(K, m);
  for (std::size_t t = 0; t < dm.size(); ++t)
    if (!dm.values[t].is_zero())
      throw Error(ErrorCode::MNotCocycle, "dm is nonzero on triangle " + std::to_string(t));
  Connection out = A;
  out.a = detail::add(out.a, apply_d(K, f));
  for (std::size_t e = 0; e < m.size(); ++e) out.winding.values[e] += m.values[e];
  return out;
}

namespace detail {

inline void require_closed_oriented_3(const SimplicialComplex& K) {
  if (K.dim() != 3) throw Error(ErrorCode::DegreeOutOfRange, "Chern-Simons needs a 3-dimensional complex");
  fundamental_cycle(K);
}

}  // namespace detail

/// Chern-Simons functional <A cup dA, [X]> on a trivialized bundle.
inline double cs_action(const SimplicialComplex& K, const Connection& A) {
  detail::require_closed_oriented_3(K);
  detail::check_connection(K, A);
  const auto v = A.values();
  return pair_with_fundamental(K, cup(K, v, apply_d(K, v)));
}

/// Gradient of cs_action with respect to the edge values of A.
///
/// On a tetrahedron (v0 v1 v2 v3) with sign e the integrand is
/// e * A(01) * (A(23) - A(13) + A(12)).
inline RealCochain cs_gradient(const SimplicialComplex& K, const Connection& A) {
  detail::require_closed_oriented_3(K);
  detail::check_connection(K, A);
  const auto v = A.values();
  const auto dA = apply_d(K, v);
  const auto z = fundamental_cycle(K);
  RealCochain g = zero_cochain<double>(K, 1);
  for (std::size_t t = 0; t < K.count(3); ++t) {
    const auto& s = K.simplex(3, t);
    const double e = z.coeffs[t];
    const auto e01 = *K.index_of({s[0], s[1]});
    const auto back = *K.index_of({s[1], s[2], s[3]});
    g.values[e01] += e * dA.values[back];
    const double w = e * v.values[e01];
    // Faces of the back triangle (v1 v2 v3) with alternating signs.
    g.values[*K.index_of({s[2], s[3]})] += w;
    g.values[*K.index_of({s[1], s[3]})] -= w;
    g.values[*K.index_of({s[1], s[2]})] += w;
  }
  return g;
}

}  // namespace cohobs
