#pragma once

#include "cohobs/complex.hpp"
#include "cohobs/homology.hpp"
#include "cohobs/linalg.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cohobs {

/// Cover of a complex by closed vertex stars. The overlap indexed by a
/// simplex s is the closed star of s, which sits inside the star of each
/// face of s; the nerve of the cover is the complex itself.
struct StarCover {
  SimplicialComplex base;
  /// stars[p][i] is the closed star of the i-th p-simplex.
  std::vector<std::vector<SubComplex>> stars;

  const SubComplex& star(int p, std::size_t i) const { return stars.at(p).at(i); }
};

inline StarCover star_cover(const SimplicialComplex& K) {
  StarCover cover{K, {}};
  cover.stars.resize(K.dim() + 1);
  for (int p = 0; p <= K.dim(); ++p) {
    cover.stars[p].reserve(K.count(p));
    for (std::size_t i = 0; i < K.count(p); ++i) {
      auto sub = closed_star(K, K.simplex(p, i));
      const auto b = betti_numbers(sub.complex, Ring::Real);
      bool acyclic = b[0] == 1;
      for (std::size_t q = 1; q < b.size(); ++q) acyclic = acyclic && b[q] == 0;
      if (!acyclic)
        throw Error(ErrorCode::CoverNotGood, "closed star of " + std::to_string(p) + "-simplex " + std::to_string(i) +
                                                 " is not acyclic");
      cover.stars[p].push_back(std::move(sub));
    }
  }
  return cover;
}

/// Local primitives of a closed k-form, one per vertex star.
struct LocalFamily {
  int degree = 0;
  std::vector<RealCochain> primitives;
};

/// Cech class produced by the descent, read on the nerve.
struct CechClass {
  int degree = 0;
  /// Constant values on the overlaps, as a simplicial cochain on the nerve.
  RealCochain cocycle;
  /// Largest deviation from constancy on any overlap.
  double constancy_defect = 0.0;
  /// |delta(cocycle)|_inf.
  double cocycle_defect = 0.0;
  /// Class coordinates of `cocycle` itself.
  Eigen::VectorXd nerve_coordinates;
  /// Coordinates after the fixed nerve identification sign.
  Eigen::VectorXd coordinates;
};

/// Sign relating the descended Cech cocycle to the original form in degree
/// k: [cocycle] = nerve_sign(k) * [w]. Frozen after checking both candidate
/// signs on known generators (see the cech tests).
constexpr int nerve_sign(int k) { return (k * (k + 1) / 2) % 2 ? -1 : 1; }

namespace detail {

/// Moves a cochain from one star to a star contained in it.
inline RealCochain transfer(const SubComplex& from, const SubComplex& to, const RealCochain& c) {
  RealCochain out{c.degree, {}};
  const auto& idx = to.to_global.at(c.degree);
  out.values.reserve(idx.size());
  for (auto g : idx) out.values.push_back(c.values[*from.local_index(c.degree, g)]);
  return out;
}

/// Primitive of a closed cochain on an acyclic star. With an rng, a random
/// closed cochain is added so a different primitive is returned.
inline RealCochain solve_on_star(const SubComplex& star, const RealCochain& theta, const Tolerance& tol,
                                 std::mt19937_64* rng) {
  const auto& L = star.complex;
  const int q = theta.degree;
  const auto beta_vec = least_squares(real_coboundary(L, q - 1), as_vector(theta));
  auto beta = as_cochain(q - 1, beta_vec);
  const auto check = apply_d(L, beta);
  double residual = 0.0;
  for (std::size_t i = 0; i < check.size(); ++i) residual = std::max(residual, std::abs(check.values[i] - theta.values[i]));
  if (residual > tol.bound(norm_inf(theta)))
    throw Error(ErrorCode::StarSolveFailure, "no primitive on a star (residual " + std::to_string(residual) + ")");
  if (rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    if (q - 1 == 0) {
      const double shift = u(*rng);
      for (auto& x : beta.values) x += shift;
    } else {
      RealCochain rho{q - 2, std::vector<double>(L.count(q - 2))};
      for (auto& x : rho.values) x = u(*rng);
      const auto drho = apply_d(L, rho);
      for (std::size_t i = 0; i < beta.size(); ++i) beta.values[i] += drho.values[i];
    }
  }
  return beta;
}

inline void check_form(const StarCover& cover, const RealCochain& w, const Tolerance& tol) {
  const auto& K = cover.base;
  if (w.degree < 1 || w.degree > K.dim())
    throw Error(ErrorCode::DegreeOutOfRange, "descent needs a form of degree 1.." + std::to_string(K.dim()));
  if (w.size() != K.count(w.degree)) throw Error(ErrorCode::BaseMismatch, "form does not match the cover's base");
  require_closed(K, w, tol);
}

}  // namespace detail

/// One primitive per vertex star: d(nu_i) = w restricted to star(i).
inline LocalFamily local_primitives(const StarCover& cover, const RealCochain& w, const Tolerance& tol = {},
                                    std::optional<std::uint64_t> seed = {}) {
  detail::check_form(cover, w, tol);
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);
  LocalFamily family{w.degree, {}};
  for (std::size_t v = 0; v < cover.base.count(0); ++v) {
    const auto& star = cover.star(0, v);
    family.primitives.push_back(detail::solve_on_star(star, restrict_to(star, w), tol, rng ? &*rng : nullptr));
  }
  return family;
}

/// Cech-de Rham descent of a closed k-form.
///
/// Level p holds, for each p-simplex s, a (k-1-p)-cochain on star(s). The
/// alternating sum of the level-(p-1) cochains of the faces of s is closed
/// on star(s); it is solved again until level k, where it is constant on
/// each (connected) star. Those constants form a k-cochain on the nerve.
inline CechClass connecting_delta(const StarCover& cover, const RealCochain& w, const Tolerance& tol = {},
                                  std::optional<std::uint64_t> seed = {}) {
  const auto& K = cover.base;
  const int k = w.degree;
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<RealCochain> level = local_primitives(cover, w, tol, seed).primitives;

  CechClass out;
  out.degree = k;
  out.cocycle = zero_cochain<double>(K, k);
  for (int p = 1; p <= k; ++p) {
    std::vector<RealCochain> next;
    next.reserve(K.count(p));
    for (std::size_t i = 0; i < K.count(p); ++i) {
      const auto& star = cover.star(p, i);
      RealCochain theta{k - p, std::vector<double>(star.complex.count(k - p), 0.0)};
      for (int j = 0; j <= p; ++j) {
        const auto f = K.face(p, i, j);
        const auto part = detail::transfer(cover.star(p - 1, f), star, level[f]);
        const double sign = j % 2 ? -1.0 : 1.0;
        for (std::size_t t = 0; t < theta.size(); ++t) theta.values[t] += sign * part.values[t];
      }
      if (p < k) {
        next.push_back(detail::solve_on_star(star, theta, tol, rng ? &*rng : nullptr));
      } else {
        double mean = 0.0;
        for (double x : theta.values) mean += x;
        mean /= static_cast<double>(theta.size());
        for (double x : theta.values) out.constancy_defect = std::max(out.constancy_defect, std::abs(x - mean));
        out.cocycle.values[i] = mean;
      }
    }
    level = std::move(next);
  }
  out.cocycle_defect = k < K.dim() ? norm_inf(apply_d(K, out.cocycle)) : 0.0;
  out.nerve_coordinates = class_coordinates(K, out.cocycle);
  out.coordinates = nerve_sign(k) * out.nerve_coordinates;
  return out;
}

/// Outcome of the globality test for a locally exact current.
struct GlobalityReport {
  CechClass cech;
  Eigen::VectorXd simplicial_coordinates;
  bool cech_vanishes = false;
  bool primitive_found = false;
  /// A global primitive (the global conserved current) when one exists.
  std::optional<RealCochain> current;
  bool globalizable = false;
};

/// Runs both routes (Cech descent and global least squares) and requires
/// them to agree.
inline GlobalityReport current_globality(const StarCover& cover, const RealCochain& w, const Tolerance& tol = {}) {
  GlobalityReport r;
  r.cech = connecting_delta(cover, w, tol);
  auto prim = find_primitive(cover.base, w, tol);
  r.simplicial_coordinates = prim.class_coordinates;
  const double bound = std::max(1e-8, tol.bound(norm_inf(w)));
  r.cech_vanishes = r.cech.coordinates.size() == 0 || r.cech.coordinates.cwiseAbs().maxCoeff() <= bound;
  r.primitive_found = prim.primitive.has_value();
  r.current = std::move(prim.primitive);
  if (r.cech_vanishes != r.primitive_found)
    throw Error(ErrorCode::VerdictInconsistent,
                std::string("Cech class ") + (r.cech_vanishes ? "vanishes" : "is nonzero") + " but a global primitive " +
                    (r.primitive_found ? "was found" : "was not found"));
  r.globalizable = r.primitive_found;
  return r;
}

}  // namespace cohobs
