#pragma once

#include "cohobs/complex.hpp"
#include "cohobs/fixtures.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace cohobs {

/// Test-bed manifolds. `Circle` carries its vertex count in `n`.
struct ManifoldName {
  enum class Kind { S3, T3, S1xS2, RP3, Circle, Sphere2 };
  Kind kind = Kind::S3;
  int n = 0;

  /// Accepts s3, t3, s1xs2, rp3, sphere2 and circle<n> (e.g. circle5).
  static ManifoldName parse(std::string text) {
    for (auto& ch : text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (text == "s3") return {Kind::S3};
    if (text == "t3") return {Kind::T3};
    if (text == "s1xs2") return {Kind::S1xS2};
    if (text == "rp3") return {Kind::RP3};
    if (text == "sphere2" || text == "s2") return {Kind::Sphere2};
    if (text.rfind("circle", 0) == 0) {
      const auto digits = text.substr(6);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6)
        throw Error(ErrorCode::BadParameter, "circle needs a vertex count, e.g. circle3");
      return {Kind::Circle, std::stoi(digits)};
    }
    throw Error(ErrorCode::UnknownName, "no manifold named '" + text + "'");
  }
};

namespace detail {

/// Rebuilds K with the orientation given by its fundamental cycle.
inline SimplicialComplex oriented(const SimplicialComplex& K) {
  const auto z = fundamental_cycle(K);
  return SimplicialComplex::from_simplices(K.simplices(K.dim()), z.coeffs);
}

inline SimplicialComplex simplex_boundary(int n) {
  std::vector<Simplex> faces;
  std::vector<int> signs;
  Simplex full(n + 1);
  for (int i = 0; i <= n; ++i) full[i] = i;
  for (int i = 0; i <= n; ++i) {
    faces.push_back(drop(full, i));
    signs.push_back(i % 2 ? -1 : 1);
  }
  return SimplicialComplex::from_simplices(faces, signs);
}

inline SimplicialComplex circle(int n) {
  if (n < 3) throw Error(ErrorCode::BadParameter, "circle needs at least 3 vertices, got " + std::to_string(n));
  std::vector<Simplex> edges;
  std::vector<int> signs;
  for (int i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1});
    signs.push_back(1);
  }
  edges.push_back({0, n - 1});
  signs.push_back(-1);
  return SimplicialComplex::from_simplices(edges, signs);
}

}  // namespace detail

/// Staircase (shuffle) triangulation of |K| x |L|.
///
/// Vertex (a, b) gets label a * |V(L)| + b. Each pair of maximal simplices
/// contributes one simplex per monotone lattice path through their vertex
/// grid. When both factors carry an orientation the product is oriented by
/// the cross product of fundamental cycles: each staircase is signed by the
/// parity of its shuffle.
inline SimplicialComplex ordered_product(const SimplicialComplex& K, const SimplicialComplex& L) {
  const int nl = static_cast<int>(L.num_vertices());
  const bool orient = !K.top_orientation().empty() && !L.top_orientation().empty();
  std::vector<Simplex> out;
  std::vector<int> signs;

  for (const auto& sigma : K.maximal_simplices()) {
    for (const auto& tau : L.maximal_simplices()) {
      const int p = static_cast<int>(sigma.size()) - 1;
      const int q = static_cast<int>(tau.size()) - 1;
      int base_sign = 1;
      if (orient) {
        if (p != K.dim() || q != L.dim()) continue;
        base_sign = K.top_orientation()[*K.index_of(sigma)] * L.top_orientation()[*L.index_of(tau)];
      }
      // A path is a choice of which p of the p+q steps move along sigma.
      const int steps = p + q;
      for (unsigned mask = 0; mask < (1u << steps); ++mask) {
        if (__builtin_popcount(mask) != p) continue;
        int i = 0, j = 0, inversions = 0, tau_steps = 0;
        Simplex s{sigma[0] * nl + tau[0]};
        for (int step = 0; step < steps; ++step) {
          if (mask & (1u << step)) {
            ++i;
            inversions += tau_steps;
          } else {
            ++j;
            ++tau_steps;
          }
          s.push_back(sigma[i] * nl + tau[j]);
        }
        out.push_back(std::move(s));
        signs.push_back(base_sign * (inversions % 2 ? -1 : 1));
      }
    }
  }
  if (orient) return SimplicialComplex::from_simplices(out, signs);
  return SimplicialComplex::from_simplices(out);
}

/// Closed oriented complex for the named manifold. RP3 is the embedded
/// 11-vertex fixture; T3 and S1xS2 are staircase products of circles and
/// the tetrahedron boundary.
inline SimplicialComplex generate(const ManifoldName& name) {
  using Kind = ManifoldName::Kind;
  switch (name.kind) {
    case Kind::Circle: return detail::circle(name.n);
    case Kind::Sphere2: return detail::simplex_boundary(3);
    case Kind::S3: return detail::simplex_boundary(4);
    case Kind::T3: {
      const auto c = detail::circle(3);
      return ordered_product(ordered_product(c, c), c);
    }
    case Kind::S1xS2: return ordered_product(detail::circle(3), detail::simplex_boundary(3));
    case Kind::RP3:
      return detail::oriented(SimplicialComplex::from_simplices(fixtures::rp3_tetrahedra()));
  }
  throw Error(ErrorCode::UnknownName, "unsupported manifold kind");
}

inline SimplicialComplex generate(const std::string& name) { return generate(ManifoldName::parse(name)); }

}  // namespace cohobs
