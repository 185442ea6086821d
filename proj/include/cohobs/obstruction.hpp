#pragma once

#include "cohobs/bundle.hpp"
#include "cohobs/cup.hpp"
#include "cohobs/homology.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace cohobs {

/// A closed 1-form standing for a vertical symmetry of the bundle of
/// connections: contracting the symmetry into the universal curvature gives
/// back the pulled-back form.
struct VerticalSymmetry {
  RealCochain gamma;
  std::string provenance;
};

inline VerticalSymmetry symmetry_from_oneform(const SimplicialComplex& K, RealCochain gamma,
                                              std::string provenance = {}, const Tolerance& tol = {}) {
  if (gamma.degree != 1)
    throw Error(ErrorCode::DegreeOutOfRange, "symmetry needs a 1-form, got degree " + std::to_string(gamma.degree));
  if (gamma.size() != K.count(1)) throw Error(ErrorCode::BaseMismatch, "1-form length does not match the complex");
  detail::require_closed(K, gamma, tol);
  return {std::move(gamma), std::move(provenance)};
}

/// 2 <gamma cup F, [X]> with F the curvature of A.
inline double obstruction_pairing(const SimplicialComplex& K, const VerticalSymmetry& sym, const U1Bundle& bundle,
                                  const Connection& A) {
  detail::check_base(K, bundle);
  if (sym.gamma.size() != K.count(1)) throw Error(ErrorCode::BaseMismatch, "symmetry lives on a different complex");
  return 2.0 * pair_with_fundamental(K, cup(K, sym.gamma, curvature(bundle, A)));
}

/// Coordinates of the class of 2 (gamma cup F) in the top-degree basis.
inline Eigen::VectorXd obstruction_class(const SimplicialComplex& K, const VerticalSymmetry& sym,
                                         const U1Bundle& bundle, const Connection& A) {
  detail::check_base(K, bundle);
  fundamental_cycle(K);
  auto w = cup(K, sym.gamma, curvature(bundle, A));
  for (auto& x : w.values) x *= 2.0;
  return class_coordinates(K, w);
}

/// Largest pairing a connection whose curvature is within the flatness
/// tolerance could produce against gamma.
inline double pairing_tolerance(const SimplicialComplex& K, const RealCochain& gamma, double flat_tol) {
  return 2.0 * static_cast<double>(K.count(K.dim())) * std::max(1.0, norm_inf(gamma)) * flat_tol;
}

struct Witness {
  VerticalSymmetry symmetry;
  std::size_t basis_index = 0;
  double pairing = 0.0;
  double tolerance = 0.0;
};

struct SharpnessVerdict {
  std::string bundle_id;
  bool flat_exists = false;
  std::optional<Witness> witness;
  std::vector<double> all_pairings;
  std::vector<double> pairing_tolerances;
  Eigen::VectorXd predicted_pairings;
  FlatResult flat;
};

/// Decides whether the bundle admits a flat connection (a global critical
/// section) and checks that this happens exactly when every obstruction
/// pairing over the H^1 basis vanishes. Without a flat connection, the
/// witness is the basis form with the largest predicted pairing from the
/// duality matrix applied to the real Chern class.
inline SharpnessVerdict sharpness_check(const SimplicialComplex& K, const U1Bundle& bundle, const Tolerance& tol = {},
                                        std::string bundle_id = {}) {
  detail::check_base(K, bundle);
  detail::require_closed_oriented_3(K);

  SharpnessVerdict v;
  v.bundle_id = std::move(bundle_id);
  v.flat = flatten(bundle, tol);
  v.flat_exists = v.flat.flat;

  const auto h1 = cohomology_basis_real(K, 1);
  const auto duality = poincare_pairing_matrix(K, 1);
  v.predicted_pairings = 2.0 * duality.values * v.flat.obstruction_coords;

  for (std::size_t i = 0; i < h1->size(); ++i) {
    const VerticalSymmetry sym{h1->representatives[i], "H^1 basis element " + std::to_string(i)};
    v.all_pairings.push_back(obstruction_pairing(K, sym, bundle, v.flat.A_star));
    v.pairing_tolerances.push_back(pairing_tolerance(K, sym.gamma, v.flat.tolerance));
  }

  bool all_small = true;
  for (std::size_t i = 0; i < v.all_pairings.size(); ++i)
    all_small = all_small && std::abs(v.all_pairings[i]) <= v.pairing_tolerances[i];

  if (!v.flat_exists && v.predicted_pairings.size() > 0) {
    Eigen::Index best = 0;
    v.predicted_pairings.cwiseAbs().maxCoeff(&best);
    const auto i = static_cast<std::size_t>(best);
    v.witness = Witness{{h1->representatives[i], "H^1 basis element " + std::to_string(i)},
                        i, v.all_pairings[i], v.pairing_tolerances[i]};
  }

  const bool witness_ok = v.witness && std::abs(v.witness->pairing) > v.witness->tolerance;
  if (v.flat_exists != all_small || v.flat_exists == witness_ok)
    throw Error(ErrorCode::VerdictInconsistent,
                std::string("flat connection ") + (v.flat_exists ? "exists" : "does not exist") +
                    " but obstruction pairings " + (all_small ? "all vanish" : "do not all vanish") +
                    (v.flat_exists ? "" : (witness_ok ? "" : " and no witness was found")));
  return v;
}

}  // namespace cohobs
