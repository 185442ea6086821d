#include "cohobs/complex.hpp"
#include "cohobs/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cohobs;
using namespace testing_support;

namespace {

SimplicialComplex tetra_boundary() { return SimplicialComplex::from_simplices({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

SimplicialComplex four_simplex_boundary() {
  std::vector<Simplex> tops;
  for (int skip = 0; skip < 5; ++skip) {
    Simplex s;
    for (int v = 0; v < 5; ++v)
      if (v != skip) s.push_back(v);
    tops.push_back(s);
  }
  return SimplicialComplex::from_simplices(tops);
}

// Five-triangle strip whose ends are glued with a half twist.
SimplicialComplex mobius_band() {
  return SimplicialComplex::from_simplices({{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {0, 3, 4}, {0, 1, 4}});
}

// Six-vertex real projective plane.
SimplicialComplex projective_plane() {
  return SimplicialComplex::from_simplices(
      {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Complex, TetrahedronBoundaryFVector) {
  EXPECT_EQ(tetra_boundary().f_vector(), (std::vector<std::size_t>{4, 6, 4}));
}

TEST(Complex, FourSimplexBoundaryFVector) {
  EXPECT_EQ(four_simplex_boundary().f_vector(), (std::vector<std::size_t>{5, 10, 10, 5}));
}

TEST(Complex, CanonicalOrderIsLexicographic) {
  const auto K = four_simplex_boundary();
  for (int k = 0; k <= K.dim(); ++k)
    EXPECT_TRUE(std::is_sorted(K.simplices(k).begin(), K.simplices(k).end()));
  EXPECT_EQ(K.simplex(1, 0), (Simplex{0, 1}));
  EXPECT_EQ(K.simplex(1, 9), (Simplex{3, 4}));
}

TEST(Complex, ValidationErrors) {
  EXPECT_EQ(code_of([] { SimplicialComplex::from_simplices({{2, 1, 3}}); }), ErrorCode::NonIncreasingTuple);
  EXPECT_EQ(code_of([] { SimplicialComplex::from_simplices({{0, 1}, {0, 1}}); }), ErrorCode::DuplicateSimplex);
  EXPECT_EQ(code_of([] { SimplicialComplex::from_simplices({{0, 2}}); }), ErrorCode::DanglingVertex);
  EXPECT_EQ(code_of([] { SimplicialComplex::from_simplices({{0, 1, 2}}, std::vector<int>{1}); }),
            ErrorCode::OrientationNotACycle);
}

TEST(Complex, LowerSimplicesMayBeListed) {
  const auto K = SimplicialComplex::from_simplices({{0, 1, 2}, {2, 3}, {4}});
  EXPECT_EQ(K.f_vector(), (std::vector<std::size_t>{5, 4, 1}));
  EXPECT_EQ(K.maximal_simplices().size(), 3u);
}

TEST(Complex, EdgeIncidenceRows) {
  const auto d0 = coboundary_matrix(tetra_boundary(), 0);
  ASSERT_EQ(d0.rows(), 6);
  ASSERT_EQ(d0.cols(), 4);
  const auto m = dense(d0);
  for (const auto& row : m) {
    int plus = 0, minus = 0, zero = 0;
    for (const auto& x : row) (x == 1 ? plus : x == -1 ? minus : zero)++;
    EXPECT_EQ(plus, 1);
    EXPECT_EQ(minus, 1);
    EXPECT_EQ(zero, 2);
  }
}

TEST(Complex, CoboundarySquaresToZero) {
  for (const auto& name : closed_fixtures()) {
    const auto& K = fixture(name);
    for (int k = 0; k + 1 < K.dim(); ++k) {
      const IncidenceMatrix dd = coboundary_matrix(K, k + 1) * coboundary_matrix(K, k);
      EXPECT_EQ(dd.norm(), 0.0) << name << " k=" << k;
    }
  }
}

TEST(Complex, RankOfMiddleCoboundaryOnS3) {
  EXPECT_EQ(exact_rank(dense(coboundary_matrix(four_simplex_boundary(), 2))), 4u);
  EXPECT_EQ(exact_rank(dense(coboundary_matrix(four_simplex_boundary(), 1))), 6u);
}

TEST(Complex, CoboundaryDegreeRange) {
  const auto K = tetra_boundary();
  EXPECT_EQ(code_of([&] { coboundary_matrix(K, 2); }), ErrorCode::DegreeOutOfRange);
  EXPECT_EQ(code_of([&] { coboundary_matrix(K, -1); }), ErrorCode::DegreeOutOfRange);
}

TEST(Complex, ApplyDOnZeroAndExact) {
  std::mt19937_64 rng(3);
  const auto& K = fixture("t3");
  EXPECT_EQ(norm_inf(apply_d(K, zero_cochain<double>(K, 1))), 0.0);
  const auto f = random_int_cochain(K, 0, rng);
  const auto ddf = apply_d(K, apply_d(K, f));
  for (const auto& x : ddf.values) EXPECT_TRUE(x.is_zero());
}

TEST(Complex, VertexIndicatorHitsIncidentEdges) {
  const auto K = tetra_boundary();
  for (int v = 0; v < 4; ++v) {
    IntCochain e = zero_cochain<Integer>(K, 0);
    e.values[v] = 1;
    const auto de = apply_d(K, e);
    int nonzero = 0;
    for (std::size_t i = 0; i < de.size(); ++i) {
      const auto& edge = K.simplex(1, i);
      const bool incident = edge[0] == v || edge[1] == v;
      if (incident) {
        EXPECT_EQ(abs(de.values[i]), 1);
        // d(e_v)(a b) = e_v(b) - e_v(a)
        EXPECT_EQ(de.values[i], edge[1] == v ? 1 : -1);
        ++nonzero;
      } else {
        EXPECT_TRUE(de.values[i].is_zero());
      }
    }
    EXPECT_EQ(nonzero, 3);
  }
}

TEST(Complex, FundamentalCycleIsACycle) {
  for (const auto& K : {tetra_boundary(), four_simplex_boundary()}) {
    const auto z = fundamental_cycle(K);
    for (int c : z.coeffs) EXPECT_EQ(std::abs(c), 1);
    for (int b : boundary(K, z).coeffs) EXPECT_EQ(b, 0);
  }
  for (const auto& name : closed_fixtures()) {
    const auto& K = fixture(name);
    for (int b : boundary(K, fundamental_cycle(K)).coeffs) EXPECT_EQ(b, 0) << name;
  }
}

TEST(Complex, TetrahedronBoundaryAlternatingSigns) {
  const auto K = SimplicialComplex::from_simplices({{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}, std::vector<int>{1, -1, 1, -1});
  for (int b : boundary(K, fundamental_cycle(K)).coeffs) EXPECT_EQ(b, 0);
}

TEST(Complex, StoredOrientationIsHonoured) {
  const auto K = four_simplex_boundary();
  auto z = fundamental_cycle(K);
  std::vector<int> flipped;
  for (int c : z.coeffs) flipped.push_back(-c);
  const auto L = SimplicialComplex::from_simplices(K.simplices(3), flipped);
  EXPECT_EQ(fundamental_cycle(L).coeffs, flipped);
}

TEST(Complex, NonOrientableFixtures) {
  EXPECT_EQ(code_of([] { fundamental_cycle(mobius_band()); }), ErrorCode::NonOrientable);
  EXPECT_EQ(code_of([] { fundamental_cycle(projective_plane()); }), ErrorCode::NonOrientable);
}

TEST(Complex, ComplexWithBoundaryIsNotClosed) {
  EXPECT_EQ(code_of([] { fundamental_cycle(SimplicialComplex::from_simplices({{0, 1, 2}, {1, 2, 3}})); }),
            ErrorCode::NotClosed);
  EXPECT_EQ(code_of([] { fundamental_cycle(SimplicialComplex::from_simplices({{0, 1, 2}, {1, 2, 3}, {1, 2, 4}})); }),
            ErrorCode::NotClosed);
}

TEST(Complex, StarsInSpheres) {
  const auto K = tetra_boundary();
  for (int v = 0; v < 4; ++v) {
    const auto s = star_subcomplex(K, v);
    EXPECT_EQ(s.complex.f_vector(), (std::vector<std::size_t>{4, 6, 3}));
  }
  const auto L = four_simplex_boundary();
  for (int v = 0; v < 5; ++v) {
    const auto s = star_subcomplex(L, v);
    EXPECT_EQ(s.complex.num_vertices(), 5u);
    EXPECT_EQ(s.complex.count(3), 4u);
  }
  EXPECT_EQ(code_of([&] { star_subcomplex(K, 99); }), ErrorCode::UnknownVertex);
}

TEST(Complex, StarRestrictionMatchesGlobalIndices) {
  std::mt19937_64 rng(5);
  const auto& K = fixture("s1xs2");
  const auto w = random_real_cochain(K, 1, rng);
  const auto s = star_subcomplex(K, 7);
  const auto local = restrict_to(s, w);
  for (std::size_t i = 0; i < local.size(); ++i) {
    Simplex g;
    for (int v : s.complex.simplex(1, i)) g.push_back(s.vertices[v]);
    EXPECT_EQ(local.values[i], w.values[*K.index_of(g)]);
  }
}

TEST(Complex, SerializationRoundTrip) {
  for (const auto& name : closed_fixtures()) {
    const auto& K = fixture(name);
    const auto L = load_complex(dump_complex(K));
    EXPECT_EQ(L, K) << name;
    EXPECT_EQ(fundamental_cycle(L).coeffs, fundamental_cycle(K).coeffs);
    EXPECT_EQ(dump_complex(L), dump_complex(K));
  }
}

TEST(Complex, LoadErrors) {
  EXPECT_EQ(code_of([] { load_complex("{not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_complex(R"({"dim": 2, "top_simplices": [[0,1]]})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_complex(R"({"dim": 1, "top_simplices": [[1,0]]})"); }), ErrorCode::NonIncreasingTuple);
}

TEST(Complex, CochainRoundTrip) {
  std::mt19937_64 rng(9);
  const auto& K = fixture("t3");
  auto c = random_int_cochain(K, 2, rng);
  c.values[0] = Integer("123456789012345678901234567890");
  EXPECT_EQ(load_int_cochain(dump_cochain(c)), c);
  const auto r = random_real_cochain(K, 1, rng);
  EXPECT_EQ(load_real_cochain(dump_cochain(r)), r);
  EXPECT_EQ(code_of([&] { load_int_cochain(dump_cochain(r)); }), ErrorCode::ParseError);
}
