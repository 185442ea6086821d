#include "cohobs/cup.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cohobs;
using namespace testing_support;

namespace {

IntCochain int_sum(IntCochain a, const IntCochain& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a.values[i] += b.values[i];
  return a;
}

}  // namespace

TEST(Cup, ConstantOneIsTheUnit) {
  std::mt19937_64 rng(41);
  for (const auto& name : closed_fixtures()) {
    const auto& K = fixture(name);
    IntCochain one{0, std::vector<Integer>(K.count(0), 1)};
    for (int k = 0; k <= 3; ++k) {
      const auto b = random_int_cochain(K, k, rng);
      EXPECT_EQ(cup(K, one, b), b);
      EXPECT_EQ(cup(K, b, one), b);
    }
  }
}

TEST(Cup, DegreeOverflow) {
  const auto& K = fixture("t3");
  try {
    cup(K, zero_cochain<double>(K, 2), zero_cochain<double>(K, 2));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeOverflow);
  }
}

TEST(Cup, LeibnizRuleExactOverIntegers) {
  std::mt19937_64 rng(42);
  for (const auto& name : closed_fixtures()) {
    const auto& K = fixture(name);
    const std::pair<int, int> degrees[] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}, {2, 0}};
    for (int trial = 0; trial < 30; ++trial) {
      const auto [k, l] = degrees[trial % 6];
      const auto a = random_int_cochain(K, k, rng);
      const auto b = random_int_cochain(K, l, rng);
      const auto lhs = apply_d(K, cup(K, a, b));
      auto rhs = cup(K, apply_d(K, a), b);
      auto second = cup(K, a, apply_d(K, b));
      if (k % 2)
        for (auto& x : second.values) x = -x;
      EXPECT_EQ(lhs, int_sum(rhs, second)) << name << " k=" << k << " l=" << l;
    }
  }
}

TEST(Cup, RepresentativeIndependence) {
  std::mt19937_64 rng(43);
  for (const auto& name : {"t3", "s1xs2"}) {
    const auto& K = fixture(name);
    const auto b1 = cohomology_basis_real(K, 1);
    const auto b2 = cohomology_basis_real(K, 2);
    for (std::size_t i = 0; i < b1->size(); ++i)
      for (std::size_t j = 0; j < b2->size(); ++j) {
        const double base = pair_with_fundamental(K, cup(K, b1->representatives[i], b2->representatives[j]));
        const auto a = sum(b1->representatives[i], apply_d(K, random_real_cochain(K, 0, rng)));
        const auto b = sum(b2->representatives[j], apply_d(K, random_real_cochain(K, 1, rng)));
        EXPECT_NEAR(pair_with_fundamental(K, cup(K, a, b)), base, 1e-10);
      }
  }
}

TEST(Cup, GradedCommutativityOnClasses) {
  for (const auto& name : {"t3", "s1xs2"}) {
    const auto& K = fixture(name);
    const auto b1 = cohomology_basis_real(K, 1);
    const auto b2 = cohomology_basis_real(K, 2);
    for (std::size_t i = 0; i < b1->size(); ++i) {
      for (std::size_t j = 0; j < b1->size(); ++j) {
        const auto ab = class_coordinates(K, cup(K, b1->representatives[i], b1->representatives[j]));
        const auto ba = class_coordinates(K, cup(K, b1->representatives[j], b1->representatives[i]));
        EXPECT_LT((ab + ba).cwiseAbs().maxCoeff(), 1e-9);
      }
      for (std::size_t j = 0; j < b2->size(); ++j) {
        const double ab = pair_with_fundamental(K, cup(K, b1->representatives[i], b2->representatives[j]));
        const double ba = pair_with_fundamental(K, cup(K, b2->representatives[j], b1->representatives[i]));
        EXPECT_NEAR(ab, ba, 1e-10);
      }
    }
  }
}

TEST(Cup, TorusTripleProduct) {
  const auto& K = fixture("t3");
  const auto b = cohomology_basis_real(K, 1);
  ASSERT_EQ(b->size(), 3u);
  const auto& g = b->representatives;
  const double v = pair_with_fundamental(K, cup(K, cup(K, g[0], g[1]), g[2]));
  EXPECT_NEAR(std::abs(v), 1.0, 1e-12);
  EXPECT_NEAR(brute_triple_pairing(K, g[0], g[1], g[2]), v, 1e-12);
  // Any repeated factor gives zero.
  EXPECT_NEAR(pair_with_fundamental(K, cup(K, cup(K, g[0], g[0]), g[2])), 0.0, 1e-12);
  // The cup of two generators is a nonzero class of H^2.
  const auto c = class_coordinates(K, cup(K, g[0], g[1]));
  EXPECT_GT(c.cwiseAbs().maxCoeff(), 0.5);
  for (Eigen::Index i = 0; i < c.size(); ++i) EXPECT_NEAR(c[i], std::round(c[i]), 1e-9);
}

TEST(Cup, PairingExamples) {
  std::mt19937_64 rng(44);
  for (const auto& name : closed_fixtures()) {
    const auto& K = fixture(name);
    EXPECT_NEAR(pair_with_fundamental(K, apply_d(K, random_real_cochain(K, 2, rng))), 0.0, 1e-12);
    const auto z = fundamental_cycle(K);
    auto ind = zero_cochain<double>(K, 3);
    const auto t = static_cast<std::size_t>(std::find(z.coeffs.begin(), z.coeffs.end(), 1) - z.coeffs.begin());
    ind.values[t] = 1.0;
    EXPECT_EQ(pair_with_fundamental(K, ind), 1.0);
    const auto top = cohomology_basis_real(K, 3);
    ASSERT_EQ(top->size(), 1u);
    EXPECT_NEAR(std::abs(pair_with_fundamental(K, top->representatives[0])), 1.0, 1e-12) << name;
  }
}

TEST(Cup, PoincarePairingMatrices) {
  const auto t = poincare_pairing_matrix(fixture("t3"), 1);
  EXPECT_EQ(t.values.rows(), 3);
  EXPECT_EQ(t.values.cols(), 3);
  EXPECT_TRUE(t.nondegenerate);
  EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>(t.values).rank(), 3);

  const auto s = poincare_pairing_matrix(fixture("s1xs2"), 1);
  ASSERT_EQ(s.values.rows(), 1);
  EXPECT_NEAR(std::abs(s.values(0, 0)), 1.0, 1e-12);
  EXPECT_TRUE(s.nondegenerate);

  const auto e = poincare_pairing_matrix(fixture("s3"), 1);
  EXPECT_EQ(e.values.size(), 0);
  EXPECT_TRUE(e.nondegenerate);

  for (const auto& name : closed_fixtures())
    for (int k = 0; k <= 3; ++k) EXPECT_TRUE(poincare_pairing_matrix(fixture(name), k).nondegenerate) << name << k;
}

TEST(Cup, PairingMatrixIsGradedSymmetric) {
  for (const auto& name : {"t3", "s1xs2"}) {
    const auto a = poincare_pairing_matrix(fixture(name), 1);
    const auto b = poincare_pairing_matrix(fixture(name), 2);
    EXPECT_LT((a.values - b.values.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  }
}
