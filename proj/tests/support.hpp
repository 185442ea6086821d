#pragma once

#include "cohobs/complex.hpp"
#include "cohobs/homology.hpp"
#include "cohobs/linalg.hpp"
#include "cohobs/manifolds.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace cohobs;

inline const SimplicialComplex& fixture(const std::string& name) {
  static std::map<std::string, SimplicialComplex> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, generate(name)).first;
  return it->second;
}

inline const std::vector<std::string>& closed_fixtures() {
  static const std::vector<std::string> names{"s3", "t3", "s1xs2", "rp3"};
  return names;
}

using Dense = std::vector<std::vector<Integer>>;

inline Dense dense(const IncidenceMatrix& m) {
  Dense out(m.rows(), std::vector<Integer>(m.cols()));
  for (int c = 0; c < m.outerSize(); ++c)
    for (IncidenceMatrix::InnerIterator it(m, c); it; ++it) out[it.row()][it.col()] = it.value();
  return out;
}

inline Dense transpose(const Dense& m) {
  if (m.empty()) return {};
  Dense t(m[0].size(), std::vector<Integer>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

/// Rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t exact_rank(Dense m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

inline long long mod(const Integer& x, long long q) {
  long long r = static_cast<long long>(Integer(x % q));
  return r < 0 ? r + q : r;
}

/// log_p |coker(M) (x) Z/p^e|, by elimination over the local ring Z/p^e
/// with pivots of least p-valuation.
inline long long coker_log_order(const Dense& M, long long p, int e) {
  long long q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  const std::size_t rows = M.size();
  const std::size_t cols = rows ? M[0].size() : 0;
  std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = mod(M[i][j], q);
  auto valuation = [&](long long x) {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) x /= p, ++v;
    return v;
  };
  auto inverse = [&](long long u) {
    for (long long x = 1; x < q; ++x)
      if (u * x % q == 1) return x;
    return 0LL;
  };
  long long log_order = 0;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    int best = e;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (valuation(m[i][j]) < best) best = valuation(m[i][j]), bi = i, bj = j;
    if (best == e) break;
    std::swap(m[t], m[bi]);
    for (auto& row : m) std::swap(row[t], row[bj]);
    long long pv = 1;
    for (int i = 0; i < best; ++i) pv *= p;
    const long long unit_inv = inverse(m[t][t] / pv);
    for (std::size_t i = t + 1; i < rows; ++i) {
      const long long f = (m[i][t] / pv) * unit_inv % q;
      for (std::size_t j = t; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[t][j]) % q + q) % q;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      const long long f = (m[t][j] / pv) * unit_inv % q;
      for (std::size_t i = t; i < rows; ++i) m[i][j] = ((m[i][j] - f * m[i][t]) % q + q) % q;
    }
    log_order += best;
  }
  log_order += static_cast<long long>(rows - t) * e;
  return log_order;
}

inline std::size_t rank_mod(const Dense& M, long long p) {
  return M.size() - static_cast<std::size_t>(coker_log_order(M, p, 1));
}

/// Integer cochain with entries in [-range, range].
inline IntCochain random_int_cochain(const SimplicialComplex& K, int k, std::mt19937_64& rng, int range = 3) {
  std::uniform_int_distribution<int> u(-range, range);
  IntCochain c{k, std::vector<Integer>(K.count(k))};
  for (auto& x : c.values) x = u(rng);
  return c;
}

inline RealCochain random_real_cochain(const SimplicialComplex& K, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealCochain c{k, std::vector<double>(K.count(k))};
  for (auto& x : c.values) x = u(rng);
  return c;
}

/// Random integer k-cocycle: a random combination of free generators plus
/// a random coboundary. `zero_class` drops the generator part.
inline IntCochain random_int_cocycle(const SimplicialComplex& K, int k, std::mt19937_64& rng, bool zero_class = false) {
  IntCochain c = zero_cochain<Integer>(K, k);
  if (k > 0) c = apply_d(K, random_int_cochain(K, k - 1, rng, 2));
  if (!zero_class) {
    std::uniform_int_distribution<int> u(-2, 2);
    for (const auto& g : integral_cohomology_basis(K, k)->generators) {
      const Integer n = u(rng);
      for (std::size_t i = 0; i < c.size(); ++i) c.values[i] += n * g.values[i];
    }
  }
  return c;
}

inline RealCochain scaled(RealCochain c, double s) {
  for (auto& x : c.values) x *= s;
  return c;
}

inline RealCochain sum(RealCochain a, const RealCochain& b, double s = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a.values[i] += s * b.values[i];
  return a;
}

inline double max_abs_diff(const RealCochain& a, const RealCochain& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

/// Alexander-Whitney cup evaluated from a tuple-keyed table rather than the
/// complex's index.
inline std::map<Simplex, double> table(const SimplicialComplex& K, const RealCochain& c) {
  std::map<Simplex, double> t;
  for (std::size_t i = 0; i < c.size(); ++i) t[K.simplex(c.degree, i)] = c.values[i];
  return t;
}

inline double brute_triple_pairing(const SimplicialComplex& K, const RealCochain& a, const RealCochain& b,
                                   const RealCochain& c) {
  const auto ta = table(K, a), tb = table(K, b), tc = table(K, c);
  const auto z = fundamental_cycle(K);
  double acc = 0.0;
  for (std::size_t t = 0; t < K.count(3); ++t) {
    const auto& s = K.simplex(3, t);
    acc += z.coeffs[t] * ta.at({s[0], s[1]}) * tb.at({s[1], s[2]}) * tc.at({s[2], s[3]});
  }
  return acc;
}

}  // namespace testing_support
