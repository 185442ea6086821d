#pragma once

#include "cohobs/error.hpp"
#include "cohobs/integer.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace cohobs {

/// Strictly increasing tuple of vertex labels.
using Simplex = std::vector<int>;

/// Integer incidence matrix; rows are (k+1)-simplices, columns k-simplices.
using IncidenceMatrix = Eigen::SparseMatrix<int>;

/// Degree-k cochain aligned with the canonical k-simplex index.
template <class T>
struct Cochain {
  int degree = 0;
  std::vector<T> values;

  std::size_t size() const { return values.size(); }
  bool operator==(const Cochain&) const = default;
};

using RealCochain = Cochain<double>;
using IntCochain = Cochain<Integer>;

/// Integer chain aligned with the canonical k-simplex index.
struct Chain {
  int degree = 0;
  std::vector<int> coeffs;

  bool operator==(const Chain&) const = default;
};

namespace detail {

inline void validate_tuple(const Simplex& s) {
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty simplex tuple");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] <= s[i - 1]) {
      std::string t = "(";
      for (std::size_t j = 0; j < s.size(); ++j) t += (j ? "," : "") + std::to_string(s[j]);
      throw Error(ErrorCode::NonIncreasingTuple, "simplex " + t + ")");
    }
  }
}

inline Simplex drop(const Simplex& s, std::size_t i) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != i) f.push_back(s[j]);
  return f;
}

}  // namespace detail

/// Immutable finite simplicial complex with a canonical simplex order.
///
/// Simplices of each degree are stored sorted lexicographically; the position
/// in that list is the canonical index used by every cochain and matrix.
/// Copies share the underlying data, so a copy is cheap and compares equal to
/// the original by identity as well as by content.
class SimplicialComplex {
 public:
  SimplicialComplex() : data_(std::make_shared<Data>()) {}

  /// Builds the face closure of the given simplices. `orientation`, when
  /// present, carries one sign per entry of `maximal`; every entry must then
  /// be top-dimensional and the signed sum must be a cycle.
  static SimplicialComplex from_simplices(const std::vector<Simplex>& maximal,
                                          const std::optional<std::vector<int>>& orientation = {}) {
    auto data = std::make_shared<Data>();
    if (maximal.empty()) throw Error(ErrorCode::ParseError, "complex has no simplices");

    int max_vertex = -1;
    int dim = 0;
    for (const auto& s : maximal) {
      detail::validate_tuple(s);
      if (s.front() < 0) throw Error(ErrorCode::DanglingVertex, "negative vertex label " + std::to_string(s.front()));
      max_vertex = std::max(max_vertex, s.back());
      dim = std::max(dim, static_cast<int>(s.size()) - 1);
    }
    {
      auto sorted = maximal;
      std::sort(sorted.begin(), sorted.end());
      auto dup = std::adjacent_find(sorted.begin(), sorted.end());
      if (dup != sorted.end()) {
        std::string t;
        for (int v : *dup) t += (t.empty() ? "" : ",") + std::to_string(v);
        throw Error(ErrorCode::DuplicateSimplex, "simplex (" + t + ") listed twice");
      }
    }

    data->dim = dim;
    data->simplices.assign(dim + 1, {});
    for (const auto& s : maximal) {
      const auto n = s.size();
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1u << i)) f.push_back(s[i]);
        data->simplices[f.size() - 1].push_back(std::move(f));
      }
    }
    for (auto& level : data->simplices) {
      std::sort(level.begin(), level.end());
      level.erase(std::unique(level.begin(), level.end()), level.end());
    }
    if (static_cast<int>(data->simplices[0].size()) != max_vertex + 1) {
      std::vector<bool> used(max_vertex + 1, false);
      for (const auto& v : data->simplices[0]) used[v[0]] = true;
      int gap = static_cast<int>(std::find(used.begin(), used.end(), false) - used.begin());
      throw Error(ErrorCode::DanglingVertex, "vertex label " + std::to_string(gap) +
                                                 " is unused; labels must be contiguous from 0");
    }

    SimplicialComplex K(std::move(data));
    K.build_faces();
    K.build_maximal();

    if (orientation) {
      if (orientation->size() != maximal.size())
        throw Error(ErrorCode::ParseError, "orientation length does not match top_simplices");
      std::vector<int> signs(K.count(dim), 0);
      for (std::size_t i = 0; i < maximal.size(); ++i) {
        const int e = (*orientation)[i];
        if (e != 1 && e != -1) throw Error(ErrorCode::ParseError, "orientation entries must be +1 or -1");
        if (static_cast<int>(maximal[i].size()) != dim + 1)
          throw Error(ErrorCode::ParseError, "orientation given for a simplex below top dimension");
        signs[*K.index_of(maximal[i])] = e;
      }
      if (!K.is_cycle(signs))
        throw Error(ErrorCode::OrientationNotACycle, "signed sum of top simplices has nonzero boundary");
      K.data_->top_orientation = std::move(signs);
    }
    return K;
  }

  int dim() const { return data_->dim; }
  std::size_t num_vertices() const { return count(0); }
  std::size_t count(int k) const {
    return (k < 0 || k >= static_cast<int>(data_->simplices.size())) ? 0 : data_->simplices[k].size();
  }
  const std::vector<Simplex>& simplices(int k) const { return data_->simplices.at(k); }
  const Simplex& simplex(int k, std::size_t i) const { return data_->simplices.at(k)[i]; }

  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (int k = 0; k <= dim(); ++k) f.push_back(count(k));
    return f;
  }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    const int k = static_cast<int>(s.size()) - 1;
    if (k < 0 || k >= static_cast<int>(data_->simplices.size())) return std::nullopt;
    const auto& level = data_->simplices[k];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
  }

  /// Canonical index of the i-th face (vertex i removed) of k-simplex `idx`.
  std::size_t face(int k, std::size_t idx, std::size_t i) const {
    return data_->faces[k][idx * (k + 1) + i];
  }

  /// Simplices not contained in any other simplex, in canonical order by
  /// degree (descending) then index.
  const std::vector<Simplex>& maximal_simplices() const { return data_->maximal; }
  const std::vector<std::size_t>& maximal_containing(int vertex) const {
    return data_->vertex_maximal.at(vertex);
  }

  /// Stored orientation of top simplices (empty when none was supplied).
  const std::vector<int>& top_orientation() const { return data_->top_orientation; }

  bool same_as(const SimplicialComplex& other) const { return data_ == other.data_; }
  bool operator==(const SimplicialComplex& other) const {
    return same_as(other) || (data_->simplices == other.data_->simplices &&
                              data_->top_orientation == other.data_->top_orientation);
  }

  /// Returns an attached value computed once per complex and shared by copies.
  template <class T, class Make>
  std::shared_ptr<const T> memoize(const std::string& key, Make&& make) const {
    {
      std::lock_guard lock(data_->memo_mutex);
      if (auto it = data_->memo.find(key); it != data_->memo.end())
        return std::static_pointer_cast<const T>(it->second);
    }
    auto value = std::make_shared<const T>(make());
    std::lock_guard lock(data_->memo_mutex);
    auto [it, inserted] = data_->memo.emplace(key, value);
    return std::static_pointer_cast<const T>(it->second);
  }

  /// True when the top-degree chain with the given coefficients has zero boundary.
  bool is_cycle(const std::vector<int>& coeffs) const {
    const int n = dim();
    if (n == 0) return true;
    std::vector<long long> boundary(count(n - 1), 0);
    for (std::size_t t = 0; t < count(n); ++t)
      for (int i = 0; i <= n; ++i)
        boundary[face(n, t, i)] += (i % 2 ? -1 : 1) * coeffs[t];
    return std::all_of(boundary.begin(), boundary.end(), [](long long b) { return b == 0; });
  }

 private:
  struct Data {
    int dim = 0;
    std::vector<std::vector<Simplex>> simplices;
    std::vector<std::vector<std::size_t>> faces;
    std::vector<Simplex> maximal;
    std::vector<std::vector<std::size_t>> vertex_maximal;
    std::vector<int> top_orientation;
    std::mutex memo_mutex;
    std::map<std::string, std::shared_ptr<const void>> memo;
  };

  explicit SimplicialComplex(std::shared_ptr<Data> data) : data_(std::move(data)) {}

  void build_faces() {
    auto& d = *data_;
    d.faces.assign(d.dim + 1, {});
    for (int k = 1; k <= d.dim; ++k) {
      d.faces[k].reserve(d.simplices[k].size() * (k + 1));
      for (const auto& s : d.simplices[k])
        for (int i = 0; i <= k; ++i) d.faces[k].push_back(*index_of(detail::drop(s, i)));
    }
  }

  void build_maximal() {
    auto& d = *data_;
    std::vector<std::vector<bool>> covered(d.dim + 1);
    for (int k = 0; k <= d.dim; ++k) covered[k].assign(d.simplices[k].size(), false);
    for (int k = d.dim; k >= 1; --k)
      for (std::size_t t = 0; t < d.simplices[k].size(); ++t)
        for (int i = 0; i <= k; ++i) covered[k - 1][face(k, t, i)] = true;
    for (int k = d.dim; k >= 0; --k)
      for (std::size_t t = 0; t < d.simplices[k].size(); ++t)
        if (!covered[k][t]) d.maximal.push_back(d.simplices[k][t]);
    d.vertex_maximal.assign(d.simplices[0].size(), {});
    for (std::size_t m = 0; m < d.maximal.size(); ++m)
      for (int v : d.maximal[m]) d.vertex_maximal[v].push_back(m);
  }

  std::shared_ptr<Data> data_;
};

/// Coboundary d_k : C^k -> C^{k+1}. Entry (tau, sigma) is (-1)^i when sigma
/// is tau with its i-th vertex removed.
inline IncidenceMatrix coboundary_matrix(const SimplicialComplex& K, int k) {
  if (k < 0 || k >= K.dim())
    throw Error(ErrorCode::DegreeOutOfRange, "coboundary degree " + std::to_string(k) +
                                                 " outside [0, " + std::to_string(K.dim()) + ")");
  std::vector<Eigen::Triplet<int>> entries;
  entries.reserve(K.count(k + 1) * (k + 2));
  for (std::size_t t = 0; t < K.count(k + 1); ++t)
    for (int i = 0; i <= k + 1; ++i)
      entries.emplace_back(static_cast<int>(t), static_cast<int>(K.face(k + 1, t, i)), i % 2 ? -1 : 1);
  IncidenceMatrix d(static_cast<Eigen::Index>(K.count(k + 1)), static_cast<Eigen::Index>(K.count(k)));
  d.setFromTriplets(entries.begin(), entries.end());
  return d;
}

template <class T>
Cochain<T> zero_cochain(const SimplicialComplex& K, int k) {
  return Cochain<T>{k, std::vector<T>(K.count(k), T(0))};
}

/// Applies the coboundary in the cochain's own coefficient ring.
template <class T>
Cochain<T> apply_d(const SimplicialComplex& K, const Cochain<T>& w) {
  const int k = w.degree;
  if (k < 0 || k >= K.dim())
    throw Error(ErrorCode::DegreeOutOfRange, "cannot apply d to a degree-" + std::to_string(k) +
                                                 " cochain on a " + std::to_string(K.dim()) + "-complex");
  if (w.size() != K.count(k)) throw Error(ErrorCode::BaseMismatch, "cochain length does not match the complex");
  Cochain<T> out{k + 1, std::vector<T>(K.count(k + 1), T(0))};
  for (std::size_t t = 0; t < K.count(k + 1); ++t) {
    T acc(0);
    for (int i = 0; i <= k + 1; ++i) {
      if (i % 2) acc -= w.values[K.face(k + 1, t, i)];
      else acc += w.values[K.face(k + 1, t, i)];
    }
    out.values[t] = acc;
  }
  return out;
}

/// Boundary of a chain, computed over the integers.
inline Chain boundary(const SimplicialComplex& K, const Chain& z) {
  if (z.degree < 1 || z.degree > K.dim())
    throw Error(ErrorCode::DegreeOutOfRange, "boundary of degree-" + std::to_string(z.degree) + " chain");
  Chain out{z.degree - 1, std::vector<int>(K.count(z.degree - 1), 0)};
  for (std::size_t t = 0; t < K.count(z.degree); ++t)
    for (int i = 0; i <= z.degree; ++i)
      out.coeffs[K.face(z.degree, t, i)] += (i % 2 ? -1 : 1) * z.coeffs[t];
  return out;
}

/// Signed sum of top simplices with zero boundary.
///
/// Requires every codimension-one face to lie in exactly two top simplices.
/// Signs propagate across shared faces; a contradiction means the complex is
/// not orientable, which is reported even when the complex has boundary.
/// A stored orientation is returned as is.
inline Chain fundamental_cycle(const SimplicialComplex& K) {
  return *K.memoize<Chain>("fundamental_cycle", [&]() -> Chain {
    const int n = K.dim();
    Chain z{n, std::vector<int>(K.count(n), 0)};
    if (!K.top_orientation().empty()) {
      z.coeffs = K.top_orientation();
      return z;
    }
    for (const auto& m : K.maximal_simplices())
      if (static_cast<int>(m.size()) != n + 1)
        throw Error(ErrorCode::NotClosed, "complex is not pure of dimension " + std::to_string(n));
    if (n == 0) {
      std::fill(z.coeffs.begin(), z.coeffs.end(), 1);
      return z;
    }
    std::vector<std::vector<std::size_t>> cofaces(K.count(n - 1));
    for (std::size_t t = 0; t < K.count(n); ++t)
      for (int i = 0; i <= n; ++i) cofaces[K.face(n, t, i)].push_back(t);
    for (std::size_t f = 0; f < cofaces.size(); ++f)
      if (cofaces[f].size() > 2)
        throw Error(ErrorCode::NotClosed, "codimension-one face " + std::to_string(f) + " lies in " +
                                              std::to_string(cofaces[f].size()) + " top simplices");
    auto incidence = [&](std::size_t t, std::size_t f) {
      for (int i = 0; i <= n; ++i)
        if (K.face(n, t, i) == f) return i % 2 ? -1 : 1;
      return 0;
    };
    for (std::size_t seed = 0; seed < K.count(n); ++seed) {
      if (z.coeffs[seed] != 0) continue;
      z.coeffs[seed] = 1;
      std::queue<std::size_t> pending;
      pending.push(seed);
      while (!pending.empty()) {
        const auto t = pending.front();
        pending.pop();
        for (int i = 0; i <= n; ++i) {
          const auto f = K.face(n, t, i);
          if (cofaces[f].size() < 2) continue;
          const auto u = cofaces[f][0] == t ? cofaces[f][1] : cofaces[f][0];
          const int want = -z.coeffs[t] * (i % 2 ? -1 : 1) * incidence(u, f);
          if (z.coeffs[u] == 0) {
            z.coeffs[u] = want;
            pending.push(u);
          } else if (z.coeffs[u] != want) {
            throw Error(ErrorCode::NonOrientable, "sign propagation contradicts itself at top simplex " +
                                                      std::to_string(u));
          }
        }
      }
    }
    for (std::size_t f = 0; f < cofaces.size(); ++f)
      if (cofaces[f].size() != 2)
        throw Error(ErrorCode::NotClosed, "codimension-one face " + std::to_string(f) + " lies in " +
                                              std::to_string(cofaces[f].size()) + " top simplex");
    return z;
  });
}

/// A subcomplex relabelled to contiguous vertices, with maps back to the
/// parent's canonical indices. The relabelling is order preserving, so each
/// `to_global[k]` is strictly increasing.
struct SubComplex {
  SimplicialComplex complex;
  std::vector<int> vertices;
  std::vector<std::vector<std::size_t>> to_global;

  /// Local index of a parent k-simplex, if it belongs to this subcomplex.
  std::optional<std::size_t> local_index(int k, std::size_t global) const {
    if (k < 0 || k >= static_cast<int>(to_global.size())) return std::nullopt;
    const auto& g = to_global[k];
    auto it = std::lower_bound(g.begin(), g.end(), global);
    if (it == g.end() || *it != global) return std::nullopt;
    return static_cast<std::size_t>(it - g.begin());
  }
};

/// Closed star of a simplex: every simplex containing it, plus all faces.
inline SubComplex closed_star(const SimplicialComplex& K, const Simplex& s) {
  if (!K.index_of(s)) throw Error(ErrorCode::UnknownVertex, "simplex is not in the complex");
  std::vector<Simplex> tops;
  for (std::size_t m : K.maximal_containing(s.front())) {
    const auto& cand = K.maximal_simplices()[m];
    if (std::includes(cand.begin(), cand.end(), s.begin(), s.end())) tops.push_back(cand);
  }
  std::vector<int> verts;
  for (const auto& t : tops) verts.insert(verts.end(), t.begin(), t.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto local = [&](int v) { return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
  std::vector<Simplex> local_tops;
  for (const auto& t : tops) {
    Simplex l;
    for (int v : t) l.push_back(local(v));
    local_tops.push_back(std::move(l));
  }
  SubComplex sub{SimplicialComplex::from_simplices(local_tops), verts, {}};
  sub.to_global.resize(sub.complex.dim() + 1);
  for (int k = 0; k <= sub.complex.dim(); ++k) {
    for (const auto& ls : sub.complex.simplices(k)) {
      Simplex g;
      for (int v : ls) g.push_back(verts[v]);
      sub.to_global[k].push_back(*K.index_of(g));
    }
  }
  return sub;
}

inline SubComplex star_subcomplex(const SimplicialComplex& K, int v) {
  if (v < 0 || static_cast<std::size_t>(v) >= K.num_vertices())
    throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " is not in the complex");
  return closed_star(K, Simplex{v});
}

/// Restriction of a parent cochain to a subcomplex.
template <class T>
Cochain<T> restrict_to(const SubComplex& sub, const Cochain<T>& w) {
  Cochain<T> out{w.degree, {}};
  const auto& idx = sub.to_global.at(w.degree);
  out.values.reserve(idx.size());
  for (auto g : idx) out.values.push_back(w.values[g]);
  return out;
}

}  // namespace cohobs
