#pragma once

#include "cohobs/complex.hpp"

#include <vector>

namespace cohobs::fixtures {

/// Vertex-minimal triangulation of the real projective 3-space: 11 vertices,
/// 51 edges, 80 triangles, 40 tetrahedra. Produced by tools/gen_rp3_fixture.py
/// (antipodal quotient of the subdivided 4-dimensional cross-polytope boundary,
/// reduced by bistellar flips).
inline const std::vector<Simplex>& rp3_tetrahedra() {
  static const std::vector<Simplex> tets = {
      {0, 1, 4, 5},
      {0, 1, 4, 8},
      {0, 1, 5, 6},
      {0, 1, 6, 7},
      {0, 1, 7, 8},
      {0, 2, 3, 7},
      {0, 2, 3, 9},
      {0, 2, 7, 8},
      {0, 2, 8, 10},
      {0, 2, 9, 10},
      {0, 3, 6, 7},
      {0, 3, 6, 9},
      {0, 4, 5, 10},
      {0, 4, 8, 10},
      {0, 5, 6, 9},
      {0, 5, 9, 10},
      {1, 2, 3, 5},
      {1, 2, 3, 9},
      {1, 2, 5, 6},
      {1, 2, 6, 10},
      {1, 2, 9, 10},
      {1, 3, 4, 5},
      {1, 3, 4, 8},
      {1, 3, 8, 9},
      {1, 6, 7, 10},
      {1, 7, 8, 9},
      {1, 7, 9, 10},
      {2, 3, 5, 7},
      {2, 5, 6, 8},
      {2, 5, 7, 8},
      {2, 6, 8, 10},
      {3, 4, 5, 10},
      {3, 4, 8, 10},
      {3, 5, 7, 10},
      {3, 6, 7, 10},
      {3, 6, 8, 9},
      {3, 6, 8, 10},
      {5, 6, 8, 9},
      {5, 7, 8, 9},
      {5, 7, 9, 10}
  };
  return tets;
}

}  // namespace cohobs::fixtures
