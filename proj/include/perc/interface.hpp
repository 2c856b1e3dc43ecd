#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "perc/connectivity.hpp"
#include "perc/lattice.hpp"
#include "perc/sampler.hpp"

namespace perc {

enum class PathKind : std::uint8_t { Exploration, LowestCrossing, OuterBoundary };

// Arc indices of a three-mark domain: arc k runs from mark k to mark k+1.
// The separation event for alpha = tau^k uses A = arc k, far arc B = arc k+1
// and C = arc k+2; its crossing runs from C to A and hugs B.
inline int far_arc(int alpha) { return (alpha + 1) % 3; }

struct InterfacePath {
  PathKind kind = PathKind::Exploration;
  Color color = Color::Blue;
  // Exploration: crossed lattice edges as (left, right) vertex ids, and the
  // faces entered, one per step.
  std::vector<std::pair<int, int>> edges;
  std::vector<int> faces;
  // Crossings: simple site path from arc C to arc A, extended at each end by
  // a ghost of that arc. Outer boundary: yellow half then blue half.
  std::vector<int> sites;
  int start_ghost = -1;
  int end_ghost = -1;
  int near_arc = -1;
  bool sentinel = false;
  // Outer boundary: touch vertex on arc bc and the index where the blue half starts.
  int w = -1;
  std::size_t split = 0;
};

// Dual walk from mark a to mark b. Arcs a..b (counterclockwise) carry the
// virtual color `own`, the rest the opposite color; the walk keeps `own` on
// its right.
InterfacePath trace_exploration(const TriangularDomain& d, int mark_a, int mark_b, const Coloring& c,
                                Color own = Color::Blue);

// Crossing of color `color` from arc near+1 to arc near+2 closest to arc near.
// Sentinel (single vertex at mark near+2) when no crossing exists.
InterfacePath lowest_crossing(const TriangularDomain& d, const Coloring& c, int near, Color color);
// Lowest blue crossing for marks (a,b,c): near arc ab, from bc to ca.
InterfacePath lowest_crossing(const TriangularDomain& d, const Coloring& c);

// Lowest blue crossing for (a,b,c) joined with the highest yellow crossing
// for (c,a,b); w is the bc end of the blue half.
InterfacePath outer_boundary(const TriangularDomain& d, const Coloring& c);

// w read off the exploration from c to a: the blue vertex at the last step
// (from the start) whose yellow vertex lies on arc bc; mark c if that vertex
// is a ghost.
int endpoint_from_exploration(const TriangularDomain& d, const Coloring& c);

// Faces (over all total_face_count faces) reachable from the rim faces of the
// crossing's near arc without crossing an edge of the extended crossing.
std::vector<std::uint8_t> below_region(const TriangularDomain& d, const InterfacePath& crossing);

// Event Q_alpha(z), alpha = tau^k with k in {0,1,2}.
bool separates(const TriangularDomain& d, const Coloring& c, int alpha, int z);

// Separation indicator for many faces at once. A face is separated iff an odd
// number of crossing edges lies on its path to the near-arc rim in a fixed
// spanning tree of the face graph.
class SeparationField {
 public:
  SeparationField(const TriangularDomain& d, int near);
  // Restricts evaluation to `targets` and their tree ancestors.
  void restrict_to(const std::vector<int>& targets);
  // out[f] = 1 iff face f is separated; faces outside the restriction are 0.
  void evaluate(const InterfacePath& crossing, std::vector<std::uint8_t>& out);
  int near() const { return near_; }

 private:
  const TriangularDomain* d_;
  int near_;
  std::vector<std::int32_t> order_;   // faces in tree order, roots first
  std::vector<std::int32_t> parent_;  // -1 for roots
  std::vector<std::int32_t> edge_;    // edge to parent
  std::vector<std::uint8_t> blocked_;
};

}  // namespace perc
