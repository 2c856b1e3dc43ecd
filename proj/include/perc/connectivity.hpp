#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "perc/lattice.hpp"
#include "perc/sampler.hpp"

namespace perc {

enum class Color : std::uint8_t { Yellow = 0, Blue = 1 };

inline Color opposite(Color c) { return c == Color::Blue ? Color::Yellow : Color::Blue; }
inline bool has_color(const Coloring& c, int s, Color col) { return c.blue(s) == (col == Color::Blue); }

// Union-find with path compression and union by size.
class UnionFind {
 public:
  explicit UnionFind(int n = 0) { reset(n); }
  void reset(int n);
  int find(int x);
  bool unite(int a, int b);
  int size_of(int x) { return size_[find(x)]; }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
};

// Clusters of one color. cluster[s] is a dense id or -1 for the other color.
struct ClusterLabeling {
  Color color = Color::Blue;
  std::vector<std::int32_t> cluster;
  std::vector<std::uint32_t> arc_flags;  // bit k: cluster touches arc k
  std::vector<std::int32_t> sizes;
  int cluster_count() const { return static_cast<int>(arc_flags.size()); }
};

ClusterLabeling label_clusters(const TriangularDomain& d, const Coloring& c, Color color);
// Reuses out's storage; uf is scratch.
void label_clusters(const TriangularDomain& d, const Coloring& c, Color color, ClusterLabeling& out,
                    UnionFind& uf);

bool crossing_exists(const ClusterLabeling& l, int arc_a, int arc_b);
int count_spanning_clusters(const ClusterLabeling& l, int arc_a, int arc_b);

// Sites at hex distance r <= d < R from a centre site. The inner ring is
// d = r, the outer ring d = R-1, both counterclockwise.
struct Annulus {
  Axial center;
  int r = 0;
  int R = 0;
  std::vector<int> sites;
  std::vector<int> inner;
  std::vector<int> outer;
  std::vector<std::int32_t> local;  // domain site -> index in sites, or -1
};

// Site nearest the centroid of the domain's sites.
Axial central_site(const TriangularDomain& d);
Annulus make_annulus(const TriangularDomain& d, Axial center, int r, int R);

// Disjoint monochromatic crossings of the annulus whose colors, in
// counterclockwise order, match the cyclic pattern of 'B'/'Y' characters.
bool arm_event(const TriangularDomain& d, const Coloring& c, const Annulus& a, std::string_view pattern);
bool arm_event(const TriangularDomain& d, const Coloring& c, int r, int R, std::string_view pattern);

// Interfaces walked from the inner ring that reach the outer ring, as inner
// ring edge positions (edge i joins inner[i] and inner[i+1]).
std::vector<int> crossing_interfaces(const TriangularDomain& d, const Coloring& c, const Annulus& a);

}  // namespace perc
