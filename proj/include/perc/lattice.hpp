#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace perc {

// Axial lattice coordinates; plane point is delta * (x + y/2, y*sqrt(3)/2).
struct Axial {
  int x = 0;
  int y = 0;
  friend bool operator==(Axial a, Axial b) { return a.x == b.x && a.y == b.y; }
  friend Axial operator+(Axial a, Axial b) { return {a.x + b.x, a.y + b.y}; }
  friend Axial operator-(Axial a, Axial b) { return {a.x - b.x, a.y - b.y}; }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Neighbour offsets in counterclockwise order, starting along the real axis.
inline constexpr std::array<Axial, 6> kNeighborOffsets = {
    Axial{1, 0}, Axial{0, 1}, Axial{-1, 1}, Axial{-1, 0}, Axial{0, -1}, Axial{1, -1}};

// Index k in [0,6) of the offset equal to d, or -1.
int offset_index(Axial d);

// Lattice hex distance.
int hex_distance(Axial a, Axial b);

// Direction from a face center to an adjacent face center: 30 + 60k degrees.
enum class FaceDirection : std::uint8_t { D30, D90, D150, D210, D270, D330 };

FaceDirection rotate_direction(FaceDirection eta);  // +120 degrees
FaceDirection negate_direction(FaceDirection eta);  // +180 degrees
int direction_degrees(FaceDirection eta);
bool is_up_direction(FaceDirection eta);  // 30, 150, 270

// Shape record embedded in reports.
struct DomainSpec {
  std::string shape;  // "triangle" | "parallelogram"
  int n = 0;          // triangle side
  int w = 0;          // parallelogram sides
  int h = 0;
  double delta = 0.0;
  std::vector<Axial> marks;
  std::string to_text() const;
};

// A lattice triangle. Vertex i is opposite edge slot i.
struct Face {
  std::array<std::int32_t, 3> v{};
  Axial anchor;
  bool up = true;
};

// Immutable discrete domain. Vertices [0, site_count) are sites; vertices
// [site_count, vertex_count) are ghosts, the lattice points adjacent to the
// domain but outside it. Each ghost belongs to one boundary arc and carries
// that arc's boundary condition. Faces [0, face_count) are interior triangles;
// faces [face_count, total_face_count) are rim triangles mixing sites and
// ghosts.
class TriangularDomain {
 public:
  const DomainSpec& spec() const { return spec_; }
  double delta() const { return spec_.delta; }

  int site_count() const { return site_count_; }
  int ghost_count() const { return static_cast<int>(coords_.size()) - site_count_; }
  int vertex_count() const { return static_cast<int>(coords_.size()); }
  bool is_ghost(int v) const { return v >= site_count_; }

  Axial coord(int v) const { return coords_[v]; }
  Point plane(int v) const { return to_plane(coords_[v]); }
  Point to_plane(Axial a) const;
  Point to_plane(double x, double y) const;

  // Vertex id at a, or -1 outside sites and ghosts.
  int vertex_at(Axial a) const;
  int site_at(Axial a) const;
  // Neighbour vertex ids in offset order, -1 where the lattice point is neither.
  const std::array<std::int32_t, 6>& neighbors(int v) const { return nbrs_[v]; }

  int arc_count() const { return static_cast<int>(marks_.size()); }
  const std::vector<int>& marks() const { return marks_; }
  const std::vector<int>& boundary_loop() const { return loop_; }
  // Arc k runs counterclockwise from mark k to mark k+1, both included.
  std::vector<int> arc_sites(int k) const;
  int ghost_arc(int v) const { return ghost_arc_[v - site_count_]; }
  // Ghosts in counterclockwise ring order.
  const std::vector<int>& ghost_ring() const { return ring_; }
  // Bit k set iff the site is adjacent to a ghost of arc k.
  std::uint32_t touch_mask(int site) const { return touch_[site]; }
  bool touches(int site, int arc) const { return (touch_[site] >> arc) & 1u; }

  int face_count() const { return interior_faces_; }
  int total_face_count() const { return static_cast<int>(faces_.size()); }
  const Face& face(int f) const { return faces_[f]; }
  bool is_rim(int f) const { return f >= interior_faces_; }
  Point face_center(int f) const;
  int face_at(Axial anchor, bool up) const;
  // Face across edge slot s, any face kind, or -1.
  int face_neighbor(int f, int s) const { return face_nbrs_[f][s]; }
  FaceDirection slot_direction(int f, int s) const;
  // Edge id of slot s; edge ids are in [0, 3*vertex_count).
  int face_edge(int f, int s) const { return face_edges_[f][s]; }
  int edge_id(int u, int v) const;
  bool rim_touches_arc(int f, int arc) const;

  // Interior faces sharing an edge with f, with the direction towards each.
  std::vector<std::pair<int, FaceDirection>> face_adjacency(int f) const;
  // Interior face reached from f by stepping in direction eta, or -1.
  int face_step(int f, FaceDirection eta) const;

 private:
  friend class DomainBuilder;
  DomainSpec spec_;
  int site_count_ = 0;
  std::vector<Axial> coords_;
  std::vector<std::array<std::int32_t, 6>> nbrs_;
  Axial origin_;
  int gw_ = 0;
  int gh_ = 0;
  std::vector<std::int32_t> grid_;
  std::vector<std::int32_t> face_grid_;  // 2 per cell: up, down
  std::vector<int> loop_;
  std::vector<int> marks_;
  std::vector<int> loop_pos_;
  std::vector<int> ring_;
  std::vector<int> ghost_arc_;
  std::vector<std::uint32_t> touch_;
  int interior_faces_ = 0;
  std::vector<Face> faces_;
  std::vector<std::array<std::int32_t, 3>> face_nbrs_;
  std::vector<std::array<std::int32_t, 3>> face_edges_;
};

// Triangle {x,y >= 0, x+y <= N}; marks a<1>=(0,N), a<tau>=(0,0), a<tau^2>=(N,0).
// With x_mark, a fourth mark (x_mark, 0) splits arc a<tau>a<tau^2>.
// delta <= 0 selects 1/N.
TriangularDomain build_triangle(int n, double delta = 0.0,
                                std::optional<int> x_mark = std::nullopt);

// Parallelogram [0,W]x[0,H] in axial coordinates; marks are 2..4 boundary
// points listed counterclockwise. Empty marks selects the four corners
// (0,0), (W,0), (W,H), (0,H).
TriangularDomain build_parallelogram(int w, int h, double delta, std::vector<Axial> marks = {});

}  // namespace perc
