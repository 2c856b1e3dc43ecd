#include "perc/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace perc {

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676;

// Edge slot directions per face orientation (slot i is opposite vertex i).
constexpr std::array<FaceDirection, 3> kUpSlots = {FaceDirection::D30, FaceDirection::D150,
                                                   FaceDirection::D270};
constexpr std::array<FaceDirection, 3> kDownSlots = {FaceDirection::D90, FaceDirection::D330,
                                                     FaceDirection::D210};

std::array<Axial, 3> face_vertices(Axial a, bool up) {
  if (up) return {a, Axial{a.x + 1, a.y}, Axial{a.x, a.y + 1}};
  return {Axial{a.x + 1, a.y}, Axial{a.x, a.y + 1}, Axial{a.x + 1, a.y + 1}};
}

// Anchor and orientation of the face across slot s.
std::pair<Axial, bool> slot_neighbor(Axial a, bool up, int s) {
  if (up) {
    switch (s) {
      case 0: return {a, false};
      case 1: return {Axial{a.x - 1, a.y}, false};
      default: return {Axial{a.x, a.y - 1}, false};
    }
  }
  switch (s) {
    case 0: return {Axial{a.x, a.y + 1}, true};
    case 1: return {Axial{a.x + 1, a.y}, true};
    default: return {a, true};
  }
}

double unit_angle(Axial a, Point c) {
  return std::atan2(a.y * kSqrt3Half - c.y, a.x + 0.5 * a.y - c.x);
}

}  // namespace

int offset_index(Axial d) {
  for (int k = 0; k < 6; ++k)
    if (kNeighborOffsets[k] == d) return k;
  return -1;
}

int hex_distance(Axial a, Axial b) {
  const int dx = a.x - b.x, dy = a.y - b.y;
  return std::max({std::abs(dx), std::abs(dy), std::abs(dx + dy)});
}

FaceDirection rotate_direction(FaceDirection eta) {
  return static_cast<FaceDirection>((static_cast<int>(eta) + 2) % 6);
}

FaceDirection negate_direction(FaceDirection eta) {
  return static_cast<FaceDirection>((static_cast<int>(eta) + 3) % 6);
}

int direction_degrees(FaceDirection eta) { return 30 + 60 * static_cast<int>(eta); }

bool is_up_direction(FaceDirection eta) { return static_cast<int>(eta) % 2 == 0; }

std::string DomainSpec::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "shape=" << shape;
  if (shape == "triangle") os << ";n=" << n;
  else os << ";w=" << w << ";h=" << h;
  os << ";delta=" << delta << ";marks=";
  for (std::size_t i = 0; i < marks.size(); ++i)
    os << (i ? "|" : "") << marks[i].x << ',' << marks[i].y;
  return os.str();
}

Point TriangularDomain::to_plane(Axial a) const { return to_plane(a.x, a.y); }

Point TriangularDomain::to_plane(double x, double y) const {
  return {spec_.delta * (x + 0.5 * y), spec_.delta * y * kSqrt3Half};
}

int TriangularDomain::vertex_at(Axial a) const {
  const int gx = a.x - origin_.x, gy = a.y - origin_.y;
  if (gx < 0 || gy < 0 || gx >= gw_ || gy >= gh_) return -1;
  return grid_[static_cast<std::size_t>(gy) * gw_ + gx];
}

int TriangularDomain::site_at(Axial a) const {
  const int v = vertex_at(a);
  return (v >= 0 && v < site_count_) ? v : -1;
}

std::vector<int> TriangularDomain::arc_sites(int k) const {
  const int n = static_cast<int>(loop_.size());
  const int from = loop_pos_[marks_[k]];
  const int to = loop_pos_[marks_[(k + 1) % arc_count()]];
  std::vector<int> out;
  for (int p = from;; p = (p + 1) % n) {
    out.push_back(loop_[p]);
    if (p == to) break;
  }
  return out;
}

Point TriangularDomain::face_center(int f) const {
  const Face& fc = faces_[f];
  const double s = fc.up ? 1.0 / 3.0 : 2.0 / 3.0;
  return to_plane(fc.anchor.x + s, fc.anchor.y + s);
}

int TriangularDomain::face_at(Axial a, bool up) const {
  const int gx = a.x - origin_.x, gy = a.y - origin_.y;
  if (gx < 0 || gy < 0 || gx >= gw_ || gy >= gh_) return -1;
  return face_grid_[2 * (static_cast<std::size_t>(gy) * gw_ + gx) + (up ? 0 : 1)];
}

FaceDirection TriangularDomain::slot_direction(int f, int s) const {
  return faces_[f].up ? kUpSlots[s] : kDownSlots[s];
}

int TriangularDomain::edge_id(int u, int v) const {
  const int k = offset_index(coords_[v] - coords_[u]);
  if (k < 0) throw std::invalid_argument("edge_id: vertices are not adjacent");
  return k < 3 ? 3 * u + k : 3 * v + (k - 3);
}

bool TriangularDomain::rim_touches_arc(int f, int arc) const {
  for (int v : faces_[f].v)
    if (is_ghost(v) && ghost_arc(v) == arc) return true;
  return false;
}

std::vector<std::pair<int, FaceDirection>> TriangularDomain::face_adjacency(int f) const {
  std::vector<std::pair<int, FaceDirection>> out;
  for (int s = 0; s < 3; ++s) {
    const int g = face_nbrs_[f][s];
    if (g >= 0 && g < interior_faces_) out.emplace_back(g, slot_direction(f, s));
  }
  return out;
}

int TriangularDomain::face_step(int f, FaceDirection eta) const {
  for (int s = 0; s < 3; ++s)
    if (slot_direction(f, s) == eta) {
      const int g = face_nbrs_[f][s];
      return (g >= 0 && g < interior_faces_) ? g : -1;
    }
  return -1;
}

class DomainBuilder {
 public:
  static TriangularDomain build(DomainSpec spec, const std::vector<Axial>& sites) {
    TriangularDomain d;
    d.spec_ = std::move(spec);
    d.site_count_ = static_cast<int>(sites.size());
    d.coords_ = sites;

    int minx = sites[0].x, maxx = minx, miny = sites[0].y, maxy = miny;
    for (Axial a : sites) {
      minx = std::min(minx, a.x); maxx = std::max(maxx, a.x);
      miny = std::min(miny, a.y); maxy = std::max(maxy, a.y);
    }
    d.origin_ = {minx - 3, miny - 3};
    d.gw_ = maxx - minx + 7;
    d.gh_ = maxy - miny + 7;
    d.grid_.assign(static_cast<std::size_t>(d.gw_) * d.gh_, -1);
    auto cell = [&](Axial a) -> std::int32_t& {
      return d.grid_[static_cast<std::size_t>(a.y - d.origin_.y) * d.gw_ + (a.x - d.origin_.x)];
    };
    for (int i = 0; i < d.site_count_; ++i) cell(sites[i]) = i;

    // Ghost layer.
    for (int i = 0; i < d.site_count_; ++i)
      for (Axial o : kNeighborOffsets) {
        const Axial b = sites[i] + o;
        if (cell(b) < 0) {
          cell(b) = static_cast<int>(d.coords_.size());
          d.coords_.push_back(b);
        }
      }
    const int nv = d.vertex_count();
    d.nbrs_.resize(nv);
    for (int v = 0; v < nv; ++v)
      for (int k = 0; k < 6; ++k) d.nbrs_[v][k] = d.vertex_at(d.coords_[v] + kNeighborOffsets[k]);

    // Boundary loop, counterclockwise about the site centroid.
    Point c{0, 0};
    for (Axial a : sites) { c.x += a.x + 0.5 * a.y; c.y += a.y * kSqrt3Half; }
    c.x /= d.site_count_; c.y /= d.site_count_;
    auto by_angle = [&](std::vector<int>& ids) {
      std::sort(ids.begin(), ids.end(), [&](int u, int v) {
        return unit_angle(d.coords_[u], c) < unit_angle(d.coords_[v], c);
      });
    };
    std::vector<int> loop;
    for (int i = 0; i < d.site_count_; ++i) {
      int inside = 0;
      for (int k = 0; k < 6; ++k) inside += (d.nbrs_[i][k] >= 0 && d.nbrs_[i][k] < d.site_count_);
      if (inside < 6) loop.push_back(i);
    }
    by_angle(loop);

    // Marks.
    if (d.spec_.marks.size() < 2 || d.spec_.marks.size() > 4)
      throw std::invalid_argument("domain needs 2 to 4 marks");
    std::vector<int> pos(d.site_count_, -1);
    for (std::size_t p = 0; p < loop.size(); ++p) pos[loop[p]] = static_cast<int>(p);
    for (Axial m : d.spec_.marks) {
      const int s = d.site_at(m);
      if (s < 0 || pos[s] < 0) throw std::invalid_argument("mark is not a boundary site");
      d.marks_.push_back(s);
    }
    std::rotate(loop.begin(), loop.begin() + pos[d.marks_[0]], loop.end());
    d.loop_ = loop;
    d.loop_pos_.assign(d.site_count_, -1);
    for (std::size_t p = 0; p < loop.size(); ++p) d.loop_pos_[loop[p]] = static_cast<int>(p);
    for (std::size_t k = 1; k < d.marks_.size(); ++k)
      if (d.loop_pos_[d.marks_[k]] <= d.loop_pos_[d.marks_[k - 1]])
        throw std::invalid_argument("marks must be distinct and counterclockwise");

    // Closed arcs.
    const int arcs = d.arc_count();
    std::vector<std::uint32_t> closed(d.site_count_, 0);
    for (int k = 0; k < arcs; ++k)
      for (int s : d.arc_sites(k)) closed[s] |= 1u << k;

    // Ghost ring and arc assignment.
    for (int v = d.site_count_; v < nv; ++v) d.ring_.push_back(v);
    by_angle(d.ring_);
    const int ng = nv - d.site_count_;
    d.ghost_arc_.assign(ng, -1);
    std::map<int, std::vector<int>> corner_groups;  // mark index -> ghosts
    for (int v = d.site_count_; v < nv; ++v) {
      std::uint32_t m = ~0u;
      std::vector<int> adj;
      for (int u : d.nbrs_[v])
        if (u >= 0 && u < d.site_count_) { m &= closed[u]; adj.push_back(u); }
      m &= (1u << arcs) - 1u;
      if (std::popcount(m) == 1) {
        d.ghost_arc_[v - d.site_count_] = std::countr_zero(m);
        continue;
      }
      int mark = -1;
      for (int u : adj)
        for (int k = 0; k < arcs; ++k)
          if (d.marks_[k] == u) {
            if (mark >= 0 && mark != k) throw std::logic_error("ghost adjacent to two marks");
            mark = k;
          }
      if (m == 0 || mark < 0) throw std::logic_error("ghost without an arc");
      corner_groups[mark].push_back(v);
    }
    std::vector<int> ring_pos(nv, -1);
    for (int i = 0; i < ng; ++i) ring_pos[d.ring_[i]] = i;
    for (auto& [mark, group] : corner_groups) {
      std::vector<char> in(ng, 0);
      for (int v : group) in[ring_pos[v]] = 1;
      int start = -1;
      for (int v : group)
        if (!in[(ring_pos[v] + ng - 1) % ng]) start = ring_pos[v];
      const int n = static_cast<int>(group.size());
      for (int i = 0; i < n; ++i) {
        const int v = d.ring_[(start + i) % ng];
        d.ghost_arc_[v - d.site_count_] = (i < n / 2) ? (mark + arcs - 1) % arcs : mark;
      }
    }

    d.touch_.assign(d.site_count_, 0);
    for (int s = 0; s < d.site_count_; ++s)
      for (int u : d.nbrs_[s])
        if (u >= d.site_count_) d.touch_[s] |= 1u << d.ghost_arc(u);

    // Faces: interior first, then rim.
    std::vector<Face> interior, rim;
    for (int y = d.origin_.y; y < d.origin_.y + d.gh_ - 1; ++y)
      for (int x = d.origin_.x; x < d.origin_.x + d.gw_ - 1; ++x)
        for (bool up : {true, false}) {
          Face f;
          f.anchor = {x, y};
          f.up = up;
          int nsite = 0;
          bool ok = true;
          const auto vs = face_vertices(f.anchor, up);
          for (int i = 0; i < 3; ++i) {
            f.v[i] = d.vertex_at(vs[i]);
            if (f.v[i] < 0) ok = false;
            else nsite += f.v[i] < d.site_count_;
          }
          if (!ok || nsite == 0) continue;
          (nsite == 3 ? interior : rim).push_back(f);
        }
    d.interior_faces_ = static_cast<int>(interior.size());
    d.faces_ = std::move(interior);
    d.faces_.insert(d.faces_.end(), rim.begin(), rim.end());
    const int nf = d.total_face_count();
    d.face_grid_.assign(2 * d.grid_.size(), -1);
    for (int f = 0; f < nf; ++f) {
      const Face& fc = d.faces_[f];
      d.face_grid_[2 * (static_cast<std::size_t>(fc.anchor.y - d.origin_.y) * d.gw_ +
                        (fc.anchor.x - d.origin_.x)) + (fc.up ? 0 : 1)] = f;
    }
    d.face_nbrs_.resize(nf);
    d.face_edges_.resize(nf);
    for (int f = 0; f < nf; ++f) {
      const Face& fc = d.faces_[f];
      for (int s = 0; s < 3; ++s) {
        const auto [a, up] = slot_neighbor(fc.anchor, fc.up, s);
        d.face_nbrs_[f][s] = d.face_at(a, up);
        d.face_edges_[f][s] = d.edge_id(fc.v[(s + 1) % 3], fc.v[(s + 2) % 3]);
      }
    }
    return d;
  }
};

TriangularDomain build_triangle(int n, double delta, std::optional<int> x_mark) {
  if (n < 1) throw std::invalid_argument("build_triangle: N must be positive");
  DomainSpec spec;
  spec.shape = "triangle";
  spec.n = n;
  spec.delta = delta > 0 ? delta : 1.0 / n;
  spec.marks = {Axial{0, n}, Axial{0, 0}};
  if (x_mark) {
    if (*x_mark <= 0 || *x_mark >= n) throw std::invalid_argument("x mark must lie inside arc bc");
    spec.marks.push_back(Axial{*x_mark, 0});
  }
  spec.marks.push_back(Axial{n, 0});
  std::vector<Axial> sites;
  for (int y = 0; y <= n; ++y)
    for (int x = 0; x + y <= n; ++x) sites.push_back({x, y});
  return DomainBuilder::build(std::move(spec), sites);
}

TriangularDomain build_parallelogram(int w, int h, double delta, std::vector<Axial> marks) {
  if (w < 1 || h < 1) throw std::invalid_argument("build_parallelogram: sides must be positive");
  if (!(delta > 0)) throw std::invalid_argument("build_parallelogram: delta must be positive");
  DomainSpec spec;
  spec.shape = "parallelogram";
  spec.w = w;
  spec.h = h;
  spec.delta = delta;
  spec.marks = marks.empty() ? std::vector<Axial>{{0, 0}, {w, 0}, {w, h}, {0, h}} : std::move(marks);
  std::vector<Axial> sites;
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x) sites.push_back({x, y});
  return DomainBuilder::build(std::move(spec), sites);
}

}  // namespace perc
