#include "perc/interface.hpp"

#include <stdexcept>

namespace perc {

namespace {

int floor_div3(int v) { return v >= 0 ? v / 3 : -((-v + 2) / 3); }

int face_of(const TriangularDomain& d, int a, int b, int c) {
  const int sx = d.coord(a).x + d.coord(b).x + d.coord(c).x;
  const int sy = d.coord(a).y + d.coord(b).y + d.coord(c).y;
  const bool up = ((sx % 3) + 3) % 3 == 1;
  return d.face_at({floor_div3(sx - (up ? 1 : 2)), floor_div3(sy - (up ? 1 : 2))}, up);
}

// Edge between a ghost of arc `left_arc` and a ghost of arc `right_arc` whose
// face ahead (with left on the left) contains a site.
std::pair<int, int> junction(const TriangularDomain& d, int left_arc, int right_arc) {
  for (int l : d.ghost_ring()) {
    if (d.ghost_arc(l) != left_arc) continue;
    for (int k = 0; k < 6; ++k) {
      const int r = d.neighbors(l)[k];
      if (r < d.site_count() || d.ghost_arc(r) != right_arc) continue;
      const int w = d.neighbors(l)[(k + 1) % 6];
      if (w >= 0 && w < d.site_count()) return {l, r};
    }
  }
  throw std::logic_error("no arc junction found");
}

struct Walker {
  const TriangularDomain& d;
  const Coloring& c;
  bool own_blue;
  std::uint32_t own_arcs;  // bit k: ghosts of arc k carry the own color

  bool own(int v) const {
    return v < d.site_count() ? c.blue(v) == own_blue : ((own_arcs >> d.ghost_arc(v)) & 1u);
  }

  // Calls visit(left, right, ahead) before every move. Returns the final edge.
  template <class Visit>
  std::pair<int, int> run(int left, int right, Visit&& visit) const {
    int k = offset_index(d.coord(right) - d.coord(left));
    const std::size_t guard = 3 * static_cast<std::size_t>(d.vertex_count()) + 16;
    for (std::size_t step = 0; step < guard; ++step) {
      const int w = d.neighbors(left)[(k + 1) % 6];
      visit(left, right, w);
      if (own(w)) {
        right = w;
        k = (k + 1) % 6;
      } else {
        left = w;
        k = (k + 5) % 6;
      }
      if (left >= d.site_count() && right >= d.site_count()) return {left, right};
    }
    throw std::logic_error("exploration did not terminate");
  }
};

std::uint32_t arc_range(int from_mark, int to_mark, int arcs) {
  std::uint32_t m = 0;
  for (int k = from_mark; k != to_mark; k = (k + 1) % arcs) m |= 1u << k;
  return m;
}

// Chronological loop erasure of a vertex walk.
std::vector<int> loop_erase(const std::vector<int>& walk, std::size_t from, std::size_t to,
                            std::vector<std::int32_t>& pos) {
  std::vector<int> out;
  for (std::size_t i = from; i < to; ++i) {
    const int v = walk[i];
    if (pos[v] >= 0) {
      for (std::size_t j = pos[v] + 1; j < out.size(); ++j) pos[out[j]] = -1;
      out.resize(pos[v] + 1);
    } else {
      pos[v] = static_cast<int>(out.size());
      out.push_back(v);
    }
  }
  for (int v : out) pos[v] = -1;
  return out;
}

}  // namespace

InterfacePath trace_exploration(const TriangularDomain& d, int mark_a, int mark_b, const Coloring& c,
                                Color own) {
  const int arcs = d.arc_count();
  if (mark_a == mark_b || mark_a < 0 || mark_b < 0 || mark_a >= arcs || mark_b >= arcs)
    throw std::invalid_argument("exploration needs two distinct marks");
  Walker wk{d, c, own == Color::Blue, arc_range(mark_a, mark_b, arcs)};
  auto [l0, r0] = junction(d, (mark_a + arcs - 1) % arcs, mark_a);
  InterfacePath path;
  path.kind = PathKind::Exploration;
  path.color = own;
  path.edges.emplace_back(l0, r0);
  const auto end = wk.run(l0, r0, [&](int l, int r, int w) {
    path.faces.push_back(face_of(d, l, r, w));
    if (wk.own(w)) path.edges.emplace_back(l, w);
    else path.edges.emplace_back(w, r);
  });
  if (d.ghost_arc(end.first) != mark_b || d.ghost_arc(end.second) != (mark_b + arcs - 1) % arcs)
    throw std::logic_error("exploration ended away from the target mark");
  return path;
}

InterfacePath lowest_crossing(const TriangularDomain& d, const Coloring& c, int near, Color color) {
  if (d.arc_count() != 3) throw std::invalid_argument("lowest_crossing needs three marks");
  const int arc_a = (near + 2) % 3, arc_c = (near + 1) % 3;
  thread_local std::vector<int> blues;
  thread_local std::vector<std::int32_t> pos;
  blues.clear();
  if (static_cast<int>(pos.size()) < d.vertex_count()) pos.assign(d.vertex_count(), -1);

  // Explore from the C|B junction to the B|A junction with C and A own-colored.
  Walker wk{d, c, color == Color::Blue, (1u << arc_a) | (1u << arc_c)};
  auto [l0, r0] = junction(d, near, arc_c);
  blues.push_back(r0);
  wk.run(l0, r0, [&](int, int, int w) {
    if (wk.own(w)) blues.push_back(w);
  });

  InterfacePath path;
  path.kind = PathKind::LowestCrossing;
  path.color = color;
  path.near_arc = near;
  const int n = d.site_count();
  std::size_t i = 0;
  while (!(blues[i] >= n && d.ghost_arc(blues[i]) == arc_a)) ++i;
  std::size_t j = i;
  while (!(blues[j - 1] >= n && d.ghost_arc(blues[j - 1]) == arc_c)) --j;
  // Now blues[j-1] is the last C ghost before the first A ghost blues[i].
  if (j == i) {
    path.sentinel = true;
    path.sites = {d.marks()[arc_a]};
    return path;
  }
  path.sites = loop_erase(blues, j, i, pos);
  path.start_ghost = blues[j - 1];
  path.end_ghost = blues[i];
  return path;
}

InterfacePath lowest_crossing(const TriangularDomain& d, const Coloring& c) {
  return lowest_crossing(d, c, 0, Color::Blue);
}

InterfacePath outer_boundary(const TriangularDomain& d, const Coloring& c) {
  const InterfacePath blue = lowest_crossing(d, c, 0, Color::Blue);
  const InterfacePath yellow = lowest_crossing(d, c, 2, Color::Yellow);
  InterfacePath path;
  path.kind = PathKind::OuterBoundary;
  path.sites = yellow.sites;
  path.split = path.sites.size();
  path.sites.insert(path.sites.end(), blue.sites.begin(), blue.sites.end());
  path.start_ghost = yellow.start_ghost;
  path.end_ghost = blue.end_ghost;
  path.sentinel = blue.sentinel;
  path.w = blue.sites.front();
  return path;
}

int endpoint_from_exploration(const TriangularDomain& d, const Coloring& c) {
  const InterfacePath e = trace_exploration(d, 2, 0, c, Color::Blue);
  for (auto it = e.edges.rbegin(); it != e.edges.rend(); ++it) {
    const auto [yellow, blue] = *it;
    if (yellow >= d.site_count() && d.ghost_arc(yellow) == 1)
      return blue < d.site_count() ? blue : d.marks()[2];
  }
  return d.marks()[2];
}

std::vector<std::uint8_t> below_region(const TriangularDomain& d, const InterfacePath& crossing) {
  const int nf = d.total_face_count();
  std::vector<std::uint8_t> seen(nf, 0);
  std::vector<std::uint8_t> blocked(3 * static_cast<std::size_t>(d.vertex_count()), 0);
  if (!crossing.sentinel) {
    std::vector<int> ext{crossing.start_ghost};
    ext.insert(ext.end(), crossing.sites.begin(), crossing.sites.end());
    ext.push_back(crossing.end_ghost);
    for (std::size_t i = 0; i + 1 < ext.size(); ++i) blocked[d.edge_id(ext[i], ext[i + 1])] = 1;
  }
  std::vector<int> queue;
  for (int f = d.face_count(); f < nf; ++f)
    if (d.rim_touches_arc(f, crossing.near_arc)) {
      seen[f] = 1;
      queue.push_back(f);
    }
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const int f = queue[h];
    for (int s = 0; s < 3; ++s) {
      const int g = d.face_neighbor(f, s);
      if (g < 0 || seen[g] || blocked[d.face_edge(f, s)]) continue;
      seen[g] = 1;
      queue.push_back(g);
    }
  }
  return seen;
}

bool separates(const TriangularDomain& d, const Coloring& c, int alpha, int z) {
  const InterfacePath crossing = lowest_crossing(d, c, far_arc(alpha), Color::Blue);
  if (crossing.sentinel) return false;
  return !below_region(d, crossing)[z];
}

SeparationField::SeparationField(const TriangularDomain& d, int near) : d_(&d), near_(near) {
  const int nf = d.total_face_count();
  parent_.assign(nf, -2);
  edge_.assign(nf, -1);
  for (int f = d.face_count(); f < nf; ++f)
    if (d.rim_touches_arc(f, near)) {
      parent_[f] = -1;
      order_.push_back(f);
    }
  for (std::size_t h = 0; h < order_.size(); ++h) {
    const int f = order_[h];
    for (int s = 0; s < 3; ++s) {
      const int g = d.face_neighbor(f, s);
      if (g < 0 || parent_[g] != -2) continue;
      parent_[g] = f;
      edge_[g] = d.face_edge(f, s);
      order_.push_back(g);
    }
  }
  blocked_.assign(3 * static_cast<std::size_t>(d.vertex_count()), 0);
}

void SeparationField::restrict_to(const std::vector<int>& targets) {
  std::vector<std::uint8_t> keep(parent_.size(), 0);
  for (int f : targets)
    for (int g = f; g >= 0 && !keep[g]; g = parent_[g]) keep[g] = 1;
  std::vector<std::int32_t> kept;
  for (int f : order_)
    if (keep[f]) kept.push_back(f);
  order_ = std::move(kept);
}

void SeparationField::evaluate(const InterfacePath& crossing, std::vector<std::uint8_t>& out) {
  out.assign(parent_.size(), 0);
  if (crossing.sentinel) return;
  if (crossing.near_arc != near_) throw std::invalid_argument("crossing hugs a different arc");
  const TriangularDomain& d = *d_;
  int prev = crossing.start_ghost;
  auto mark = [&](int v, std::uint8_t val) {
    blocked_[d.edge_id(prev, v)] = val;
    prev = v;
  };
  for (int s : crossing.sites) mark(s, 1);
  mark(crossing.end_ghost, 1);
  for (int f : order_)
    if (parent_[f] >= 0) out[f] = out[parent_[f]] ^ blocked_[edge_[f]];
  prev = crossing.start_ghost;
  for (int s : crossing.sites) mark(s, 0);
  mark(crossing.end_ghost, 0);
}

}  // namespace perc
