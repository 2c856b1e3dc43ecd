#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "perc/interface.hpp"

using namespace perc;

namespace {

// Faces reachable from the far-arc rim when the edges of an extended path are
// blocked.
std::vector<std::uint8_t> fill_from_far_arc(const TriangularDomain& d, int far,
                                            const std::vector<int>& ext) {
  std::set<int> blocked;
  for (std::size_t i = 0; i + 1 < ext.size(); ++i) blocked.insert(d.edge_id(ext[i], ext[i + 1]));
  std::vector<std::uint8_t> seen(d.total_face_count(), 0);
  std::vector<int> stack;
  for (int f = d.face_count(); f < d.total_face_count(); ++f)
    for (int v : d.face(f).v)
      if (d.is_ghost(v) && d.ghost_arc(v) == far && !seen[f]) {
        seen[f] = 1;
        stack.push_back(f);
      }
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    for (int s = 0; s < 3; ++s) {
      const int g = d.face_neighbor(f, s);
      if (g >= 0 && !seen[g] && !blocked.count(d.face_edge(f, s))) {
        seen[g] = 1;
        stack.push_back(g);
      }
    }
  }
  return seen;
}

// Ground truth for Q_alpha: union over every simple blue site path from arc A
// to arc C, extended by any adjacent A ghost and C ghost, of the faces the
// extended path cuts off from the far arc. Calls on_path with each path's
// reachable set.
std::vector<std::uint8_t> oracle_separated(
    const TriangularDomain& d, const Coloring& c, int alpha,
    const std::function<void(const std::vector<std::uint8_t>&)>& on_path = {}) {
  const int arc_a = alpha, far = far_arc(alpha), arc_c = (alpha + 2) % 3;
  std::vector<std::uint8_t> sep(d.total_face_count(), 0);
  auto ghosts_of = [&](int s, int arc) {
    std::vector<int> g;
    for (int u : d.neighbors(s))
      if (u >= 0 && d.is_ghost(u) && d.ghost_arc(u) == arc) g.push_back(u);
    return g;
  };
  std::vector<int> path;
  std::vector<char> used(d.site_count(), 0);
  std::function<void(int)> dfs = [&](int s) {
    path.push_back(s);
    used[s] = 1;
    if (d.touches(s, arc_c))
      for (int ga : ghosts_of(path.front(), arc_a))
        for (int gc : ghosts_of(s, arc_c)) {
          std::vector<int> ext{ga};
          ext.insert(ext.end(), path.begin(), path.end());
          ext.push_back(gc);
          const auto reach = fill_from_far_arc(d, far, ext);
          for (int f = 0; f < d.total_face_count(); ++f) sep[f] |= !reach[f];
          if (on_path) on_path(reach);
        }
    for (int u : d.neighbors(s))
      if (u >= 0 && u < d.site_count() && !used[u] && c.blue(u)) dfs(u);
    used[s] = 0;
    path.pop_back();
  };
  for (int s = 0; s < d.site_count(); ++s)
    if (c.blue(s) && d.touches(s, arc_a)) dfs(s);
  return sep;
}

bool is_simple_blue_path(const TriangularDomain& d, const Coloring& c, const std::vector<int>& p,
                         Color col) {
  std::set<int> seen;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= d.site_count() || !has_color(c, p[i], col)) return false;
    if (!seen.insert(p[i]).second) return false;
    if (i && offset_index(d.coord(p[i]) - d.coord(p[i - 1])) < 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exploration on forced colorings hugs the opposite arc") {
  const auto d = build_triangle(5);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      std::uint32_t own = 0;
      for (int k = a; k != b; k = (k + 1) % 3) own |= 1u << k;
      const auto pb = trace_exploration(d, a, b, Coloring(d.site_count(), true));
      for (auto [l, r] : pb.edges) {
        CHECK(d.is_ghost(l));
        CHECK(!((own >> d.ghost_arc(l)) & 1u));
      }
      const auto py = trace_exploration(d, a, b, Coloring(d.site_count(), false));
      for (auto [l, r] : py.edges) {
        CHECK(d.is_ghost(r));
        CHECK(((own >> d.ghost_arc(r)) & 1u));
      }
    }
}

TEST_CASE("exploration invariants on every N=3 coloring") {
  const auto d = build_triangle(3);
  int bad = 0;
  for (const Coloring& c : enumerate_colorings(d))
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        std::uint32_t own = 0;
        for (int k = a; k != b; k = (k + 1) % 3) own |= 1u << k;
        auto blue = [&](int v) { return d.is_ghost(v) ? ((own >> d.ghost_arc(v)) & 1u) != 0 : c.blue(v); };
        const auto p = trace_exploration(d, a, b, c);
        std::set<int> edges;
        for (auto [l, r] : p.edges) {
          bad += blue(l) || !blue(r);
          bad += !edges.insert(d.edge_id(l, r)).second;
        }
        for (std::size_t i = 0; i < p.faces.size(); ++i) {
          bad += p.faces[i] < 0;
          // Consecutive edges belong to the face between them.
          std::set<int> fe;
          for (int s = 0; s < 3; ++s) fe.insert(d.face_edge(p.faces[i], s));
          bad += !fe.count(d.edge_id(p.edges[i].first, p.edges[i].second));
          bad += !fe.count(d.edge_id(p.edges[i + 1].first, p.edges[i + 1].second));
        }
        const auto [l, r] = p.edges.back();
        bad += !(d.is_ghost(l) && d.is_ghost(r) && d.ghost_arc(l) == b);
      }
  CHECK(bad == 0);
}

TEST_CASE("lowest crossing on forced colorings") {
  const int n = 5;
  const auto d = build_triangle(n);
  const auto blue = lowest_crossing(d, Coloring(d.site_count(), true));
  REQUIRE(!blue.sentinel);
  std::vector<int> column;
  for (int y = 0; y <= n; ++y) column.push_back(d.site_at({0, y}));
  CHECK(blue.sites == column);
  const auto none = lowest_crossing(d, Coloring(d.site_count(), false));
  CHECK(none.sentinel);
  CHECK(none.sites == std::vector<int>{d.site_at({n, 0})});
  const auto below = below_region(d, blue);
  for (int f = 0; f < d.total_face_count(); ++f) {
    // Between the ghost column x=-1 and the site column x=0.
    bool between = true;
    for (int v : d.face(f).v) between &= d.coord(v).x <= 0;
    CHECK(bool(below[f]) == between);
  }
  for (int f = 0; f < d.total_face_count(); ++f) CHECK(below_region(d, none)[f] == 1);
}

TEST_CASE("separation equals the simple-path oracle on every coloring of N=2,3") {
  for (int n : {2, 3}) {
    const auto d = build_triangle(n);
    int bad = 0;
    for (const Coloring& c : enumerate_colorings(d))
      for (int alpha = 0; alpha < 3; ++alpha) {
        const auto oracle = oracle_separated(d, c, alpha);
        const auto crossing = lowest_crossing(d, c, far_arc(alpha), Color::Blue);
        const auto below = below_region(d, crossing);
        for (int f = 0; f < d.total_face_count(); ++f) bad += oracle[f] != !below[f];
      }
    CHECK(bad == 0);
  }
}

TEST_CASE("separation equals the simple-path oracle on every coloring of N=4" * doctest::timeout(600)) {
  const auto d = build_triangle(4);
  int bad = 0, not_lowest = 0, malformed = 0;
  for (const Coloring& c : enumerate_colorings(d))
    for (int alpha = 0; alpha < 3; ++alpha) {
      const auto crossing = lowest_crossing(d, c, far_arc(alpha), Color::Blue);
      const auto below = below_region(d, crossing);
      const auto oracle = oracle_separated(d, c, alpha, [&](const std::vector<std::uint8_t>& reach) {
        for (int f = 0; f < d.total_face_count(); ++f) not_lowest += below[f] && !reach[f];
      });
      for (int f = 0; f < d.total_face_count(); ++f) bad += oracle[f] != !below[f];
      if (!crossing.sentinel) {
        malformed += !is_simple_blue_path(d, c, crossing.sites, Color::Blue);
        malformed += !d.touches(crossing.sites.front(), (alpha + 2) % 3);
        malformed += !d.touches(crossing.sites.back(), alpha);
      }
    }
  CHECK(bad == 0);
  CHECK(not_lowest == 0);
  CHECK(malformed == 0);
}

TEST_CASE("separation field matches the fill and separates() on N=5") {
  const auto d = build_triangle(5);
  std::vector<SeparationField> fields;
  for (int alpha = 0; alpha < 3; ++alpha) fields.emplace_back(d, far_arc(alpha));
  std::vector<std::uint8_t> out;
  int bad = 0;
  for (std::uint64_t t = 0; t < 3000; ++t) {
    const Coloring c = sample_coloring(d, {5, 0, t});
    for (int alpha = 0; alpha < 3; ++alpha) {
      const auto crossing = lowest_crossing(d, c, far_arc(alpha), Color::Blue);
      const auto below = below_region(d, crossing);
      fields[alpha].evaluate(crossing, out);
      for (int f = 0; f < d.total_face_count(); ++f) bad += out[f] != !below[f];
      const int z = static_cast<int>(t % d.face_count());
      bad += separates(d, c, alpha, z) != bool(out[z]);
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("restricted separation field agrees on its targets") {
  const auto d = build_triangle(12);
  SeparationField full(d, 1), part(d, 1);
  const std::vector<int> targets = {d.face_at({3, 3}, true), d.face_at({5, 2}, false), 7};
  part.restrict_to(targets);
  std::vector<std::uint8_t> a, b;
  for (std::uint64_t t = 0; t < 500; ++t) {
    const auto crossing = lowest_crossing(d, sample_coloring(d, {3, 0, t}), 1, Color::Blue);
    full.evaluate(crossing, a);
    part.evaluate(crossing, b);
    for (int f : targets) CHECK(a[f] == b[f]);
  }
}

TEST_CASE("separation boundary values and monotonicity") {
  const auto d = build_triangle(3);
  int bad = 0;
  for (const Coloring& c : enumerate_colorings(d))
    for (int alpha = 0; alpha < 3; ++alpha) {
      const auto crossing = lowest_crossing(d, c, far_arc(alpha), Color::Blue);
      const auto below = below_region(d, crossing);
      for (int f = d.face_count(); f < d.total_face_count(); ++f)
        if (d.rim_touches_arc(f, far_arc(alpha))) bad += !below[f];
      for (int s = 0; s < d.site_count(); ++s) {
        if (c.blue(s)) continue;
        Coloring up = c;
        up.set(s, true);
        const auto below_up = below_region(d, lowest_crossing(d, up, far_arc(alpha), Color::Blue));
        for (int f = 0; f < d.total_face_count(); ++f) bad += !below[f] && below_up[f];
      }
    }
  CHECK(bad == 0);
  const Coloring yellow(d.site_count(), false);
  for (int alpha = 0; alpha < 3; ++alpha)
    for (int z = 0; z < d.face_count(); ++z) CHECK(!separates(d, yellow, alpha, z));
}

TEST_CASE("outer boundary on every N=4 coloring") {
  const auto d = build_triangle(4);
  const auto bc = d.arc_sites(1);
  int bad = 0, overlap = 0, genuine = 0;
  for (const Coloring& c : enumerate_colorings(d)) {
    const auto ob = outer_boundary(d, c);
    bad += std::find(bc.begin(), bc.end(), ob.w) == bc.end();
    bad += ob.w != endpoint_from_exploration(d, c);
    const std::vector<int> yellow(ob.sites.begin(), ob.sites.begin() + ob.split);
    const std::vector<int> blue(ob.sites.begin() + ob.split, ob.sites.end());
    const auto yb = lowest_crossing(d, c, 2, Color::Yellow);
    const auto bb = lowest_crossing(d, c, 0, Color::Blue);
    if (!yb.sentinel) bad += !is_simple_blue_path(d, c, yellow, Color::Yellow);
    if (!bb.sentinel) bad += !is_simple_blue_path(d, c, blue, Color::Blue);
    if (!yb.sentinel && !bb.sentinel) {
      ++genuine;
      for (int s : yellow) overlap += std::count(blue.begin(), blue.end(), s) > 0;
      bad += offset_index(d.coord(yellow.back()) - d.coord(blue.front())) < 0;
    }
  }
  CHECK(bad == 0);
  CHECK(overlap == 0);
  CHECK(genuine > 0);
  const auto all_blue = outer_boundary(d, Coloring(d.site_count(), true));
  CHECK(all_blue.w == d.site_at({0, 0}));
}
