#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "perc/lattice.hpp"

using namespace perc;

namespace {

int site_edges(const TriangularDomain& d) {
  int e = 0;
  for (int s = 0; s < d.site_count(); ++s)
    for (int u : d.neighbors(s)) e += (u >= 0 && u < d.site_count());
  return e / 2;
}

}  // namespace

TEST_CASE("triangle counts") {
  for (int n = 1; n <= 9; ++n) {
    const auto d = build_triangle(n);
    CHECK(d.site_count() == (n + 1) * (n + 2) / 2);
    CHECK(d.face_count() == n * n);
    CHECK(d.ghost_count() == 3 * (n + 2));
    // Euler characteristic of a disk, outer face excluded.
    CHECK(d.site_count() - site_edges(d) + d.face_count() == 1);
  }
  const auto d4 = build_triangle(4);
  CHECK(d4.site_count() == 15);
  CHECK(d4.boundary_loop().size() == 12);
  CHECK(build_triangle(2).face_count() == 4);
  CHECK_THROWS(build_triangle(0));
}

TEST_CASE("N=1 triangle is all corners with an isolated face") {
  const auto d = build_triangle(1);
  CHECK(d.site_count() == 3);
  CHECK(d.face_count() == 1);
  std::set<int> marks(d.marks().begin(), d.marks().end());
  CHECK(marks.size() == 3);
  for (int s = 0; s < 3; ++s) CHECK(marks.count(s) == 1);
  CHECK(d.face_adjacency(0).empty());
}

TEST_CASE("parallelogram counts") {
  CHECK(build_parallelogram(2, 2, 0.5).site_count() == 9);
  const auto d1 = build_parallelogram(1, 1, 1.0);
  CHECK(d1.site_count() == 4);
  CHECK(d1.face_count() == 2);
  const auto s = build_parallelogram(8, 2, 0.5);
  CHECK(s.site_count() == 27);
  CHECK(s.face_count() == 32);
  CHECK(s.ghost_count() == 2 * 8 + 2 * 2 + 6);
  CHECK(s.site_count() - site_edges(s) + s.face_count() == 1);
}

TEST_CASE("mark validation") {
  CHECK_THROWS(build_parallelogram(2, 2, 1.0, {{1, 1}, {2, 0}}));          // interior site
  CHECK_THROWS(build_parallelogram(2, 2, 1.0, {{2, 0}, {0, 0}, {2, 2}}));  // clockwise
  CHECK_NOTHROW(build_parallelogram(2, 2, 1.0, {{0, 0}, {2, 2}}));
  CHECK_THROWS(build_triangle(4, 0.0, 4));
}

TEST_CASE("neighbour and face adjacency symmetry") {
  for (const auto& d : {build_triangle(5), build_parallelogram(4, 3, 0.25)}) {
    for (int v = 0; v < d.vertex_count(); ++v)
      for (int k = 0; k < 6; ++k) {
        const int u = d.neighbors(v)[k];
        if (u >= 0) CHECK(d.neighbors(u)[(k + 3) % 6] == v);
      }
    for (int f = 0; f < d.face_count(); ++f)
      for (auto [g, eta] : d.face_adjacency(f)) {
        bool back = false;
        for (auto [h, mu] : d.face_adjacency(g)) back |= (h == f && mu == negate_direction(eta));
        CHECK(back);
        CHECK(is_up_direction(eta) == d.face(f).up);
        CHECK(d.face_step(f, eta) == g);
      }
    for (int s = 0; s < d.site_count(); ++s) {
      int inside = 0;
      for (int u : d.neighbors(s)) inside += (u >= 0 && u < d.site_count());
      if (inside == 6) {
        for (int u : d.neighbors(s)) CHECK(u >= 0);
      }
    }
  }
}

TEST_CASE("interior up-face neighbour directions") {
  const auto d = build_triangle(4);
  const int f = d.face_at({1, 1}, true);
  const auto adj = d.face_adjacency(f);
  REQUIRE(adj.size() == 3);
  std::set<int> deg;
  for (auto [g, eta] : adj) {
    deg.insert(direction_degrees(eta));
    const Point a = d.face_center(f), b = d.face_center(g);
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    CHECK(len == doctest::Approx(d.delta() / std::sqrt(3.0)));
    const double ang = std::atan2(b.y - a.y, b.x - a.x) * 180.0 / std::numbers::pi;
    CHECK(std::remainder(ang - direction_degrees(eta), 360.0) == doctest::Approx(0.0).epsilon(1e-9));
  }
  CHECK(deg == std::set<int>{30, 150, 270});
}

TEST_CASE("rotate_direction") {
  CHECK(rotate_direction(FaceDirection::D30) == FaceDirection::D150);
  CHECK(rotate_direction(FaceDirection::D330) == FaceDirection::D90);
  for (int k = 0; k < 6; ++k) {
    const auto eta = static_cast<FaceDirection>(k);
    CHECK(rotate_direction(rotate_direction(rotate_direction(eta))) == eta);
    CHECK(is_up_direction(rotate_direction(eta)) == is_up_direction(eta));
  }
}

TEST_CASE("ghost arcs of the triangle follow the side lines") {
  for (int n = 1; n <= 6; ++n) {
    const auto d = build_triangle(n);
    for (int v = d.site_count(); v < d.vertex_count(); ++v) {
      const Axial a = d.coord(v);
      int expect = -1;
      if (a.y < 0) expect = 1;
      else if (a.x < 0) expect = 0;
      else if (a.x + a.y > n) expect = 2;
      CHECK(d.ghost_arc(v) == expect);
    }
  }
}

TEST_CASE("arcs are closed and concatenate to the loop") {
  for (const auto& d : {build_triangle(4), build_triangle(6, 0.0, 2), build_parallelogram(3, 2, 1.0),
                        build_parallelogram(3, 3, 1.0, {{0, 0}, {3, 3}})}) {
    std::vector<int> joined;
    for (int k = 0; k < d.arc_count(); ++k) {
      const auto arc = d.arc_sites(k);
      CHECK(arc.front() == d.marks()[k]);
      CHECK(arc.back() == d.marks()[(k + 1) % d.arc_count()]);
      joined.insert(joined.end(), arc.begin(), arc.end() - 1);
      for (int s : arc) CHECK(d.touches(s, k));
    }
    CHECK(joined == d.boundary_loop());
    std::set<int> on_loop(d.boundary_loop().begin(), d.boundary_loop().end());
    for (int s = 0; s < d.site_count(); ++s) {
      int arcs = 0;
      for (int k = 0; k < d.arc_count(); ++k) {
        const auto arc = d.arc_sites(k);
        arcs += std::count(arc.begin(), arc.end(), s) ? 1 : 0;
      }
      CHECK(std::popcount(d.touch_mask(s)) == arcs);
      CHECK((on_loop.count(s) == 1) == (arcs > 0));
    }
  }
}

TEST_CASE("rim faces carry at least one site and one ghost") {
  const auto d = build_triangle(3);
  for (int f = d.face_count(); f < d.total_face_count(); ++f) {
    int sites = 0;
    for (int v : d.face(f).v) sites += !d.is_ghost(v);
    CHECK(sites >= 1);
    CHECK(sites <= 2);
  }
  for (int f = 0; f < d.total_face_count(); ++f)
    for (int s = 0; s < 3; ++s) {
      const int g = d.face_neighbor(f, s);
      if (g < 0) continue;
      bool shared = false;
      for (int t = 0; t < 3; ++t) shared |= d.face_edge(g, t) == d.face_edge(f, s);
      CHECK(shared);
    }
}

TEST_CASE("domain description text") {
  CHECK(build_triangle(2).spec().to_text() == "shape=triangle;n=2;delta=0.5;marks=0,2|0,0|2,0");
}
