#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "perc/analytic.hpp"
#include "perc/estimators.hpp"
#include "perc/oracle.hpp"

using namespace perc;

namespace {

constexpr double kOracleConfidence = 0.999;

// Per-interval level giving 99.9% joint coverage over k comparisons.
double family_confidence(std::size_t k) { return 1 - (1 - kOracleConfidence) / static_cast<double>(k); }

bool covers(const Interval& i, double p) { return i.lo <= p && p <= i.hi; }

// Faces of one orientation whose centers lie on segment [p, q], found by plane
// geometry over all faces.
std::vector<int> faces_on_segment(const TriangularDomain& d, bool up, Point p, Point q) {
  std::vector<int> out;
  const double len = std::hypot(q.x - p.x, q.y - p.y);
  for (int f = 0; f < d.face_count(); ++f) {
    if (d.face(f).up != up) continue;
    const Point c = d.face_center(f);
    const double cross = (q.x - p.x) * (c.y - p.y) - (q.y - p.y) * (c.x - p.x);
    const double along = ((c.x - p.x) * (q.x - p.x) + (c.y - p.y) * (q.y - p.y)) / len;
    if (std::abs(cross) < 1e-9 * len && along > -1e-9 && along < len + 1e-9) out.push_back(f);
  }
  return out;
}

// Direct summation of the contour integral from its definition.
std::complex<double> contour_by_geometry(const TriangularDomain& d, const std::vector<double>& h, int bl, int br,
                                         int top) {
  const std::complex<double> tau = std::polar(1.0, 2 * std::numbers::pi / 3);
  const bool up = d.face(bl).up;
  auto side = [&](int a, int b) {
    double s = 0;
    for (int f : faces_on_segment(d, up, d.face_center(a), d.face_center(b))) s += h[f];
    return s;
  };
  return d.delta() * (side(bl, br) + tau * side(br, top) + tau * tau * side(top, bl));
}

}  // namespace

TEST_CASE("wilson interval") {
  // Endpoints solve |p - phat| = z sqrt(p(1-p)/n).
  const double z = normal_quantile(0.99);
  CHECK(z == doctest::Approx(2.5758293035489).epsilon(1e-12));
  for (auto [k, n] : {std::pair{3ull, 10ull}, {50ull, 100ull}, {999ull, 1000ull}}) {
    const Interval i = wilson_interval(k, n, 0.99);
    const double ph = static_cast<double>(k) / n;
    for (double p : {i.lo, i.hi}) CHECK(std::abs(std::abs(p - ph) - z * std::sqrt(p * (1 - p) / n)) < 1e-12);
    CHECK(covers(i, ph));
  }
  const Interval all = wilson_interval(100, 100, 0.99);
  CHECK(all.hi == 1.0);
  CHECK(all.lo > 0.9);
  const Interval none = wilson_interval(0, 100, 0.99);
  CHECK(none.lo == 0.0);
  CHECK(wilson_interval(50, 1000, 0.99).hi - wilson_interval(50, 1000, 0.99).lo <
        wilson_interval(5, 100, 0.99).hi - wilson_interval(5, 100, 0.99).lo);
  CHECK_THROWS(normal_quantile(1.0));
}

TEST_CASE("estimate_event") {
  const auto d = build_triangle(3);
  const auto sure = estimate_event(d, [](const Coloring&) { return true; }, {1, 1000, 1});
  CHECK(sure.estimate() == 1.0);
  CHECK(sure.interval(0.99).hi == 1.0);
  auto event = [&](const Coloring& c) { return crossing_exists(label_clusters(d, c, Color::Blue), 1, 2); };
  const ExactProbability exact = exact_probability(d, event);
  const auto e = estimate_event(d, event, {5, 100000, 1});
  CHECK(covers(e.interval(kOracleConfidence), exact.value()));
  CHECK(e.successes == estimate_event(d, event, {5, 100000, 4}).successes);
}

TEST_CASE("cardy estimator agrees with enumeration") {
  const auto d = build_triangle(4);
  const std::vector<double> ts = {0.25, 0.5, 0.75};
  const auto est = estimate_cardy(d, ts, {3, 100000, 2});
  const double level = family_confidence(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto x = build_triangle(4, 0, static_cast<int>(std::lround(ts[i] * 4)));
    const auto exact = exact_probability(x, [&](const Coloring& c) {
      return crossing_exists(label_clusters(x, c, Color::Blue), 1, 3);
    });
    CAPTURE(ts[i]);
    CHECK(covers(est[i].interval(level), exact.value()));
  }
}

TEST_CASE("H field estimates agree with enumeration") {
  const auto d = build_triangle(4);
  const ExactSeparation exact(d);
  const auto fields = estimate_H_fields(d, {9, 100000, 2});
  const double level = family_confidence(3 * d.total_face_count());
  int outside = 0;
  for (int a = 0; a < 3; ++a) {
    CHECK(fields[a].trials == 100000);
    for (int f = 0; f < d.total_face_count(); ++f) {
      outside += !covers(fields[a].interval(f, level), exact.H(a, f).value());
      CHECK(fields[a].hits[f] <= fields[a].trials);
    }
    for (int f : far_arc_faces(d, a)) CHECK(fields[a].hits[f] == 0);
  }
  CHECK(outside == 0);
  const auto single = estimate_H_field(d, 1, {9, 100000, 3});
  CHECK(single.hits == fields[1].hits);
}

TEST_CASE("field merge sums counts") {
  FieldEstimate a{"x", {1, 2, 3}, 5}, b{"x", {0, 1, 4}, 6}, c{"x", {2, 2, 2}, 3};
  FieldEstimate ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  CHECK(ab.hits == ba.hits);
  CHECK(ab.trials == 11);
  FieldEstimate left = ab, right = b;
  left.merge(c);
  right.merge(c);
  FieldEstimate right2 = a;
  right2.merge(right);
  CHECK(left.hits == right2.hits);
  CHECK(left.trials == right2.trials);
  FieldEstimate bad{"y", {1}, 1};
  CHECK_THROWS(a.merge(bad));
}

TEST_CASE("paired P estimates agree with enumeration and with each other") {
  const auto d = build_triangle(4);
  const ExactSeparation exact(d);
  std::vector<ColorSwitchCheck> triples;
  for (const auto& cs : verify_all_color_switches(exact))
    if (cs.z % 3 == 0) triples.push_back(cs);  // a spread of triples keeps the run short
  const double level = family_confidence(3 * triples.size());
  int checked = 0;
  for (const auto& cs : triples) {
    const auto p = estimate_P_pair(d, cs.beta, cs.z, cs.eta, {21, 100000, 2});
    CAPTURE(cs.z);
    CHECK(covers(p.first.interval(level), cs.lhs.value()));
    CHECK(covers(p.second.interval(level), cs.rhs.value()));
    const Interval diff = p.difference_interval(level);
    CHECK(diff.lo <= 0.0);
    CHECK(diff.hi >= 0.0);
    ++checked;
  }
  CHECK(checked >= 20);
  CHECK_THROWS(estimate_P_pair(d, 0, d.total_face_count(), FaceDirection::D270, {1, 10, 1}));
  CHECK_THROWS(estimate_P_pair(d, 0, -1, FaceDirection::D270, {1, 10, 1}));
}

TEST_CASE("discrete contour integral") {
  const auto d = build_triangle(16);
  const ContourSpec g{{3, 2}, true, 6};
  const int nf = d.total_face_count();
  const std::vector<double> constant(nf, 0.7);
  CHECK(std::abs(discrete_contour_integral(d, constant, g)) < 1e-14);
  std::vector<double> re(nf), im(nf);
  for (int f = 0; f < nf; ++f) {
    re[f] = d.face_center(f).x;
    im[f] = d.face_center(f).y * d.face_center(f).x;
  }
  const ContourFaces cf = contour_faces(d, g);
  CHECK(cf.bottom.size() == 7);
  const auto direct = contour_by_geometry(d, re, cf.bottom.front(), cf.bottom.back(), cf.left.front());
  CHECK(std::abs(discrete_contour_integral(d, re, g) - direct) < 1e-12);
  const auto direct_down = contour_by_geometry(d, im, d.face_at({4, 1}, false), d.face_at({9, 1}, false),
                                               d.face_at({4, 6}, false));
  CHECK(std::abs(discrete_contour_integral(d, im, {{4, 1}, false, 5}) - direct_down) < 1e-12);
  // Linearity.
  std::vector<double> mix(nf);
  for (int f = 0; f < nf; ++f) mix[f] = 2 * re[f] - 3 * im[f];
  CHECK(std::abs(discrete_contour_integral(d, mix, g) -
                 (2.0 * discrete_contour_integral(d, re, g) - 3.0 * discrete_contour_integral(d, im, g))) < 1e-12);
  CHECK(contour_residual(d, constant, constant, g) < 1e-14);
  CHECK_THROWS(contour_faces(d, {{10, 2}, true, 6}));
}

TEST_CASE("contour residual estimate agrees with the exact fields") {
  const auto d = build_triangle(8);
  const auto g = standard_contour(8);
  // Exact fields need 2^45 colorings at N=8, so compare the Monte Carlo
  // residual with the one computed from Monte Carlo fields on the same trials.
  const auto fields = estimate_contour_fields(d, g, {4, 20000, 1});
  const auto e = estimate_contour_residual(d, g, {4, 20000, 2});
  for (int b = 0; b < 3; ++b)
    CHECK(e.residual(b) ==
          doctest::Approx(contour_residual(d, fields[b].probabilities(), fields[(b + 1) % 3].probabilities(), g))
              .epsilon(1e-9));
  SUBCASE("exact baseline on N=4") {
    const auto d4 = build_triangle(4);
    const ExactSeparation ex(d4);
    const auto g4 = standard_contour(4);
    const auto mc = estimate_contour_residual(d4, g4, {6, 100000, 1});
    for (int b = 0; b < 3; ++b) {
      std::vector<double> hb, ht;
      for (const auto& p : ex.field(b)) hb.push_back(p.value());
      for (const auto& p : ex.field((b + 1) % 3)) ht.push_back(p.value());
      const double exact = contour_residual(d4, hb, ht, g4);
      CHECK(std::isfinite(exact));
      CHECK(std::abs(mc.residual(b) - exact) < 4 * mc.standard_error(b) + 1e-12);
    }
  }
}

TEST_CASE("endpoint law estimates") {
  CHECK(ks_to_uniform({0.0, 1.0}, {0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(ks_to_uniform({0.0, 0.5, 1.0}, {0.25, 0.5, 0.25}) == doctest::Approx(0.25));
  CHECK(ks_to_uniform({1.0}, {1.0}) == doctest::Approx(1.0));
  const auto d = build_triangle(4);
  const auto exact = exact_endpoint_law(d);
  const auto est = endpoint_law(d, {13, 100000, 2});
  CHECK(est.vertices == exact.vertices);
  for (std::size_t i = 0; i < est.counts.size(); ++i)
    CHECK(covers(wilson_interval(est.counts[i], est.trials, family_confidence(est.counts.size())),
                 exact.mass[i].value()));
  SUBCASE("N=1 two-point law") {
    const auto d1 = build_triangle(1);
    const auto law = exact_endpoint_law(d1);
    REQUIRE(law.mass.size() == 2);
    const auto e1 = endpoint_law(d1, {1, 20000, 1});
    const double p_c = exact.mass.size() ? law.mass[1].value() : 0.0;
    CHECK(covers(wilson_interval(e1.counts[1], e1.trials, kOracleConfidence), p_c));
    CHECK(e1.ks_distance() == doctest::Approx(ks_to_uniform({0.0, 1.0}, {1.0 - e1.counts[1] / 20000.0, e1.counts[1] / 20000.0})));
  }
}

TEST_CASE("hull containment estimates") {
  const auto d = build_triangle(4);
  const auto exact = exact_hull_field(d);
  const auto field = hull_field(d, {17, 100000, 2});
  for (int f = 0; f < d.total_face_count(); ++f)
    CHECK(covers(field.interval(f, family_confidence(d.total_face_count())), exact[f].value()));
  for (int f : {0, 7, 15}) CHECK(hull_containment(d, f, {17, 100000, 3}).successes == field.hits[f]);
  // The sampled fields agree with the full-region indicator.
  std::vector<std::uint8_t> h;
  Coloring c;
  FieldEstimate direct{"", std::vector<std::uint64_t>(d.total_face_count(), 0), 0};
  for (std::uint64_t t = 0; t < 2000; ++t) {
    sample_into(d.site_count(), {17, 0, t}, c);
    hull_indicator(d, c, h);
    for (int f = 0; f < d.total_face_count(); ++f) direct.hits[f] += h[f];
  }
  CHECK(hull_field(d, {17, 2000, 1}).hits == direct.hits);
}

TEST_CASE("cluster count slope") {
  CHECK(cluster_count_slope(std::vector<std::pair<double, double>>{{2, 1.5}, {4, 2.0}, {8, 3.0}}).slope ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(cluster_count_slope(std::vector<std::pair<double, double>>{{2, 1.0}, {4, 1.0}}).slope) < 1e-15);
  CHECK_THROWS(cluster_count_slope(std::vector<std::pair<double, double>>{{2, 1.0}}));
  const auto s = build_strip(2.0, 64);
  CHECK(s.spec().h == 64);
  CHECK(s.spec().h * s.delta() * std::numbers::sqrt3 / 2 == doctest::Approx(1.0));
  CHECK(std::abs(s.spec().w * s.delta() - 2.0) <= s.delta() / 2);
  // Tiny strip against enumeration: mean spanning-cluster count.
  const auto p = strip_cluster_count(1.0, 2, {2, 100000, 2});
  const auto t = build_strip(1.0, 2);
  REQUIRE(t.site_count() <= 20);
  std::uint64_t total = 0;
  for (const Coloring& c : enumerate_colorings(t)) total += count_spanning_clusters(label_clusters(t, c, Color::Blue), 0, 2);
  const double exact = static_cast<double>(total) / std::pow(2.0, t.site_count());
  CHECK(std::abs(p.mean() - exact) < 3.3 * p.stderr_mean());
}

TEST_CASE("scaling exponent fit") {
  std::vector<std::pair<double, double>> pts, flat;
  for (double n : {64.0, 128.0, 256.0, 512.0}) {
    pts.push_back({n, std::pow(n, 4.0 / 3.0)});
    flat.push_back({n, 7.0});
  }
  const auto f = scaling_exponent_fit(pts);
  CHECK(f.exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(f.stderr_exponent < 1e-7);
  CHECK(std::abs(scaling_exponent_fit(flat).exponent) < 1e-12);
  CHECK_THROWS(scaling_exponent_fit({{1, 1}, {2, 2}}));
  CHECK_THROWS(scaling_exponent_fit({{1, 1}, {2, 0}, {4, 1}}));
}

TEST_CASE("lowest crossing length") {
  const auto d = build_triangle(3);
  std::uint64_t total = 0;
  for (const Coloring& c : enumerate_colorings(d)) {
    const auto p = lowest_crossing(d, c, 0, Color::Blue);
    total += p.sentinel ? 0 : p.sites.size();
  }
  const double exact = static_cast<double>(total) / 1024;
  const auto e = lowest_crossing_length(d, {8, 100000, 2});
  const double sd = std::sqrt(static_cast<double>(e.length_sq_sum) / e.trials - e.mean() * e.mean());
  CHECK(std::abs(e.mean() - exact) < 3.3 * sd / std::sqrt(static_cast<double>(e.trials)));
  CHECK(e.length_sum == lowest_crossing_length(d, {8, 100000, 1}).length_sum);
}

TEST_CASE("arm probability agrees with enumeration") {
  const auto d = build_arm_domain(3);
  const auto a = make_annulus(d, {3, 3}, 1, 3);
  CHECK(arm_probability(d, a, "", {1, 100, 1}).estimate() == 1.0);
  for (const char* pat : {"BYBYB", "BY", "B"}) {
    const auto exact = exact_arm_probability(d, a, pat);
    const auto est = arm_probability(d, a, pat, {31, 100000, 2});
    CAPTURE(pat);
    CHECK(covers(est.interval(family_confidence(3)), exact.value()));
  }
}

TEST_CASE("estimates do not depend on the worker count") {
  const auto d = build_triangle(8);
  const auto f1 = estimate_H_fields(d, {77, 3001, 1}), f3 = estimate_H_fields(d, {77, 3001, 3});
  for (int a = 0; a < 3; ++a) CHECK(f1[a].hits == f3[a].hits);
  const auto e1 = endpoint_law(d, {77, 3001, 1}), e4 = endpoint_law(d, {77, 3001, 4});
  CHECK(e1.counts == e4.counts);
  const auto r1 = estimate_contour_residual(d, standard_contour(8), {77, 3001, 1});
  const auto r2 = estimate_contour_residual(d, standard_contour(8), {77, 3001, 2});
  CHECK(r1.sum_u == r2.sum_u);
  CHECK(r1.sum_norm == r2.sum_norm);
  CHECK(r1.combined() == r2.combined());
}

TEST_CASE("modulus of continuity of a linear field") {
  const auto d = build_triangle(8);
  std::vector<double> p(d.total_face_count());
  for (int f = 0; f < d.face_count(); ++f) p[f] = h_triangle(1, d.face_center(f));
  const auto m = modulus_of_continuity(d, p, {1, 2, 4});
  CHECK(m[0] < m[1]);
  CHECK(m[1] < m[2]);
  CHECK(m[2] == doctest::Approx(2 * m[1]));
}
