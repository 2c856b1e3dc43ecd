#include "perc/estimators.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace perc {

namespace {

const std::complex<double> kTau = std::polar(1.0, 2 * std::numbers::pi / 3);

int step_face(const TriangularDomain& d, int f, FaceDirection eta) {
  for (int s = 0; s < 3; ++s)
    if (d.slot_direction(f, s) == eta) return d.face_neighbor(f, s);
  return -1;
}

FieldEstimate empty_field(const TriangularDomain& d) {
  FieldEstimate f;
  f.domain = d.spec().to_text();
  f.hits.assign(d.total_face_count(), 0);
  return f;
}

// OLS of y on x; stderr from residuals (0 with two points).
SlopeFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) throw std::invalid_argument("fit needs at least two distinct abscissae");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      ssr += r * r;
    }
    f.stderr_slope = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  }
  return f;
}

}  // namespace

double normal_quantile(double confidence) {
  if (!(confidence > 0 && confidence < 1)) throw std::invalid_argument("confidence must be in (0,1)");
  return boost::math::quantile(boost::math::normal(), 1 - (1 - confidence) / 2);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) return {0.0, 1.0};
  const double z = normal_quantile(confidence), n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n, z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

std::vector<double> FieldEstimate::probabilities() const {
  std::vector<double> out(hits.size());
  for (std::size_t f = 0; f < hits.size(); ++f) out[f] = p(static_cast<int>(f));
  return out;
}

void FieldEstimate::merge(const FieldEstimate& o) {
  if (hits.empty()) hits.assign(o.hits.size(), 0);
  if (hits.size() != o.hits.size()) throw std::invalid_argument("merging fields of different domains");
  if (domain.empty()) domain = o.domain;
  for (std::size_t f = 0; f < hits.size(); ++f) hits[f] += o.hits[f];
  trials += o.trials;
}

ScalarEstimate estimate_event(const TriangularDomain& d, const EventPredicate& event, const TrialPlan& plan,
                              std::string name) {
  auto out = run_trials<ScalarEstimate>(
      d.site_count(), plan, [] { return ScalarEstimate{}; },
      [&](ScalarEstimate& acc, const Coloring& c, std::uint64_t) {
        acc.successes += event(c);
        ++acc.trials;
      },
      [](ScalarEstimate& a, const ScalarEstimate& b) { a.merge(b); });
  out.name = std::move(name);
  return out;
}

std::vector<ScalarEstimate> estimate_cardy(const TriangularDomain& d, const std::vector<double>& ts,
                                           const TrialPlan& plan) {
  if (d.spec().shape != "triangle" || d.arc_count() != 3) throw std::invalid_argument("cardy needs a triangle");
  const int n = d.spec().n;
  std::vector<int> limit;
  for (double t : ts) {
    if (!(t >= 0 && t <= 1)) throw std::invalid_argument("x must lie on bc");
    limit.push_back(static_cast<int>(std::lround(t * n)));
  }
  struct Acc {
    std::vector<std::uint64_t> hits;
    std::uint64_t trials = 0;
    ClusterLabeling l;
    UnionFind uf;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan,
      [&] {
        Acc a;
        a.hits.assign(ts.size(), 0);
        return a;
      },
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        label_clusters(d, c, Color::Blue, a.l, a.uf);
        // Leftmost bottom-row site over clusters that reach arc ca.
        int best = std::numeric_limits<int>::max();
        for (int s = 0; s < d.site_count(); ++s) {
          const Axial p = d.coord(s);
          if (p.y != 0 || p.x >= best || a.l.cluster[s] < 0) continue;
          if ((a.l.arc_flags[a.l.cluster[s]] >> 2) & 1u) best = p.x;
        }
        for (std::size_t i = 0; i < ts.size(); ++i) a.hits[i] += best <= limit[i];
        ++a.trials;
      },
      [](Acc& a, const Acc& b) {
        for (std::size_t i = 0; i < a.hits.size(); ++i) a.hits[i] += b.hits[i];
        a.trials += b.trials;
      });
  std::vector<ScalarEstimate> out;
  for (std::size_t i = 0; i < ts.size(); ++i)
    out.push_back({"cardy t=" + std::to_string(ts[i]), acc.hits[i], acc.trials});
  return out;
}

std::vector<FieldEstimate> estimate_H_fields(const TriangularDomain& d, const TrialPlan& plan) {
  struct Acc {
    std::vector<SeparationField> sf;
    std::vector<FieldEstimate> f;
    std::vector<std::uint8_t> q;
  };
  auto make = [&] {
    Acc a;
    for (int k = 0; k < 3; ++k) {
      a.sf.emplace_back(d, far_arc(k));
      a.f.push_back(empty_field(d));
    }
    return a;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan, make,
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        for (int k = 0; k < 3; ++k) {
          a.sf[k].evaluate(lowest_crossing(d, c, far_arc(k), Color::Blue), a.q);
          auto& hits = a.f[k].hits;
          for (std::size_t f = 0; f < hits.size(); ++f) hits[f] += a.q[f];
          ++a.f[k].trials;
        }
      },
      [](Acc& a, const Acc& b) {
        for (int k = 0; k < 3; ++k) a.f[k].merge(b.f[k]);
      });
  return acc.f;
}

FieldEstimate estimate_H_field(const TriangularDomain& d, int alpha, const TrialPlan& plan) {
  if (alpha < 0 || alpha > 2) throw std::invalid_argument("alpha must be 0, 1 or 2");
  struct Acc {
    SeparationField sf;
    FieldEstimate f;
    std::vector<std::uint8_t> q;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan, [&] { return Acc{SeparationField(d, far_arc(alpha)), empty_field(d), {}}; },
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        a.sf.evaluate(lowest_crossing(d, c, far_arc(alpha), Color::Blue), a.q);
        for (std::size_t f = 0; f < a.f.hits.size(); ++f) a.f.hits[f] += a.q[f];
        ++a.f.trials;
      },
      [](Acc& a, const Acc& b) { a.f.merge(b.f); });
  return acc.f;
}

double PairedEstimate::mean_difference() const {
  return first.trials ? static_cast<double>(diff_sum) / static_cast<double>(first.trials) : 0.0;
}

Interval PairedEstimate::difference_interval(double confidence) const {
  const double n = static_cast<double>(first.trials);
  if (n < 2) return {-1.0, 1.0};
  const double mean = mean_difference();
  const double var = (static_cast<double>(diff_nonzero) - n * mean * mean) / (n - 1);
  const double half = normal_quantile(confidence) * std::sqrt(std::max(var, 0.0) / n);
  return {mean - half, mean + half};
}

PairedEstimate estimate_P_pair(const TriangularDomain& d, int beta, int z, FaceDirection eta, const TrialPlan& plan) {
  if (beta < 0 || beta > 2) throw std::invalid_argument("beta must be 0, 1 or 2");
  const int g = z >= 0 && z < d.total_face_count() ? step_face(d, z, eta) : -1;
  const int h = g >= 0 ? step_face(d, z, rotate_direction(eta)) : -1;
  if (g < 0 || h < 0) throw std::invalid_argument("z + eta or z + tau*eta is outside the domain");
  const int k1 = beta, k2 = (beta + 1) % 3;
  struct Acc {
    SeparationField s1, s2;
    PairedEstimate e;
    std::vector<std::uint8_t> q1, q2;
  };
  auto make = [&] {
    Acc a{SeparationField(d, far_arc(k1)), SeparationField(d, far_arc(k2)), {}, {}, {}};
    a.s1.restrict_to({z, g});
    a.s2.restrict_to({z, h});
    return a;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan, make,
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        a.s1.evaluate(lowest_crossing(d, c, far_arc(k1), Color::Blue), a.q1);
        a.s2.evaluate(lowest_crossing(d, c, far_arc(k2), Color::Blue), a.q2);
        const bool x = a.q1[g] && !a.q1[z], y = a.q2[h] && !a.q2[z];
        a.e.first.successes += x;
        a.e.second.successes += y;
        ++a.e.first.trials;
        ++a.e.second.trials;
        a.e.diff_sum += static_cast<int>(x) - static_cast<int>(y);
        a.e.diff_nonzero += x != y;
      },
      [](Acc& a, const Acc& b) {
        a.e.first.merge(b.e.first);
        a.e.second.merge(b.e.second);
        a.e.diff_sum += b.e.diff_sum;
        a.e.diff_nonzero += b.e.diff_nonzero;
      });
  acc.e.first.name = "P_beta(z,eta)";
  acc.e.second.name = "P_tau_beta(z,tau_eta)";
  return acc.e;
}

std::vector<int> ContourFaces::all() const {
  std::vector<int> out = bottom;
  out.insert(out.end(), right.begin(), right.end());
  out.insert(out.end(), left.begin(), left.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ContourFaces contour_faces(const TriangularDomain& d, const ContourSpec& g) {
  if (g.m < 1) throw std::invalid_argument("contour side must be at least one step");
  ContourFaces out;
  auto at = [&](int x, int y) {
    const int f = d.face_at({g.anchor.x + x, g.anchor.y + y}, g.up);
    if (f < 0 || f >= d.face_count()) throw std::invalid_argument("contour leaves the interior faces");
    return f;
  };
  for (int i = 0; i <= g.m; ++i) {
    out.bottom.push_back(at(i, 0));
    out.right.push_back(at(g.m - i, i));
    out.left.push_back(at(0, g.m - i));
  }
  return out;
}

std::complex<double> discrete_contour_integral(const TriangularDomain& d, const std::vector<double>& field,
                                               const ContourSpec& g) {
  const ContourFaces cf = contour_faces(d, g);
  auto sum = [&](const std::vector<int>& side) {
    double s = 0;
    for (int f : side) s += field.at(f);
    return s;
  };
  return d.delta() * (sum(cf.bottom) + kTau * sum(cf.right) + kTau * kTau * sum(cf.left));
}

double contour_residual(const TriangularDomain& d, const std::vector<double>& h_beta,
                        const std::vector<double>& h_tau_beta, const ContourSpec& g) {
  return std::abs(discrete_contour_integral(d, h_beta, g) - discrete_contour_integral(d, h_tau_beta, g) / kTau);
}

ContourSpec standard_contour(int n) {
  if (n < 4) throw std::invalid_argument("standard contour needs n >= 4");
  return {{3 * n / 8, n / 16}, true, n / 2};
}

namespace {

std::complex<double> tri(double u, double v, double w) { return u + v * kTau + w * kTau * kTau; }

}  // namespace

double ContourResidualEstimate::residual(int beta) const {
  if (!trials) return 0.0;
  const double t = static_cast<double>(trials);
  return delta * std::abs(tri(sum_u[beta] / t, sum_v[beta] / t, sum_w[beta] / t));
}

double ContourResidualEstimate::standard_error(int beta) const {
  if (trials < 2) return 0.0;
  const double t = static_cast<double>(trials), mean = residual(beta) / delta;
  const double var = (static_cast<double>(sum_norm[beta]) / t - mean * mean) * t / (t - 1);
  return delta * std::sqrt(std::max(var, 0.0) / t);
}

double ContourResidualEstimate::debiased(int beta) const {
  const double r = residual(beta), se = standard_error(beta);
  return std::sqrt(std::max(0.0, r * r - se * se));
}

double ContourResidualEstimate::combined() const {
  double s = 0;
  for (int b = 0; b < 3; ++b) s += debiased(b) * debiased(b);
  return std::sqrt(s / 3);
}

void ContourResidualEstimate::merge(const ContourResidualEstimate& o) {
  for (int b = 0; b < 3; ++b) {
    sum_u[b] += o.sum_u[b];
    sum_v[b] += o.sum_v[b];
    sum_w[b] += o.sum_w[b];
    sum_norm[b] += o.sum_norm[b];
  }
  trials += o.trials;
}

ContourResidualEstimate estimate_contour_residual(const TriangularDomain& d, const ContourSpec& g,
                                                  const TrialPlan& plan) {
  const ContourFaces cf = contour_faces(d, g);
  const std::vector<int> targets = cf.all();
  struct Acc {
    std::vector<SeparationField> sf;
    ContourResidualEstimate e;
    std::vector<std::uint8_t> q;
  };
  auto make = [&] {
    Acc a;
    for (int k = 0; k < 3; ++k) {
      a.sf.emplace_back(d, far_arc(k));
      a.sf.back().restrict_to(targets);
    }
    return a;
  };
  auto count = [](const std::vector<int>& side, const std::vector<std::uint8_t>& q) {
    std::int64_t n = 0;
    for (int f : side) n += q[f];
    return n;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan, make,
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        std::array<std::array<std::int64_t, 3>, 3> abc{};
        for (int k = 0; k < 3; ++k) {
          a.sf[k].evaluate(lowest_crossing(d, c, far_arc(k), Color::Blue), a.q);
          abc[k] = {count(cf.bottom, a.q), count(cf.right, a.q), count(cf.left, a.q)};
        }
        for (int b = 0; b < 3; ++b) {
          // (a1 + b1 tau + c1 tau^2) - tau^2 (a2 + b2 tau + c2 tau^2)
          const auto& x = abc[b];
          const auto& y = abc[(b + 1) % 3];
          const std::int64_t u = x[0] - y[1], v = x[1] - y[2], w = x[2] - y[0];
          a.e.sum_u[b] += u;
          a.e.sum_v[b] += v;
          a.e.sum_w[b] += w;
          a.e.sum_norm[b] += u * u + v * v + w * w - u * v - v * w - w * u;
        }
        ++a.e.trials;
      },
      [](Acc& a, const Acc& b) { a.e.merge(b.e); });
  acc.e.delta = d.delta();
  return acc.e;
}

std::vector<FieldEstimate> estimate_contour_fields(const TriangularDomain& d, const ContourSpec& g,
                                                   const TrialPlan& plan) {
  const std::vector<int> targets = contour_faces(d, g).all();
  struct Acc {
    std::vector<SeparationField> sf;
    std::vector<FieldEstimate> f;
    std::vector<std::uint8_t> q;
  };
  auto make = [&] {
    Acc a;
    for (int k = 0; k < 3; ++k) {
      a.sf.emplace_back(d, far_arc(k));
      a.sf.back().restrict_to(targets);
      a.f.push_back(empty_field(d));
    }
    return a;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan, make,
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        for (int k = 0; k < 3; ++k) {
          a.sf[k].evaluate(lowest_crossing(d, c, far_arc(k), Color::Blue), a.q);
          for (int f : targets) a.f[k].hits[f] += a.q[f];
          ++a.f[k].trials;
        }
      },
      [](Acc& a, const Acc& b) {
        for (int k = 0; k < 3; ++k) a.f[k].merge(b.f[k]);
      });
  return acc.f;
}

double ks_to_uniform(const std::vector<double>& positions, const std::vector<double>& masses) {
  double cdf = 0, ks = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double x = positions[i];
    ks = std::max(ks, std::abs(cdf - x));
    cdf += masses[i];
    ks = std::max(ks, std::abs(cdf - x));
  }
  return ks;
}

double EndpointEstimate::ks_distance() const {
  const std::size_t m = vertices.size();
  std::vector<double> pos(m), mass(m);
  for (std::size_t i = 0; i < m; ++i) {
    pos[i] = m == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(m - 1);
    mass[i] = trials ? static_cast<double>(counts[i]) / static_cast<double>(trials) : 0.0;
  }
  return ks_to_uniform(pos, mass);
}

EndpointEstimate endpoint_law(const TriangularDomain& d, const TrialPlan& plan) {
  const std::vector<int> bc = d.arc_sites(1);
  std::vector<int> index(d.site_count(), -1);
  for (std::size_t i = 0; i < bc.size(); ++i) index[bc[i]] = static_cast<int>(i);
  auto make = [&] {
    EndpointEstimate e;
    e.counts.assign(bc.size(), 0);
    return e;
  };
  auto out = run_trials<EndpointEstimate>(
      d.site_count(), plan, make,
      [&](EndpointEstimate& e, const Coloring& c, std::uint64_t) {
        const int w = lowest_crossing(d, c, 0, Color::Blue).sites.front();
        if (w < 0 || w >= d.site_count() || index[w] < 0) throw std::logic_error("w off arc bc");
        ++e.counts[index[w]];
        ++e.trials;
      },
      [](EndpointEstimate& a, const EndpointEstimate& b) {
        for (std::size_t i = 0; i < a.counts.size(); ++i) a.counts[i] += b.counts[i];
        a.trials += b.trials;
      });
  out.vertices = bc;
  return out;
}

ScalarEstimate hull_containment(const TriangularDomain& d, int face, const TrialPlan& plan) {
  if (face < 0 || face >= d.total_face_count()) throw std::invalid_argument("face out of range");
  struct Acc {
    SeparationField blue, yellow;
    ScalarEstimate e;
    std::vector<std::uint8_t> qb, qy;
  };
  auto make = [&] {
    Acc a{SeparationField(d, 0), SeparationField(d, 2), {}, {}, {}};
    a.blue.restrict_to({face});
    a.yellow.restrict_to({face});
    return a;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan, make,
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        a.blue.evaluate(lowest_crossing(d, c, 0, Color::Blue), a.qb);
        a.yellow.evaluate(lowest_crossing(d, c, 2, Color::Yellow), a.qy);
        a.e.successes += !a.qb[face] && !a.qy[face];
        ++a.e.trials;
      },
      [](Acc& a, const Acc& b) { a.e.merge(b.e); });
  acc.e.name = "hull face " + std::to_string(face);
  return acc.e;
}

FieldEstimate hull_field(const TriangularDomain& d, const TrialPlan& plan) {
  struct Acc {
    SeparationField blue, yellow;
    FieldEstimate f;
    std::vector<std::uint8_t> qb, qy;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan, [&] { return Acc{SeparationField(d, 0), SeparationField(d, 2), empty_field(d), {}, {}}; },
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        a.blue.evaluate(lowest_crossing(d, c, 0, Color::Blue), a.qb);
        a.yellow.evaluate(lowest_crossing(d, c, 2, Color::Yellow), a.qy);
        for (std::size_t f = 0; f < a.f.hits.size(); ++f) a.f.hits[f] += !a.qb[f] && !a.qy[f];
        ++a.f.trials;
      },
      [](Acc& a, const Acc& b) { a.f.merge(b.f); });
  return acc.f;
}

double StripPoint::stderr_mean() const {
  if (trials < 2) return 0.0;
  const double n = static_cast<double>(trials), m = mean();
  const double var = (static_cast<double>(count_sq_sum) - n * m * m) / (n - 1);
  return std::sqrt(std::max(var, 0.0) / n);
}

TriangularDomain build_strip(double length, int rows) {
  if (rows < 1 || !(length > 0)) throw std::invalid_argument("strip needs rows >= 1 and length > 0");
  const double delta = 2.0 / (rows * std::numbers::sqrt3);
  const int w = std::max(1, static_cast<int>(std::lround(length / delta)));
  return build_parallelogram(w, rows, delta);
}

StripPoint strip_cluster_count(double length, int rows, const TrialPlan& plan) {
  const TriangularDomain d = build_strip(length, rows);
  struct Acc {
    StripPoint p;
    ClusterLabeling l;
    UnionFind uf;
  };
  auto acc = run_trials<Acc>(
      d.site_count(), plan, [] { return Acc(); },
      [&](Acc& a, const Coloring& c, std::uint64_t) {
        label_clusters(d, c, Color::Blue, a.l, a.uf);
        const std::uint64_t k = count_spanning_clusters(a.l, 0, 2);
        a.p.count_sum += k;
        a.p.count_sq_sum += k * k;
        ++a.p.trials;
      },
      [](Acc& a, const Acc& b) {
        a.p.count_sum += b.p.count_sum;
        a.p.count_sq_sum += b.p.count_sq_sum;
        a.p.trials += b.p.trials;
      });
  acc.p.columns = d.spec().w;
  acc.p.length = d.spec().w * d.delta();
  return acc.p;
}

SlopeFit cluster_count_slope(const std::vector<StripPoint>& points) {
  if (points.size() < 2) throw std::invalid_argument("slope needs at least two lengths");
  std::vector<double> x, y;
  for (const auto& p : points) {
    x.push_back(p.length);
    y.push_back(p.mean());
  }
  SlopeFit f = ols(x, y);
  // Standard error propagated from the per-length means.
  double mx = 0;
  for (double v : x) mx += v;
  mx /= x.size();
  double sxx = 0, var = 0;
  for (double v : x) sxx += (v - mx) * (v - mx);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = (x[i] - mx) / sxx, s = points[i].stderr_mean();
    var += w * w * s * s;
  }
  f.stderr_slope = std::sqrt(var);
  return f;
}

SlopeFit cluster_count_slope(const std::vector<std::pair<double, double>>& length_mean) {
  if (length_mean.size() < 2) throw std::invalid_argument("slope needs at least two lengths");
  std::vector<double> x, y;
  for (auto [l, m] : length_mean) {
    x.push_back(l);
    y.push_back(m);
  }
  return ols(x, y);
}

ExponentFit scaling_exponent_fit(const std::vector<std::pair<double, double>>& size_statistic) {
  if (size_statistic.size() < 3) throw std::invalid_argument("exponent fit needs at least three sizes");
  std::vector<double> x, y;
  for (auto [n, s] : size_statistic) {
    if (!(n > 0) || !(s > 0)) throw std::invalid_argument("exponent fit needs positive data");
    x.push_back(std::log(n));
    y.push_back(std::log(s));
  }
  const SlopeFit f = ols(x, y);
  return {f.slope, f.stderr_slope, f.intercept};
}

LengthEstimate lowest_crossing_length(const TriangularDomain& d, const TrialPlan& plan) {
  auto out = run_trials<LengthEstimate>(
      d.site_count(), plan, [] { return LengthEstimate{}; },
      [&](LengthEstimate& e, const Coloring& c, std::uint64_t) {
        const InterfacePath p = lowest_crossing(d, c, 0, Color::Blue);
        const std::uint64_t len = p.sentinel ? 0 : p.sites.size();
        e.length_sum += len;
        e.length_sq_sum += len * len;
        ++e.trials;
      },
      [](LengthEstimate& a, const LengthEstimate& b) {
        a.length_sum += b.length_sum;
        a.length_sq_sum += b.length_sq_sum;
        a.trials += b.trials;
      });
  out.n = d.spec().n;
  return out;
}

ScalarEstimate arm_probability(const TriangularDomain& d, const Annulus& a, std::string_view pattern,
                               const TrialPlan& plan) {
  return estimate_event(
      d, [&](const Coloring& c) { return arm_event(d, c, a, pattern); }, plan,
      "arms " + std::string(pattern) + " r=" + std::to_string(a.r) + " R=" + std::to_string(a.R));
}

TriangularDomain build_arm_domain(int R) {
  if (R < 3) throw std::invalid_argument("outer radius must be at least 3");
  return build_parallelogram(2 * R, 2 * R, 1.0 / (2 * R));
}

std::vector<double> modulus_of_continuity(const TriangularDomain& d, const std::vector<double>& p,
                                          const std::vector<int>& steps) {
  std::vector<double> out;
  for (int k : steps) {
    double m = 0;
    for (int f = 0; f < d.face_count(); ++f)
      for (int e = 0; e < 3; ++e) {
        const Axial a = d.face(f).anchor;
        const int g = d.face_at({a.x + k * kNeighborOffsets[e].x, a.y + k * kNeighborOffsets[e].y}, d.face(f).up);
        if (g >= 0 && g < d.face_count()) m = std::max(m, std::abs(p[f] - p[g]));
      }
    out.push_back(m);
  }
  return out;
}

}  // namespace perc
