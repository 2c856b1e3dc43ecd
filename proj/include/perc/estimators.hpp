#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "perc/connectivity.hpp"
#include "perc/interface.hpp"
#include "perc/lattice.hpp"
#include "perc/sampler.hpp"

namespace perc {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval at two-sided confidence level `confidence`.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence);
// Two-sided standard normal quantile for the confidence level.
double normal_quantile(double confidence);

struct ScalarEstimate {
  std::string name;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  double estimate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
  Interval interval(double confidence) const { return wilson_interval(successes, trials, confidence); }
  void merge(const ScalarEstimate& o) {
    successes += o.successes;
    trials += o.trials;
  }
};

struct FieldEstimate {
  std::string domain;  // DomainSpec text
  std::vector<std::uint64_t> hits;  // per face, over total_face_count faces
  std::uint64_t trials = 0;

  double p(int f) const { return trials ? static_cast<double>(hits[f]) / static_cast<double>(trials) : 0.0; }
  Interval interval(int f, double confidence) const { return wilson_interval(hits[f], trials, confidence); }
  std::vector<double> probabilities() const;
  void merge(const FieldEstimate& o);
};

// Trials [first_trial, first_trial + trials) of stream 0 under `seed`, split
// into contiguous chunks over `workers` threads.
struct TrialPlan {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  int workers = 1;
  std::uint64_t first_trial = 0;
};

// Runs body(acc, coloring, trial) for every trial of the plan. Each worker
// fills its own accumulator from make(); accumulators are merged in chunk
// order with merge(into, from). With integer accumulators the result does
// not depend on the worker count.
template <class Acc, class Make, class Body, class Merge>
Acc run_trials(int sites, const TrialPlan& plan, Make make, Body body, Merge merge) {
  const int workers = static_cast<int>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(plan.workers, plan.trials)));
  std::vector<Acc> parts;
  parts.reserve(workers);
  for (int w = 0; w < workers; ++w) parts.push_back(make());
  auto chunk = [&](int w) {
    const std::uint64_t first = plan.first_trial + plan.trials * w / workers;
    const std::uint64_t last = plan.first_trial + plan.trials * (w + 1) / workers;
    Coloring c;
    for (std::uint64_t t = first; t < last; ++t) {
      sample_into(sites, {plan.seed, 0, t}, c);
      body(parts[w], c, t);
    }
  };
  if (workers == 1) {
    chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
    for (auto& t : pool) t.join();
  }
  Acc out = make();
  for (auto& p : parts) merge(out, p);
  return out;
}

using EventPredicate = std::function<bool(const Coloring&)>;

ScalarEstimate estimate_event(const TriangularDomain& d, const EventPredicate& event, const TrialPlan& plan,
                              std::string name = "event");

// Crossing from [x b] to [a c] in the triangle for each x = t*N on bc, one
// labeling per trial. Returns one estimate per t.
std::vector<ScalarEstimate> estimate_cardy(const TriangularDomain& d, const std::vector<double>& ts,
                                           const TrialPlan& plan);

FieldEstimate estimate_H_field(const TriangularDomain& d, int alpha, const TrialPlan& plan);
// All three alpha on the same colorings.
std::vector<FieldEstimate> estimate_H_fields(const TriangularDomain& d, const TrialPlan& plan);

struct PairedEstimate {
  ScalarEstimate first;   // P_beta(z, eta)
  ScalarEstimate second;  // P_{tau beta}(z, tau eta)
  std::int64_t diff_sum = 0;     // sum over trials of first - second
  std::uint64_t diff_nonzero = 0;  // trials where exactly one occurred
  double mean_difference() const;
  // Normal interval for the paired mean difference.
  Interval difference_interval(double confidence) const;
};
PairedEstimate estimate_P_pair(const TriangularDomain& d, int beta, int z, FaceDirection eta, const TrialPlan& plan);

// Upright equilateral contour with vertices at centers of faces of one
// orientation: bottom-left face (anchor, up), bottom-right anchor + (m, 0),
// top anchor + (0, m).
struct ContourSpec {
  Axial anchor;
  bool up = true;
  int m = 1;
};
// Faces whose centers lie on each side: bottom (left to right), right
// (bottom to top), left (top to bottom). Corners appear on both sides.
struct ContourFaces {
  std::vector<int> bottom, right, left;
  std::vector<int> all() const;
};
ContourFaces contour_faces(const TriangularDomain& d, const ContourSpec& g);
// delta * sum_bottom H + delta*tau * sum_right H + delta*tau^2 * sum_left H.
std::complex<double> discrete_contour_integral(const TriangularDomain& d, const std::vector<double>& field,
                                               const ContourSpec& g);
// |integral(H_beta) - integral(H_{tau beta}) / tau|.
double contour_residual(const TriangularDomain& d, const std::vector<double>& h_beta,
                        const std::vector<double>& h_tau_beta, const ContourSpec& g);
// Contour of fixed shape in the triangle of side n, placed near side bc where
// the residual is largest: anchor (3n/8, n/16), m = n/2.
ContourSpec standard_contour(int n);

// Per-trial residual statistic for each beta. With side counts (a, b, c) of
// separated contour faces, the integral is delta*(a + b tau + c tau^2), so the
// residual statistic delta*(u + v tau + w tau^2) has integer u, v, w and all
// sums are exact.
struct ContourResidualEstimate {
  double delta = 0.0;
  std::uint64_t trials = 0;
  std::array<std::int64_t, 3> sum_u{}, sum_v{}, sum_w{};
  std::array<std::int64_t, 3> sum_norm{};  // sum of |u + v tau + w tau^2|^2
  // Monte Carlo residual |mean| for beta.
  double residual(int beta) const;
  // Standard error of the complex mean: sqrt(E|Y - mean|^2 / trials).
  double standard_error(int beta) const;
  // sqrt(max(0, |mean|^2 - se^2)): the residual with the noise floor removed.
  double debiased(int beta) const;
  // Root mean square of the debiased residuals over beta.
  double combined() const;
  void merge(const ContourResidualEstimate& o);
};
ContourResidualEstimate estimate_contour_residual(const TriangularDomain& d, const ContourSpec& g,
                                                  const TrialPlan& plan);
// Monte Carlo estimate of the three fields restricted to the contour faces.
std::vector<FieldEstimate> estimate_contour_fields(const TriangularDomain& d, const ContourSpec& g,
                                                   const TrialPlan& plan);

struct EndpointEstimate {
  std::vector<int> vertices;           // arc bc from b to c
  std::vector<std::uint64_t> counts;   // per vertex
  std::uint64_t trials = 0;
  // Kolmogorov-Smirnov distance of the positions in [0,1] to Uniform[0,1].
  double ks_distance() const;
};
EndpointEstimate endpoint_law(const TriangularDomain& d, const TrialPlan& plan);
// KS distance to Uniform[0,1] for a discrete law with atoms at sorted
// positions and the given masses (summing to 1).
double ks_to_uniform(const std::vector<double>& positions, const std::vector<double>& masses);

ScalarEstimate hull_containment(const TriangularDomain& d, int face, const TrialPlan& plan);
FieldEstimate hull_field(const TriangularDomain& d, const TrialPlan& plan);

struct StripPoint {
  double length = 0.0;  // realised W * delta
  int columns = 0;
  std::uint64_t count_sum = 0;  // spanning clusters summed over trials
  std::uint64_t count_sq_sum = 0;
  std::uint64_t trials = 0;
  double mean() const { return trials ? static_cast<double>(count_sum) / static_cast<double>(trials) : 0.0; }
  double stderr_mean() const;
};
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};
// Unit-height strip of `rows` rows (delta = 2/(rows*sqrt3)) and length about L.
TriangularDomain build_strip(double length, int rows = 64);
// Blue clusters joining the two long sides.
StripPoint strip_cluster_count(double length, int rows, const TrialPlan& plan);
// Least-squares slope of mean counts against length; throws with < 2 points.
SlopeFit cluster_count_slope(const std::vector<StripPoint>& points);
SlopeFit cluster_count_slope(const std::vector<std::pair<double, double>>& length_mean);

struct ExponentFit {
  double exponent = 0.0;
  double stderr_exponent = 0.0;
  double log_prefactor = 0.0;
};
// OLS of log(statistic) on log(size); throws on < 3 points or nonpositive data.
ExponentFit scaling_exponent_fit(const std::vector<std::pair<double, double>>& size_statistic);

struct LengthEstimate {
  int n = 0;
  std::uint64_t length_sum = 0;  // sites on the lowest crossing
  std::uint64_t length_sq_sum = 0;
  std::uint64_t trials = 0;
  double mean() const { return trials ? static_cast<double>(length_sum) / static_cast<double>(trials) : 0.0; }
};
LengthEstimate lowest_crossing_length(const TriangularDomain& d, const TrialPlan& plan);

ScalarEstimate arm_probability(const TriangularDomain& d, const Annulus& a, std::string_view pattern,
                               const TrialPlan& plan);
// Parallelogram large enough for an annulus of outer radius R about its center.
TriangularDomain build_arm_domain(int R);

// Largest |p(f) - p(g)| over same-orientation interior faces g = f + k*e,
// for unit lattice steps e and each k in `steps`.
std::vector<double> modulus_of_continuity(const TriangularDomain& d, const std::vector<double>& p,
                                          const std::vector<int>& steps);

}  // namespace perc
