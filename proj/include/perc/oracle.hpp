#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "perc/connectivity.hpp"
#include "perc/interface.hpp"
#include "perc/lattice.hpp"
#include "perc/sampler.hpp"

namespace perc {

// numerator / 2^log2_denominator, exactly.
struct ExactProbability {
  std::uint64_t numerator = 0;
  int log2_denominator = 0;

  std::uint64_t denominator() const { return std::uint64_t{1} << log2_denominator; }
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator()); }
  // "numerator/denominator" in lowest terms.
  std::string to_string() const;
  // Equality of the rationals, whatever the denominators.
  friend bool operator==(const ExactProbability& a, const ExactProbability& b);
};

// Signed exact difference, used for derivative identities.
struct ExactDifference {
  std::int64_t numerator = 0;
  int log2_denominator = 0;
  friend bool operator==(const ExactDifference& a, const ExactDifference& b);
};
ExactDifference difference(const ExactProbability& a, const ExactProbability& b);

// Runs body(part, first, last) over contiguous slices of [0, count), one
// thread per part. Callers accumulate per part and merge by addition, so
// results do not depend on the number of parts.
void partition_range(std::uint64_t count, int parts,
                     const std::function<void(int part, std::uint64_t first, std::uint64_t last)>& body);

using ColoringPredicate = std::function<bool(const Coloring&)>;

ExactProbability exact_probability(const TriangularDomain& d, const ColoringPredicate& event,
                                   int limit = kDefaultEnumerationLimit, int workers = 1);

// Separation counts for all three alpha over all faces (rim included), from
// one pass. The pair count for (k, f, s) is the number of colorings with
// Q_k(g) and not Q_k(f), g the face across slot s of f: the event of
// P_k(f, eta) with eta the direction of slot s.
class ExactSeparation {
 public:
  ExactSeparation(const TriangularDomain& d, int limit = kDefaultEnumerationLimit, int workers = 1);
  ExactSeparation(TriangularDomain&&, int = 0, int = 0) = delete;  // keeps a pointer to the domain

  const TriangularDomain& domain() const { return *d_; }
  int sites() const { return sites_; }
  ExactProbability H(int alpha, int face) const;
  // P_alpha(z, eta); throws if z + eta is not a face.
  ExactProbability P(int alpha, int z, FaceDirection eta) const;
  std::vector<ExactProbability> field(int alpha) const;

 private:
  const TriangularDomain* d_;
  int sites_;
  std::array<std::vector<std::uint64_t>, 3> hits_;
  std::array<std::vector<std::array<std::uint64_t, 3>>, 3> pair_;
};

std::vector<ExactProbability> exact_H_field(const TriangularDomain& d, int alpha,
                                            int limit = kDefaultEnumerationLimit, int workers = 1);

struct ColorSwitchCheck {
  int beta = 0;
  int z = -1;
  FaceDirection eta = FaceDirection::D30;
  ExactProbability lhs;  // P_beta(z, eta)
  ExactProbability rhs;  // P_{tau beta}(z, tau eta)
  bool equal = false;
};

// (beta, z, eta) is valid iff z, z+eta and z+tau*eta are interior faces,
// or any faces with include_rim.
bool color_switch_valid(const TriangularDomain& d, int z, FaceDirection eta, bool include_rim = false);
ColorSwitchCheck verify_color_switch(const ExactSeparation& s, int beta, int z, FaceDirection eta);
ColorSwitchCheck verify_color_switch(const TriangularDomain& d, int beta, int z, FaceDirection eta,
                                     int limit = kDefaultEnumerationLimit);
// Every valid triple of the domain.
std::vector<ColorSwitchCheck> verify_all_color_switches(const ExactSeparation& s, bool include_rim = false);

struct DerivativeCheck {
  int beta = 0;
  int z = -1;
  FaceDirection eta = FaceDirection::D30;
  ExactDifference lhs;  // H(z+eta) - H(z)
  ExactDifference rhs;  // P(z, eta) - P(z+eta, -eta)
  bool equal = false;
};
// H_beta(z+eta) - H_beta(z) = P_beta(z,eta) - P_beta(z+eta,-eta) for all
// interior z and eta with z+eta interior.
// With include_rim, z and z+eta range over rim faces too.
std::vector<DerivativeCheck> verify_derivative_identity(const ExactSeparation& s, bool include_rim = false);

// Faces incident to the far arc of alpha: rim faces with a ghost of that
// arc. Their exact H is the boundary-value check.
std::vector<int> far_arc_faces(const TriangularDomain& d, int alpha);

// Probability that the face lies between the lowest blue crossing and the
// highest yellow crossing, per face (interior faces).
std::vector<ExactProbability> exact_hull_field(const TriangularDomain& d, int limit = kDefaultEnumerationLimit,
                                               int workers = 1);
// Hull event for a single coloring, for estimators and the oracle alike.
bool contained_between_crossings(const TriangularDomain& d, const Coloring& c, int face);
void hull_indicator(const TriangularDomain& d, const Coloring& c, std::vector<std::uint8_t>& out);

// Exact law of the endpoint w: probability per vertex of arc bc (site ids
// in arc order from b to c).
struct EndpointLaw {
  std::vector<int> vertices;
  std::vector<ExactProbability> mass;
};
EndpointLaw exact_endpoint_law(const TriangularDomain& d, int limit = kDefaultEnumerationLimit, int workers = 1);
// Position of w along arc bc in [0,1], 0 at b.
double endpoint_position(const TriangularDomain& d, int w);

// Arm event probability, enumerating only the annulus sites.
ExactProbability exact_arm_probability(const TriangularDomain& d, const Annulus& a, std::string_view pattern,
                                       int limit = kDefaultEnumerationLimit, int workers = 1);

}  // namespace perc
