#include "perc/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace perc {

namespace {

int slot_of(const TriangularDomain& d, int f, FaceDirection eta) {
  for (int s = 0; s < 3; ++s)
    if (d.slot_direction(f, s) == eta) return s;
  return -1;
}

// Face across direction eta from f, any kind, or -1.
int step_any(const TriangularDomain& d, int f, FaceDirection eta) {
  const int s = slot_of(d, f, eta);
  return s < 0 ? -1 : d.face_neighbor(f, s);
}

bool face_ok(const TriangularDomain& d, int f, bool include_rim) {
  return f >= 0 && (include_rim || f < d.face_count());
}

constexpr FaceDirection kAllDirections[] = {FaceDirection::D30,  FaceDirection::D90,  FaceDirection::D150,
                                            FaceDirection::D210, FaceDirection::D270, FaceDirection::D330};

}  // namespace

std::string ExactProbability::to_string() const {
  std::uint64_t num = numerator;
  int k = log2_denominator;
  while (k > 0 && num % 2 == 0 && num != 0) {
    num /= 2;
    --k;
  }
  if (num == 0) k = 0;
  return std::to_string(num) + "/" + std::to_string(std::uint64_t{1} << k);
}

bool operator==(const ExactProbability& a, const ExactProbability& b) {
  return difference(a, b).numerator == 0;
}

bool operator==(const ExactDifference& a, const ExactDifference& b) {
  const int m = std::max(a.log2_denominator, b.log2_denominator);
  return a.numerator * (std::int64_t{1} << (m - a.log2_denominator)) ==
         b.numerator * (std::int64_t{1} << (m - b.log2_denominator));
}

ExactDifference difference(const ExactProbability& a, const ExactProbability& b) {
  const int m = std::max(a.log2_denominator, b.log2_denominator);
  const auto na = static_cast<std::int64_t>(a.numerator << (m - a.log2_denominator));
  const auto nb = static_cast<std::int64_t>(b.numerator << (m - b.log2_denominator));
  return {na - nb, m};
}

void partition_range(std::uint64_t count, int parts,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& body) {
  parts = std::max(1, parts);
  if (parts == 1) {
    body(0, 0, count);
    return;
  }
  std::vector<std::thread> pool;
  for (int p = 0; p < parts; ++p) {
    const std::uint64_t first = count * p / parts, last = count * (p + 1) / parts;
    pool.emplace_back(body, p, first, last);
  }
  for (auto& t : pool) t.join();
}

ExactProbability exact_probability(const TriangularDomain& d, const ColoringPredicate& event, int limit,
                                   int workers) {
  const int n = d.site_count();
  const std::uint64_t total = enumeration_size(n, limit);
  std::vector<std::uint64_t> hits(std::max(1, workers), 0);
  partition_range(total, workers, [&](int part, std::uint64_t first, std::uint64_t last) {
    for (std::uint64_t i = first; i < last; ++i) hits[part] += event(coloring_from_index(n, i));
  });
  ExactProbability p{0, n};
  for (auto h : hits) p.numerator += h;
  return p;
}

ExactSeparation::ExactSeparation(const TriangularDomain& d, int limit, int workers)
    : d_(&d), sites_(d.site_count()) {
  if (d.arc_count() != 3) throw std::invalid_argument("separation needs a three-mark domain");
  const std::uint64_t total = enumeration_size(sites_, limit);
  const int nf = d.total_face_count();
  workers = std::max(1, workers);
  struct Partial {
    std::array<std::vector<std::uint64_t>, 3> hits;
    std::array<std::vector<std::array<std::uint64_t, 3>>, 3> pair;
  };
  std::vector<Partial> parts(workers);
  for (auto& p : parts)
    for (int k = 0; k < 3; ++k) {
      p.hits[k].assign(nf, 0);
      p.pair[k].assign(nf, {0, 0, 0});
    }
  partition_range(total, workers, [&](int part, std::uint64_t first, std::uint64_t last) {
    Partial& acc = parts[part];
    std::vector<SeparationField> fields;
    for (int k = 0; k < 3; ++k) fields.emplace_back(d, far_arc(k));
    std::vector<std::uint8_t> q;
    for (std::uint64_t i = first; i < last; ++i) {
      const Coloring c = coloring_from_index(sites_, i);
      for (int k = 0; k < 3; ++k) {
        fields[k].evaluate(lowest_crossing(d, c, far_arc(k), Color::Blue), q);
        for (int f = 0; f < nf; ++f) {
          acc.hits[k][f] += q[f];
          if (q[f]) continue;
          for (int s = 0; s < 3; ++s) {
            const int g = d.face_neighbor(f, s);
            if (g >= 0) acc.pair[k][f][s] += q[g];
          }
        }
      }
    }
  });
  for (int k = 0; k < 3; ++k) {
    hits_[k].assign(nf, 0);
    pair_[k].assign(nf, {0, 0, 0});
    for (const auto& p : parts)
      for (int f = 0; f < nf; ++f) {
        hits_[k][f] += p.hits[k][f];
        for (int s = 0; s < 3; ++s) pair_[k][f][s] += p.pair[k][f][s];
      }
  }
}

ExactProbability ExactSeparation::H(int alpha, int face) const { return {hits_.at(alpha).at(face), sites_}; }

ExactProbability ExactSeparation::P(int alpha, int z, FaceDirection eta) const {
  const int s = slot_of(*d_, z, eta);
  if (s < 0 || d_->face_neighbor(z, s) < 0) throw std::invalid_argument("z + eta is not a face");
  return {pair_.at(alpha)[z][s], sites_};
}

std::vector<ExactProbability> ExactSeparation::field(int alpha) const {
  std::vector<ExactProbability> out;
  for (auto h : hits_.at(alpha)) out.push_back({h, sites_});
  return out;
}

std::vector<ExactProbability> exact_H_field(const TriangularDomain& d, int alpha, int limit, int workers) {
  return ExactSeparation(d, limit, workers).field(alpha);
}

bool color_switch_valid(const TriangularDomain& d, int z, FaceDirection eta, bool include_rim) {
  return face_ok(d, z, include_rim) && face_ok(d, step_any(d, z, eta), include_rim) &&
         face_ok(d, step_any(d, z, rotate_direction(eta)), include_rim);
}

ColorSwitchCheck verify_color_switch(const ExactSeparation& s, int beta, int z, FaceDirection eta) {
  if (beta < 0 || beta > 2) throw std::invalid_argument("beta must be 0, 1 or 2");
  if (!color_switch_valid(s.domain(), z, eta, true)) throw std::invalid_argument("invalid (z, eta)");
  ColorSwitchCheck out;
  out.beta = beta;
  out.z = z;
  out.eta = eta;
  out.lhs = s.P(beta, z, eta);
  out.rhs = s.P((beta + 1) % 3, z, rotate_direction(eta));
  out.equal = out.lhs == out.rhs;
  return out;
}

ColorSwitchCheck verify_color_switch(const TriangularDomain& d, int beta, int z, FaceDirection eta, int limit) {
  return verify_color_switch(ExactSeparation(d, limit), beta, z, eta);
}

std::vector<ColorSwitchCheck> verify_all_color_switches(const ExactSeparation& s, bool include_rim) {
  std::vector<ColorSwitchCheck> out;
  const TriangularDomain& d = s.domain();
  const int nf = include_rim ? d.total_face_count() : d.face_count();
  for (int beta = 0; beta < 3; ++beta)
    for (int z = 0; z < nf; ++z)
      for (FaceDirection eta : kAllDirections)
        if (color_switch_valid(d, z, eta, include_rim)) out.push_back(verify_color_switch(s, beta, z, eta));
  return out;
}

std::vector<DerivativeCheck> verify_derivative_identity(const ExactSeparation& s, bool include_rim) {
  std::vector<DerivativeCheck> out;
  const TriangularDomain& d = s.domain();
  const int nf = include_rim ? d.total_face_count() : d.face_count();
  for (int beta = 0; beta < 3; ++beta)
    for (int z = 0; z < nf; ++z)
      for (FaceDirection eta : kAllDirections) {
        const int g = step_any(d, z, eta);
        if (!face_ok(d, g, include_rim)) continue;
        DerivativeCheck c;
        c.beta = beta;
        c.z = z;
        c.eta = eta;
        c.lhs = difference(s.H(beta, g), s.H(beta, z));
        c.rhs = difference(s.P(beta, z, eta), s.P(beta, g, negate_direction(eta)));
        c.equal = c.lhs == c.rhs;
        out.push_back(c);
      }
  return out;
}

std::vector<int> far_arc_faces(const TriangularDomain& d, int alpha) {
  std::vector<int> out;
  for (int f = d.face_count(); f < d.total_face_count(); ++f)
    if (d.rim_touches_arc(f, far_arc(alpha))) out.push_back(f);
  return out;
}

void hull_indicator(const TriangularDomain& d, const Coloring& c, std::vector<std::uint8_t>& out) {
  // Both below regions: the blue one hugs ab, the yellow one hugs ca. A face
  // lies between the crossings iff it is in both.
  const auto blue = below_region(d, lowest_crossing(d, c, 0, Color::Blue));
  const auto yellow = below_region(d, lowest_crossing(d, c, 2, Color::Yellow));
  out.assign(d.total_face_count(), 0);
  for (int f = 0; f < d.total_face_count(); ++f) out[f] = blue[f] && yellow[f];
}

bool contained_between_crossings(const TriangularDomain& d, const Coloring& c, int face) {
  std::vector<std::uint8_t> h;
  hull_indicator(d, c, h);
  return h.at(face);
}

std::vector<ExactProbability> exact_hull_field(const TriangularDomain& d, int limit, int workers) {
  const int n = d.site_count(), nf = d.total_face_count();
  const std::uint64_t total = enumeration_size(n, limit);
  std::vector<std::vector<std::uint64_t>> hits(std::max(1, workers), std::vector<std::uint64_t>(nf, 0));
  partition_range(total, workers, [&](int part, std::uint64_t first, std::uint64_t last) {
    std::vector<std::uint8_t> h;
    for (std::uint64_t i = first; i < last; ++i) {
      hull_indicator(d, coloring_from_index(n, i), h);
      for (int f = 0; f < nf; ++f) hits[part][f] += h[f];
    }
  });
  std::vector<ExactProbability> out(nf, ExactProbability{0, n});
  for (const auto& p : hits)
    for (int f = 0; f < nf; ++f) out[f].numerator += p[f];
  return out;
}

double endpoint_position(const TriangularDomain& d, int w) {
  const auto bc = d.arc_sites(1);
  const auto it = std::find(bc.begin(), bc.end(), w);
  if (it == bc.end()) throw std::invalid_argument("w is not on arc bc");
  return bc.size() == 1 ? 0.0 : static_cast<double>(it - bc.begin()) / static_cast<double>(bc.size() - 1);
}

EndpointLaw exact_endpoint_law(const TriangularDomain& d, int limit, int workers) {
  const int n = d.site_count();
  const std::uint64_t total = enumeration_size(n, limit);
  EndpointLaw law;
  law.vertices = d.arc_sites(1);
  const std::size_t m = law.vertices.size();
  std::vector<int> index(d.site_count(), -1);
  for (std::size_t i = 0; i < m; ++i) index[law.vertices[i]] = static_cast<int>(i);
  std::vector<std::vector<std::uint64_t>> counts(std::max(1, workers), std::vector<std::uint64_t>(m, 0));
  partition_range(total, workers, [&](int part, std::uint64_t first, std::uint64_t last) {
    for (std::uint64_t i = first; i < last; ++i) {
      const int w = outer_boundary(d, coloring_from_index(n, i)).w;
      if (w < 0 || w >= d.site_count() || index[w] < 0) throw std::logic_error("w off arc bc");
      ++counts[part][index[w]];
    }
  });
  law.mass.assign(m, ExactProbability{0, n});
  for (const auto& p : counts)
    for (std::size_t i = 0; i < m; ++i) law.mass[i].numerator += p[i];
  return law;
}

ExactProbability exact_arm_probability(const TriangularDomain& d, const Annulus& a, std::string_view pattern,
                                       int limit, int workers) {
  const int n = static_cast<int>(a.sites.size());
  const std::uint64_t total = enumeration_size(n, limit);
  std::vector<std::uint64_t> hits(std::max(1, workers), 0);
  partition_range(total, workers, [&](int part, std::uint64_t first, std::uint64_t last) {
    Coloring c(d.site_count());
    for (std::uint64_t i = first; i < last; ++i) {
      for (int j = 0; j < n; ++j) c.set(a.sites[j], (i >> j) & 1u);
      hits[part] += arm_event(d, c, a, pattern);
    }
  });
  ExactProbability p{0, n};
  for (auto h : hits) p.numerator += h;
  return p;
}

}  // namespace perc
