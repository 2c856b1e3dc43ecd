#include "perc/sampler.hpp"

#include <bit>
#include <string>

namespace perc {

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

Coloring::Coloring(int sites, bool blue)
    : n_(sites), words_((sites + 63) / 64, blue ? ~std::uint64_t{0} : 0) {
  clear_padding();
}

void Coloring::clear_padding() {
  if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

int Coloring::blue_count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

void sample_into(int sites, const StreamSpec& s, Coloring& out) {
  if (out.size() != sites) out = Coloring(sites);
  auto& w = out.words();
  const PhiloxKey key = {static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32)};
  const std::size_t nw = w.size();
  for (std::size_t block = 0; 2 * block < nw; ++block) {
    const auto r = philox4x32_10({static_cast<std::uint32_t>(s.trial),
                                  static_cast<std::uint32_t>(s.trial >> 32), s.stream,
                                  static_cast<std::uint32_t>(block)},
                                 key);
    w[2 * block] = std::uint64_t{r[0]} | (std::uint64_t{r[1]} << 32);
    if (2 * block + 1 < nw) w[2 * block + 1] = std::uint64_t{r[2]} | (std::uint64_t{r[3]} << 32);
  }
  out.clear_padding();
}

Coloring sample_coloring(const TriangularDomain& d, const StreamSpec& s) {
  Coloring c(d.site_count());
  sample_into(d.site_count(), s, c);
  return c;
}

Coloring flip_colors(const Coloring& c) {
  Coloring out = c;
  for (auto& w : out.words()) w = ~w;
  out.clear_padding();
  return out;
}

Coloring coloring_from_index(int sites, std::uint64_t index) {
  Coloring c(sites);
  if (!c.words().empty()) c.words()[0] = index;
  c.clear_padding();
  return c;
}

std::uint64_t enumeration_size(int sites, int limit) {
  if (limit > 62) limit = 62;
  if (sites > limit)
    throw EnumerationSizeError("enumeration of " + std::to_string(sites) +
                               " sites exceeds the limit of " + std::to_string(limit));
  return std::uint64_t{1} << sites;
}

ColoringEnumeration enumerate_colorings(const TriangularDomain& d, int limit) {
  return {d.site_count(), enumeration_size(d.site_count(), limit)};
}

}  // namespace perc
