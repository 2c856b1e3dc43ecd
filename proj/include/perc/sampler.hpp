#pragma once

#include <array>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <vector>

#include "perc/lattice.hpp"

namespace perc {

// Philox4x32-10 counter-based generator (Salmon et al. constants).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

inline constexpr const char* kGeneratorName = "philox4x32-10/v1";

// One bit per site; 1 = blue.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(int sites, bool blue = false);

  int size() const { return n_; }
  bool blue(int s) const { return (words_[s >> 6] >> (s & 63)) & 1u; }
  void set(int s, bool b) {
    const std::uint64_t m = std::uint64_t{1} << (s & 63);
    if (b) words_[s >> 6] |= m;
    else words_[s >> 6] &= ~m;
  }
  int blue_count() const;
  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }
  void clear_padding();
  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Stream key. The stream index is a logical stream id: estimators always use
// stream 0, so trial t yields the same coloring whichever thread runs it.
struct StreamSpec {
  std::uint64_t seed = 0;
  std::uint32_t stream = 0;
  std::uint64_t trial = 0;
};

Coloring sample_coloring(const TriangularDomain& d, const StreamSpec& s);
void sample_into(int sites, const StreamSpec& s, Coloring& out);

Coloring flip_colors(const Coloring& c);

inline constexpr int kDefaultEnumerationLimit = 26;

class EnumerationSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Site s is blue iff bit s of the index is set.
Coloring coloring_from_index(int sites, std::uint64_t index);

// All 2^sites colorings in increasing index order.
class ColoringEnumeration {
 public:
  class iterator {
   public:
    using value_type = Coloring;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;
    iterator(int sites, std::uint64_t i) : sites_(sites), i_(i) {}
    Coloring operator*() const { return coloring_from_index(sites_, i_); }
    iterator& operator++() { ++i_; return *this; }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    int sites_;
    std::uint64_t i_;
  };
  ColoringEnumeration(int sites, std::uint64_t count) : sites_(sites), count_(count) {}
  iterator begin() const { return {sites_, 0}; }
  iterator end() const { return {sites_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  int sites_;
  std::uint64_t count_;
};

ColoringEnumeration enumerate_colorings(const TriangularDomain& d,
                                        int limit = kDefaultEnumerationLimit);
// Throws EnumerationSizeError when sites exceed the limit (capped at 62).
std::uint64_t enumeration_size(int sites, int limit = kDefaultEnumerationLimit);

}  // namespace perc
