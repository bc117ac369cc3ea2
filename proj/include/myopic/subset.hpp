#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace myopic {

inline constexpr int kMaxGroundSetSize = 24;

// A subset of a ground set of at most 24 items, stored as a bitmask.
// Bit i is set iff item i (0-based) is in the set.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  static constexpr Subset empty_set() { return Subset(0); }
  static constexpr Subset full_set(int n) { return Subset((std::uint32_t{1} << n) - 1); }
  static constexpr Subset singleton(int item) { return Subset(std::uint32_t{1} << item); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int item) const { return (bits_ >> item) & 1u; }
  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(Subset other) const { return (bits_ & other.bits_) != 0; }

  constexpr Subset with(int item) const { return Subset(bits_ | (std::uint32_t{1} << item)); }
  constexpr Subset without(int item) const { return Subset(bits_ & ~(std::uint32_t{1} << item)); }
  constexpr Subset complement(int n) const { return Subset(full_set(n).bits_ & ~bits_); }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator^(Subset a, Subset b) { return Subset(a.bits_ ^ b.bits_); }
  friend constexpr bool operator==(Subset a, Subset b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(Subset a, Subset b) { return a.bits_ != b.bits_; }
  friend constexpr bool operator<(Subset a, Subset b) { return a.bits_ < b.bits_; }

  std::vector<int> items() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint32_t m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

 private:
  std::uint32_t bits_ = 0;
};

// Calls fn(Subset) for every subset of `sup`, in ascending mask order.
template <typename Fn>
void for_each_subset_of(Subset sup, Fn&& fn) {
  std::uint32_t bits = sup.bits();
  std::uint32_t s = 0;
  while (true) {
    fn(Subset(s));
    if (s == bits) break;
    s = (s - bits) & bits;  // next subset of `bits` after s
  }
}

// A fixed, labeled ground set. Items are addressed by 0-based index;
// labels default to "1".."n".
class GroundSet {
 public:
  explicit GroundSet(int n) : n_(n) {
    check_size(n);
    labels_.reserve(n);
    for (int i = 0; i < n; ++i) labels_.push_back(std::to_string(i + 1));
  }
  GroundSet(int n, std::vector<std::string> labels) : n_(n), labels_(std::move(labels)) {
    check_size(n);
    if (static_cast<int>(labels_.size()) != n)
      throw std::domain_error("ground set labels must match item count");
  }

  int size() const { return n_; }
  Subset full() const { return Subset::full_set(n_); }
  std::uint32_t table_size() const { return std::uint32_t{1} << n_; }
  const std::string& label(int item) const { return labels_.at(item); }
  const std::vector<std::string>& labels() const { return labels_; }

  // Index of the item carrying `label`, or -1.
  int index_of(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
      if (labels_[i] == label) return i;
    return -1;
  }

  bool valid(Subset s) const { return s.bits() < table_size(); }

  // Space-separated labels, empty string for the empty set.
  std::string describe(Subset s) const {
    std::string out;
    for (int i : s.items()) {
      if (!out.empty()) out += ' ';
      out += label(i);
    }
    return out;
  }

 private:
  static void check_size(int n) {
    if (n < 1 || n > kMaxGroundSetSize)
      throw std::domain_error("ground set size must be in [1, 24]");
  }

  int n_;
  std::vector<std::string> labels_;
};

}  // namespace myopic
