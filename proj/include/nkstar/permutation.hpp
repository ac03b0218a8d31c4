#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nkstar {

/// Largest n supported by the fixed-capacity label storage.
inline constexpr int kMaxSymbols = 16;

enum class Parity { even, odd };

constexpr Parity flip(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

constexpr const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// A set of values drawn from 1..kMaxSymbols, stored as a bit mask.
class ValueSet {
 public:
  constexpr ValueSet() = default;
  constexpr ValueSet(std::initializer_list<int> values) {
    for (int v : values) insert(v);
  }
  static constexpr ValueSet from_mask(std::uint32_t mask) {
    ValueSet s;
    s.mask_ = mask;
    return s;
  }
  /// The set {1..n}.
  static constexpr ValueSet range(int n) { return from_mask(((std::uint32_t{1} << n) - 1) << 1); }

  constexpr void insert(int v) { mask_ |= bit(v); }
  constexpr void erase(int v) { mask_ &= ~bit(v); }
  constexpr bool contains(int v) const { return (mask_ & bit(v)) != 0; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr std::uint32_t mask() const { return mask_; }

  /// Smallest member; the set must be non-empty.
  constexpr int min() const { return std::countr_zero(mask_); }

  std::vector<int> values() const {
    std::vector<int> out;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  friend constexpr ValueSet operator|(ValueSet a, ValueSet b) { return from_mask(a.mask_ | b.mask_); }
  friend constexpr ValueSet operator&(ValueSet a, ValueSet b) { return from_mask(a.mask_ & b.mask_); }
  friend constexpr ValueSet operator-(ValueSet a, ValueSet b) { return from_mask(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(ValueSet a, ValueSet b) = default;

 private:
  static constexpr std::uint32_t bit(int v) { return std::uint32_t{1} << v; }
  std::uint32_t mask_ = 0;
};

/// A permutation of {1..n}. Positions and values are both 1-indexed.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::span<const int> images) : size_(static_cast<int>(images.size())) {
    if (size_ < 1 || size_ > kMaxSymbols)
      throw std::invalid_argument("permutation size must be in 1.." + std::to_string(kMaxSymbols));
    ValueSet seen;
    for (int pos = 1; pos <= size_; ++pos) {
      int v = images[pos - 1];
      if (v < 1 || v > size_) throw std::invalid_argument("permutation value out of range: " + std::to_string(v));
      if (seen.contains(v)) throw std::invalid_argument("permutation value repeated: " + std::to_string(v));
      seen.insert(v);
      image_[pos] = static_cast<std::uint8_t>(v);
      inverse_[v] = static_cast<std::uint8_t>(pos);
    }
  }
  Permutation(std::initializer_list<int> images) : Permutation(std::span<const int>(images.begin(), images.size())) {}

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return Permutation(v);
  }

  int size() const { return size_; }

  /// sigma(pos).
  int operator()(int pos) const { return image_[pos]; }
  /// sigma^{-1}(value).
  int position_of(int value) const { return inverse_[value]; }

  int checked_image(int pos) const {
    check_position(pos);
    return image_[pos];
  }

  /// Exchange the images at two positions in place.
  void swap_positions(int a, int b) {
    std::swap(image_[a], image_[b]);
    inverse_[image_[a]] = static_cast<std::uint8_t>(a);
    inverse_[image_[b]] = static_cast<std::uint8_t>(b);
  }

  /// Sort the images at positions first..last ascending.
  void sort_positions(int first, int last) {
    std::sort(image_.begin() + first, image_.begin() + last + 1);
    for (int pos = first; pos <= last; ++pos) inverse_[image_[pos]] = static_cast<std::uint8_t>(pos);
  }

  std::vector<int> images() const { return {image_.begin() + 1, image_.begin() + 1 + size_}; }

  Permutation inverse() const {
    Permutation p = *this;
    std::swap(p.image_, p.inverse_);
    return p;
  }

  /// (this o other)(x) = this(other(x)).
  Permutation compose(const Permutation& other) const {
    if (other.size_ != size_) throw std::invalid_argument("cannot compose permutations of different sizes");
    Permutation p = *this;
    for (int x = 1; x <= size_; ++x) {
      p.image_[x] = image_[other.image_[x]];
      p.inverse_[p.image_[x]] = static_cast<std::uint8_t>(x);
    }
    return p;
  }

  void check_position(int pos) const {
    if (pos < 1 || pos > size_)
      throw std::out_of_range("position " + std::to_string(pos) + " outside 1.." + std::to_string(size_));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.size_ == b.size_ && std::equal(a.image_.begin() + 1, a.image_.begin() + 1 + a.size_, b.image_.begin() + 1);
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return std::lexicographical_compare(a.image_.begin() + 1, a.image_.begin() + 1 + a.size_, b.image_.begin() + 1,
                                        b.image_.begin() + 1 + b.size_);
  }

 private:
  int size_ = 0;
  std::array<std::uint8_t, kMaxSymbols + 1> image_{};
  std::array<std::uint8_t, kMaxSymbols + 1> inverse_{};
};

struct CycleDecomposition {
  /// Each cycle starts at its minimum value; cycles are sorted by that minimum.
  std::vector<std::vector<int>> cycles;
  /// value_to_cycle[v] is the index into `cycles` holding v (index 0 unused).
  std::vector<int> value_to_cycle;

  const std::vector<int>& cycle_of(int value) const { return cycles[static_cast<std::size_t>(value_to_cycle[value])]; }
};

inline CycleDecomposition cycle_decompose(const Permutation& p) {
  CycleDecomposition d;
  d.value_to_cycle.assign(static_cast<std::size_t>(p.size()) + 1, -1);
  // Scanning values ascending makes every cycle start at its minimum and keeps cycles sorted.
  for (int start = 1; start <= p.size(); ++start) {
    if (d.value_to_cycle[start] >= 0) continue;
    int idx = static_cast<int>(d.cycles.size());
    auto& cycle = d.cycles.emplace_back();
    for (int v = start; d.value_to_cycle[v] < 0; v = p(v)) {
      d.value_to_cycle[v] = idx;
      cycle.push_back(v);
    }
  }
  return d;
}

inline int cycle_count(const Permutation& p) {
  ValueSet seen;
  int count = 0;
  for (int start = 1; start <= p.size(); ++start) {
    if (seen.contains(start)) continue;
    ++count;
    for (int v = start; !seen.contains(v); v = p(v)) seen.insert(v);
  }
  return count;
}

/// Parity of the inversion count, computed as the parity of n minus the number of cycles.
inline Parity sign(const Permutation& p) { return (p.size() - cycle_count(p)) % 2 == 0 ? Parity::even : Parity::odd; }

inline Permutation apply_transposition(const Permutation& p, int a, int b) {
  p.check_position(a);
  p.check_position(b);
  if (a == b) throw std::invalid_argument("transposition needs two distinct positions");
  Permutation out = p;
  out.swap_positions(a, b);
  return out;
}

enum class Direction { forward, backward };

/// One full period of a, p(a), p^2(a), ... (or the inverse images when walking backward).
inline std::vector<int> traverse_cycle(const Permutation& p, int a, Direction direction) {
  if (a < 1 || a > p.size()) throw std::out_of_range("value " + std::to_string(a) + " outside permutation");
  std::vector<int> out{a};
  auto step = [&](int v) { return direction == Direction::forward ? p(v) : p.position_of(v); };
  for (int v = step(a); v != a; v = step(v)) out.push_back(v);
  return out;
}

/// Leader of the ~k class of p: positions k+1..n sorted ascending, positions 1..k untouched.
inline Permutation lead(const Permutation& p, int k) {
  if (k < 1 || k >= p.size()) throw std::invalid_argument("lead requires 1 <= k < n");
  Permutation out = p;
  out.sort_positions(k + 1, p.size());
  return out;
}

/// Last position of the left half of the arm: ceil((k-1)/2) + 1.
constexpr int left_half_end(int k) { return k / 2 + 1; }

/// Position that value v must occupy: v's position in t.
/// The cycles of c relative to t are the cycles of the value map v -> c(t^{-1}(v)),
/// i.e. v is followed by the value currently sitting on v's home position.
inline Permutation relative_permutation(const Permutation& c, const Permutation& t) { return c.compose(t.inverse()); }

/// Number of alternating cycles of c relative to t: cycles of length >= 2 whose members, in forward order,
/// alternate between "in the left half of c, belongs in the right half of t" and the mirror condition.
inline int alternating_cycle_count(const Permutation& c, const Permutation& t, int k) {
  if (c.size() != t.size()) throw std::invalid_argument("alternating_cycle_count: permutations differ in n");
  if (k < 1 || k >= c.size()) throw std::invalid_argument("alternating_cycle_count: requires 1 <= k < n");
  const int split = left_half_end(k);
  auto classify = [&](int v) {
    // 1: left of c and right of t; 2: right of c and left of t; 0: neither.
    int pc = c.position_of(v), pt = t.position_of(v);
    if (pc < 2 || pc > k || pt < 2 || pt > k || pc == pt) return 0;
    bool c_left = pc <= split, t_left = pt <= split;
    if (c_left && !t_left) return 1;
    if (!c_left && t_left) return 2;
    return 0;
  };
  const Permutation rel = relative_permutation(c, t);
  int count = 0;
  for (const auto& cycle : cycle_decompose(rel).cycles) {
    if (cycle.size() < 2) continue;
    bool alternating = true;
    for (std::size_t i = 0; i < cycle.size() && alternating; ++i) {
      int a = classify(cycle[i]), b = classify(cycle[(i + 1) % cycle.size()]);
      alternating = a != 0 && b != 0 && a != b;
    }
    if (alternating) ++count;
  }
  return count;
}

inline std::string format_values(std::span<const int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(values[i]);
  }
  return out;
}

inline std::string to_string(const Permutation& p) { return format_values(p.images()); }

/// Parse a dash-separated list of positive integers, e.g. "7-2-3-4-5".
inline std::vector<int> parse_values(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) throw std::invalid_argument("empty label");
  std::size_t start = 0;
  while (true) {
    std::size_t dash = text.find('-', start);
    std::string_view token = text.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    int v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      throw std::invalid_argument("malformed label '" + std::string(text) + "'");
    out.push_back(v);
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return out;
}

inline Permutation parse_permutation(std::string_view text) { return Permutation(parse_values(text)); }

}  // namespace nkstar
