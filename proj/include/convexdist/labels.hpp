#pragma once
// Symbolic distance labels and label sets.
//
// A label names one of the k largest distances of a convex point set
// (1 = largest) or the sentinel "inf" meaning any length strictly below
// the k-th largest. Label sets are bit masks over {1..k, inf}; bit 0 is
// inf, bit i is label i. The magnitude order is d_1 > d_2 > ... > d_k >
// (anything labelled inf) > 0, and two inf lengths are incomparable.

#include <bit>
#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace convexdist {

using Label = int;
inline constexpr Label kInfLabel = 0;
inline constexpr int kMaxK = 15;

class LabelSet {
 public:
  constexpr LabelSet() = default;

  static constexpr LabelSet all(int k) {
    return LabelSet(static_cast<std::uint16_t>((1u << (k + 1)) - 1u));
  }
  static constexpr LabelSet infOnly() { return LabelSet(1u); }
  static constexpr LabelSet single(Label x) {
    return LabelSet(static_cast<std::uint16_t>(1u << x));
  }
  static constexpr LabelSet fromMask(std::uint32_t m) {
    return LabelSet(static_cast<std::uint16_t>(m));
  }

  constexpr std::uint16_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(Label x) const { return (mask_ >> x) & 1u; }
  constexpr bool hasInf() const { return mask_ & 1u; }
  constexpr bool hasFinite() const { return (mask_ & ~1u) != 0; }
  constexpr bool isSingleton() const { return std::has_single_bit(mask_); }
  constexpr bool isFiniteSingleton() const {
    return isSingleton() && !hasInf();
  }

  // Smallest finite index present (the largest possible magnitude).
  constexpr Label minFinite() const {
    assert(hasFinite());
    return std::countr_zero(static_cast<std::uint16_t>(mask_ & ~1u));
  }
  // Largest finite index present (the smallest finite magnitude).
  constexpr Label maxFinite() const {
    assert(hasFinite());
    return 15 - std::countl_zero(mask_);
  }

  // Upper-bound index semantics: the set's largest possible magnitude is
  // d_u for u = minFinite; a pure {inf} set is strictly below d_k, which
  // we encode as the pseudo index k+1 (it compares weaker than any d_j).
  constexpr int upperIndexEff(int k) const {
    return hasFinite() ? minFinite() : k + 1;
  }

  // Lower bound is only defined when inf is absent: every member is then
  // at least d_{maxFinite}. Returns 0 when undefined.
  constexpr Label lowerIndex() const {
    return hasInf() || mask_ == 0 ? 0 : maxFinite();
  }

  constexpr LabelSet intersect(LabelSet o) const {
    return LabelSet(static_cast<std::uint16_t>(mask_ & o.mask_));
  }
  constexpr LabelSet minus(LabelSet o) const {
    return LabelSet(static_cast<std::uint16_t>(mask_ & ~o.mask_));
  }
  constexpr LabelSet unite(LabelSet o) const {
    return LabelSet(static_cast<std::uint16_t>(mask_ | o.mask_));
  }
  constexpr bool subsetOf(LabelSet o) const {
    return (mask_ & ~o.mask_) == 0;
  }

  // "Strictly longer than d_p": drop every index >= p and inf.
  constexpr LabelSet removeGeAndInf(Label p) const {
    std::uint16_t keep = static_cast<std::uint16_t>((1u << p) - 2u);
    return LabelSet(static_cast<std::uint16_t>(mask_ & keep));
  }
  // "Strictly shorter than d_u": drop every finite index <= u, keep inf.
  constexpr LabelSet removeLe(Label u) const {
    if (u >= 15) return LabelSet(static_cast<std::uint16_t>(mask_ & 1u));
    std::uint16_t drop = static_cast<std::uint16_t>(((1u << (u + 1)) - 2u));
    return LabelSet(static_cast<std::uint16_t>(mask_ & ~drop));
  }

  constexpr bool operator==(const LabelSet&) const = default;

  std::string render() const {
    std::string out = "{";
    bool first = true;
    for (Label x = 1; x <= kMaxK; ++x) {
      if (contains(x)) {
        if (!first) out += ' ';
        out += std::to_string(x);
        first = false;
      }
    }
    if (hasInf()) {
      if (!first) out += ' ';
      out += "inf";
    }
    out += '}';
    return out;
  }

 private:
  explicit constexpr LabelSet(std::uint16_t m) : mask_(m) {}
  std::uint16_t mask_ = 0;
};

// Generic shrink: S restricted to the labels satisfying keep. An empty
// intersection is a contradiction and is reported, never returned as a set.
inline std::optional<LabelSet> shrink(LabelSet s,
                                      const std::function<bool(Label)>& keep) {
  std::uint32_t m = 0;
  for (Label x = 0; x <= kMaxK; ++x)
    if (s.contains(x) && keep(x)) m |= 1u << x;
  if (m == 0) return std::nullopt;
  return LabelSet::fromMask(m);
}

}  // namespace convexdist
