#pragma once
// Exact positive rationals for the target ratio alpha. All pruning tests
// are integer cross-multiplications; no floating point anywhere.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace convexdist {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return Rational{n, d};
  }

  // this > value, exactly.
  bool greaterThan(std::int64_t value) const {
    return static_cast<__int128>(num) > static_cast<__int128>(value) * den;
  }
  bool greaterThan(const Rational& o) const {
    return static_cast<__int128>(num) * o.den >
           static_cast<__int128>(o.num) * den;
  }
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Parses "p/q" or "p". Returns nullopt on malformed input.
inline std::optional<Rational> parseRational(const std::string& s) {
  try {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
      std::size_t used = 0;
      std::int64_t n = std::stoll(s, &used);
      if (used != s.size()) return std::nullopt;
      return Rational::make(n, 1);
    }
    std::size_t used = 0;
    std::int64_t n = std::stoll(s.substr(0, slash), &used);
    if (used != slash) return std::nullopt;
    std::int64_t d = std::stoll(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1) return std::nullopt;
    return Rational::make(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace convexdist
