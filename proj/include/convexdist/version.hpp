#pragma once
// Rule-set versioning. Certificates embed this hash; replays refuse to
// compare results produced by a different rule set.

#include <cstdint>
#include <string>

namespace convexdist {

inline constexpr const char* kRuleVersionTag =
    "fact1:a+b/1 fact2:single-survivor/1 fact3:contrapositive/1 "
    "fact4:3+3/1 pairs:singleton-quadruples/1 guess:subset-dfs/1";

inline std::string ruleVersionHash() {
  std::uint64_t h = 1469598103934665603ull;
  for (const char* p = kRuleVersionTag; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ull;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xf];
    h >>= 4;
  }
  buf[16] = 0;
  return std::string(buf);
}

}  // namespace convexdist
