#include "pairing.hpp"

#include "error.hpp"

namespace vpc {

Nat pair2(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Nat, Nat> unpair2(const Nat& z) {
  Nat s = (nat_isqrt(8 * z + 1) - 1) / 2;
  Nat y = z - s * (s + 1) / 2;
  return {s - y, y};
}

Nat pair_list(const std::vector<Nat>& xs) {
  if (xs.empty()) return 0;
  Nat acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = pair2(xs[i], acc);
  return acc;
}

std::vector<Nat> unpair_list(const Nat& z, std::size_t k) {
  if (k == 0) {
    if (z != 0) fail(ErrCode::BadArgument, "no 0-tuple encodes " + nat_str(z));
    return {};
  }
  std::vector<Nat> out;
  out.reserve(k);
  Nat rest = z;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    auto [a, b] = unpair2(rest);
    out.push_back(a);
    rest = b;
  }
  out.push_back(rest);
  return out;
}

std::pair<Nat, Nat> tag_split(const Nat& z, unsigned m) {
  if (z == 0) return {0, 0};
  Nat r = z % m;
  if (r == 0) return {m, z / m - 1};
  return {r, z / m};
}

}  // namespace vpc
