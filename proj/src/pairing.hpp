#pragma once

#include "nat.hpp"

#include <utility>
#include <vector>

namespace vpc {

// Cantor pairing, right-nested for tuples. The n-ary bracket is bijective for
// each fixed arity: <> = 0, <a> = a, <a,b,...> = pair2(a, <b,...>).
Nat pair2(const Nat& x, const Nat& y);
std::pair<Nat, Nat> unpair2(const Nat& z);

Nat pair_list(const std::vector<Nat>& xs);
std::vector<Nat> unpair_list(const Nat& z, std::size_t k);

// Splits z into (tag, payload) for an m-tagged sum: 0 -> (0,0), otherwise the
// unique (r,d) with 1 <= r <= m and z = m*d + r.
std::pair<Nat, Nat> tag_split(const Nat& z, unsigned m);

}  // namespace vpc
