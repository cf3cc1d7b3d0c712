// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>

namespace pirep {

// A set of contracts as a bitmask against a fixed universe. Numeric order of
// masks is the canonical total order used everywhere for tie-breaking.
using mask_t = std::uint32_t;

inline int popcount(mask_t x) { return std::popcount(x); }

inline mask_t bit(int i) { return mask_t{1} << i; }

inline bool contains(mask_t set, int i) { return (set >> i) & 1u; }

inline mask_t full_mask(int n) { return (mask_t{1} << n) - 1u; }

// Successor of s among submasks of `set` in ascending numeric order.
// Yields 0 again after `set` itself, so callers stop at s == set.
inline mask_t next_submask(mask_t s, mask_t set) { return (s - set) & set; }

// Visits every submask of `set` (including 0 and `set`) in ascending order.
template <class Fn>
void for_each_subset(mask_t set, Fn fn) {
  mask_t s = 0;
  while (true) {
    fn(s);
    if (s == set) break;
    s = next_submask(s, set);
  }
}

// Visits the bit indices of `set` in ascending order.
template <class Fn>
void for_each_bit(mask_t set, Fn fn) {
  while (set) {
    fn(std::countr_zero(set));
    set &= set - 1;
  }
}

}  // namespace pirep
