#pragma once

// Arithmetic in the order Z[3*zeta] (zeta a primitive sixth root of unity)
// and enumeration of primitive representations of integers by the norm form
// C(a,b) = a^2 + ab + 7b^2.
//
// Elements are written x + y*w in the basis {1, w} with w = -1 + 3*zeta,
// so w^2 = w - 7 and Nm(x + y*w) = C(x, y).

#include <cstdint>
#include <string>
#include <vector>
#include <span>
#include <utility>

#include "isogeny7/util.hpp"

namespace isogeny7 {

struct OrderElement {
  i64 x = 0;
  i64 y = 0;
  friend bool operator==(const OrderElement&, const OrderElement&) = default;
};

inline OrderElement mul(OrderElement u, OrderElement v) {
  return {u.x * v.x - 7 * u.y * v.y, u.x * v.y + v.x * u.y + u.y * v.y};
}

inline i64 norm(OrderElement u) { return u.x * u.x + u.x * u.y + 7 * u.y * u.y; }

using RepPair = std::pair<i64, i64>;

// All (a,b) with b > 0, gcd(a,b) = 1 and C(a,b) = m, sorted by (b,a).
// The unit value m = 1 is represented by the single pair (1,0).
std::vector<RepPair> enumerate_reps(i64 m);

// c(m), evaluated multiplicatively: c(3)=0, c(9)=2, c(27)=3, c(3^v)=0 for
// v >= 4, and c(p^k) = 1 + (p|3) for p != 3. Must agree with the length of
// enumerate_reps(m) (tested).
i64 count_reps(i64 m);

// Products of all cross pairs, normalized to b > 0 (b = 0 forced to a > 0),
// with non-primitive products discarded and duplicates removed.
std::vector<RepPair> combine_reps(std::span<const RepPair> e_part,
                                  std::span<const RepPair> m_part);

// Lookup table m -> primitive representations, for all m < bound with
// 3 coprime to m, plus the unit entry 1 -> [(1,0)]. Only m with at least
// one representation are stored. Cubefree flags cover every key.
class RepTable {
 public:
  u64 bound = 0;

  std::span<const RepPair> lookup(u64 m) const;
  bool is_cubefree(u64 m) const;
  size_t key_count() const { return keys_.size(); }
  u64 key_at(size_t i) const { return keys_[i]; }
  // index of the first key >= m
  size_t lower_bound_key(u64 m) const;
  size_t pair_count() const { return pairs_.size(); }

  friend RepTable build_rep_table(u64 Y, int threads);
  friend void save_rep_table(const RepTable&, const std::string&);
  friend RepTable load_rep_table(const std::string&);
  friend bool operator==(const RepTable&, const RepTable&);

 private:
  std::vector<u64> keys_;           // sorted
  std::vector<u64> offsets_;        // keys_.size() + 1
  std::vector<RepPair> pairs_;
  std::vector<u64> cubefree_bits_;  // bit m set <=> m is cubefree
};

RepTable build_rep_table(u64 Y, int threads = 1);

// Binary cache: magic "I7RT", little-endian u32 version, u64 Y, u64 number
// of keys, then per key u64 m, u64 count and count x (i64 a, i64 b).
void save_rep_table(const RepTable& table, const std::string& path);
RepTable load_rep_table(const std::string& path);
bool operator==(const RepTable& lhs, const RepTable& rhs);

}  // namespace isogeny7
