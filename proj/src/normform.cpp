#include "isogeny7/normform.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "isogeny7/forms.hpp"

namespace isogeny7 {

std::vector<RepPair> enumerate_reps(i64 m) {
  if (m < 1) throw std::invalid_argument("enumerate_reps requires m >= 1");
  if (m == 1) return {{1, 0}};
  std::vector<RepPair> out;
  // 4*C = (2a+b)^2 + 27 b^2, so b <= sqrt(4m/27).
  for (i64 b = 1; 27 * b * b <= 4 * m; ++b) {
    i64 disc = 4 * m - 27 * b * b;  // = (2a+b)^2 for integer solutions
    i64 s = i64(std::sqrt(double(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    if (s * s != disc) continue;
    for (i64 t : {s, -s}) {
      // 2a + b = t
      if (((t - b) % 2 + 2) % 2 != 0) continue;
      i64 a = (t - b) / 2;
      if (std::gcd(a, b) != 1) continue;
      out.emplace_back(a, b);
      if (s == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), [](RepPair l, RepPair r) {
    return std::pair(l.second, l.first) < std::pair(r.second, r.first);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

i64 count_reps(i64 m) {
  if (m < 1) throw std::invalid_argument("count_reps requires m >= 1");
  i64 c = 1;
  int v3 = 0;
  while (m % 3 == 0) {
    m /= 3;
    ++v3;
  }
  if (v3 == 1 || v3 >= 4) return 0;
  if (v3 == 2) c *= 2;
  if (v3 == 3) c *= 3;
  for (i64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    if (p % 3 != 1) return 0;  // c(p^k) = 1 + (p|3) = 0
    c *= 2;
  }
  if (m > 1 && m % 3 != 1) return 0;
  if (m > 1) c *= 2;
  return c;
}

namespace {

// b > 0, or b = 0 with a > 0 (the unit representative).
RepPair normalize_pair(i64 a, i64 b) {
  if (b < 0 || (b == 0 && a < 0)) return {-a, -b};
  return {a, b};
}

void fill_cubefree_flags(std::vector<u64>& bits, u64 Y) {
  bits.assign((Y + 63) / 64, ~u64(0));
  auto clear_multiples = [&](u64 cube) {
    for (u64 v = 0; v < Y; v += cube)
      bits[v >> 6] &= ~(u64(1) << (v & 63));
  };
  // keys factor into 3 and primes p = 1 mod 3 only
  clear_multiples(27);
  for (u64 p = 5; p * p * p < Y; p += 2) {
    bool prime = true;
    for (u64 q = 3; q * q <= p && prime; q += 2)
      if (p % q == 0) prime = false;
    if (prime && p % 3 == 1) clear_multiples(p * p * p);
  }
  bits[0] &= ~u64(1);  // 0 is not cubefree
}

}  // namespace

std::vector<RepPair> combine_reps(std::span<const RepPair> e_part,
                                  std::span<const RepPair> m_part) {
  std::vector<RepPair> out;
  out.reserve(e_part.size() * m_part.size());
  for (auto [ax, ay] : e_part) {
    for (auto [bx, by] : m_part) {
      OrderElement w = mul({ax, ay}, {bx, by});
      if (std::gcd(w.x, w.y) != 1) continue;
      out.push_back(normalize_pair(w.x, w.y));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::span<const RepPair> RepTable::lookup(u64 m) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), m);
  if (it == keys_.end() || *it != m) return {};
  size_t i = size_t(it - keys_.begin());
  return {pairs_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

bool RepTable::is_cubefree(u64 m) const {
  if (m >= bound) throw std::out_of_range("cubefree flag out of range");
  return (cubefree_bits_[m >> 6] >> (m & 63)) & 1;
}

size_t RepTable::lower_bound_key(u64 m) const {
  return size_t(std::lower_bound(keys_.begin(), keys_.end(), m) - keys_.begin());
}

RepTable build_rep_table(u64 Y, int threads) {
  if (Y < 2) throw std::invalid_argument("build_rep_table requires Y >= 2");
  (void)threads;  // the scan is memory-bound; kept sequential

  struct Entry {
    u64 m;
    i64 a, b;
  };
  std::vector<Entry> entries;
  entries.push_back({1, 1, 0});

  const i64 Ym1 = i64(Y) - 1;
  for (i64 b = 1; 27 * b * b <= 4 * Ym1; ++b) {
    i64 disc = 4 * Ym1 - 27 * b * b;
    i64 s = i64(std::sqrt(double(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    i64 alo = (-s - b) / 2 - 1, ahi = (s - b) / 2 + 1;
    for (i64 a = alo; a <= ahi; ++a) {
      i64 c = eval_C(a, b);
      if (c > Ym1) continue;
      if (c % 3 == 0) continue;
      if (std::gcd(a, b) != 1) continue;
      entries.push_back({u64(c), a, b});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
    return std::tuple(l.m, l.b, l.a) < std::tuple(r.m, r.b, r.a);
  });

  RepTable t;
  t.bound = Y;
  t.pairs_.reserve(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i == 0 || entries[i].m != entries[i - 1].m) {
      t.keys_.push_back(entries[i].m);
      t.offsets_.push_back(t.pairs_.size());
    }
    t.pairs_.emplace_back(entries[i].a, entries[i].b);
  }
  t.offsets_.push_back(t.pairs_.size());
  fill_cubefree_flags(t.cubefree_bits_, Y);
  return t;
}

namespace {

void put_u32(std::ostream& os, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 4);
}

void put_u64(std::ostream& os, u64 v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 8);
}

uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(b[i]) << (8 * i);
  return v;
}

u64 get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
  return v;
}

constexpr char kMagic[4] = {'I', '7', 'R', 'T'};
constexpr uint32_t kVersion = 1;

}  // namespace

void save_rep_table(const RepTable& t, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u64(os, t.bound);
  put_u64(os, t.keys_.size());
  for (size_t i = 0; i < t.keys_.size(); ++i) {
    put_u64(os, t.keys_[i]);
    put_u64(os, t.offsets_[i + 1] - t.offsets_[i]);
    for (u64 k = t.offsets_[i]; k < t.offsets_[i + 1]; ++k) {
      put_u64(os, u64(t.pairs_[k].first));
      put_u64(os, u64(t.pairs_[k].second));
    }
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

RepTable load_rep_table(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("bad cache magic: " + path);
  if (get_u32(is) != kVersion)
    throw std::runtime_error("unsupported cache version: " + path);
  RepTable t;
  t.bound = get_u64(is);
  u64 nkeys = get_u64(is);
  t.keys_.reserve(nkeys);
  t.offsets_.reserve(nkeys + 1);
  for (u64 i = 0; i < nkeys; ++i) {
    t.keys_.push_back(get_u64(is));
    u64 n = get_u64(is);
    t.offsets_.push_back(t.pairs_.size());
    for (u64 k = 0; k < n; ++k) {
      i64 a = i64(get_u64(is));
      i64 b = i64(get_u64(is));
      t.pairs_.emplace_back(a, b);
    }
  }
  t.offsets_.push_back(t.pairs_.size());
  if (!is) throw std::runtime_error("truncated cache: " + path);
  fill_cubefree_flags(t.cubefree_bits_, t.bound);  // cheaper than storing
  return t;
}

bool operator==(const RepTable& lhs, const RepTable& rhs) {
  return lhs.bound == rhs.bound && lhs.keys_ == rhs.keys_ &&
         lhs.offsets_ == rhs.offsets_ && lhs.pairs_ == rhs.pairs_ &&
         lhs.cubefree_bits_ == rhs.cubefree_bits_;
}

}  // namespace isogeny7
