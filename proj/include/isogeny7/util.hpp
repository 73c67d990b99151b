#pragma once

#include <cstdint>
#include <string>
#include <stdexcept>

#include <gmpxx.h>

namespace isogeny7 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b);

std::string to_string_i128(i128 v);

mpz_class mpz_from_i128(i128 v);

// Throws std::overflow_error if v does not fit in a signed 128-bit integer.
i128 i128_from_mpz(const mpz_class& v);

// Clamps to the i128 range instead of throwing.
i128 i128_from_mpz_saturating(const mpz_class& v);

// floor(n^(1/k)) for n >= 0.
mpz_class floor_root(const mpz_class& n, unsigned long k);
u64 floor_root_u64(u64 n, unsigned long k);

inline mpz_class zpow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// p-adic valuation; n must be nonzero.
inline int mpz_valuation(const mpz_class& n, i64 p) {
  mpz_class q = n;
  int v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

// Parses a nonnegative integer in plain decimal ("103788") or scientific
// notation with integral value ("1e9", "2.5e6"). Rejects anything that is
// not an exact integer ("1.5", "1e-3").
mpz_class parse_big_int(const std::string& text);

// SplitMix64. Used as a counter-based generator: the i-th variate of a
// stream is splitmix64(seed + (i+1) * 0x9E3779B97F4A7C15), which makes
// results independent of how sample ranges are split across threads.
inline u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  u64 z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline u64 counter_rng(u64 seed, u64 index) {
  return splitmix64(seed + index * 0x9E3779B97F4A7C15ULL);
}

// Uniform double in [0,1) from the top 53 bits.
inline double u64_to_unit(u64 v) { return double(v >> 11) * 0x1.0p-53; }

}  // namespace isogeny7
