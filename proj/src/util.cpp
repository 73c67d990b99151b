#include "isogeny7/util.hpp"

#include <algorithm>
#include <cctype>

namespace isogeny7 {

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string to_string_i128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 x = neg ? u128(-v) : u128(v);
  char buf[48];
  int pos = 48;
  while (x > 0) {
    buf[--pos] = char('0' + int(x % 10));
    x /= 10;
  }
  std::string s(buf + pos, 48 - pos);
  return neg ? "-" + s : s;
}

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 x = neg ? u128(-v) : u128(v);
  mpz_class hi(u64(x >> 64));
  mpz_class out = (hi << 64) + mpz_class(u64(x));
  return neg ? mpz_class(-out) : out;
}

i128 i128_from_mpz(const mpz_class& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 127)
    throw std::overflow_error("value does not fit in 128 bits");
  mpz_class a = abs(v);
  mpz_class hi = a >> 64;
  u128 x = (u128(hi.get_ui()) << 64) | u128(mpz_class(a & mpz_class("18446744073709551615")).get_ui());
  return v < 0 ? -i128(x) : i128(x);
}

i128 i128_from_mpz_saturating(const mpz_class& v) {
  static const i128 kMax = (i128(1) << 126) - 1 + (i128(1) << 126);
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 127) return v < 0 ? -kMax : kMax;
  return i128_from_mpz(v);
}

mpz_class floor_root(const mpz_class& n, unsigned long k) {
  if (n < 0) throw std::invalid_argument("floor_root of negative value");
  mpz_class r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

u64 floor_root_u64(u64 n, unsigned long k) {
  mpz_class r = floor_root(mpz_class(to_string_i128(i128(n))), k);
  return r.get_ui();
}

mpz_class parse_big_int(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty integer literal");

  bool neg = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  long exponent = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad integer literal: " + text);
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      if (!seen_digit) throw std::invalid_argument("bad integer literal: " + text);
      exponent = std::stol(s.substr(i + 1));
      break;
    } else {
      throw std::invalid_argument("bad integer literal: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad integer literal: " + text);

  long shift = exponent - frac_digits;
  mpz_class v(digits, 10);
  if (shift > 0) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, shift);
    v *= p10;
  } else if (shift < 0) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, -shift);
    if (v % p10 != 0)
      throw std::invalid_argument("literal is not an integer: " + text);
    v /= p10;
  }
  return neg ? mpz_class(-v) : v;
}

}  // namespace isogeny7
