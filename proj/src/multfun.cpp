#include "isogeny7/multfun.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace isogeny7 {

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> fs;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    fs.emplace_back(p, v);
  }
  if (n > 1) fs.emplace_back(n, 1);
  return fs;
}

u64 T(u64 e) {
  if (e == 0) throw std::invalid_argument("T requires e >= 1");
  u64 out = 1;
  for (auto [p, v] : factorize(e)) {
    u64 local;
    if (p == 3) {
      local = v == 1 ? 18 : v == 2 ? 27 : 0;
    } else if (p == 7) {
      local = v == 1 ? 50 : v == 2 ? 2402 : 823544;
    } else {
      local = p % 3 == 1 ? 2 : 0;
    }
    out *= local;
    if (out == 0) return 0;
  }
  return out;
}

u64 T_brute(u64 e) {
  if (e == 0) throw std::invalid_argument("T_brute requires e >= 1");
  if (e > 1000) throw std::invalid_argument("T_brute cost guard: e <= 1000");
  if (e == 1) return 1;
  const u64 e2 = e * e, e3 = e * e * e;
  // f(t) = -3t^4 + 690t^3 - 1533t^2 + 2646t - 15435  (mod e^2)
  // g(t) = 2t^6 + 1038t^5 - 21000t^4 - 2450t^3 - 271656t^2 - 43218t - 907578
  auto normf = [&](i64 c, u64 mod) { return u64(((c % i64(mod)) + i64(mod)) % i64(mod)); };
  const u64 f4 = normf(-3, e2), f3 = normf(690, e2), f2c = normf(-1533, e2),
            f1 = normf(2646, e2), f0 = normf(-15435, e2);
  const u64 g6 = normf(2, e3), g5 = normf(1038, e3), g4 = normf(-21000, e3),
            g3 = normf(-2450, e3), g2 = normf(-271656, e3),
            g1 = normf(-43218, e3), g0 = normf(-907578, e3);
  u64 count = 0;
  for (u64 t = 0; t < e3; ++t) {
    u64 tf = t % e2;
    u64 f = f4;
    f = (f * tf + f3) % e2;
    f = (f * tf + f2c) % e2;
    f = (f * tf + f1) % e2;
    f = (f * tf + f0) % e2;
    if (f != 0) continue;
    u64 g = g6;
    g = (g * t + g5) % e3;
    g = (g * t + g4) % e3;
    g = (g * t + g3) % e3;
    g = (g * t + g2) % e3;
    g = (g * t + g1) % e3;
    g = (g * t + g0) % e3;
    if (g == 0) ++count;
  }
  return count;
}

mpz_class T_tilde(u64 e) {
  mpz_class e3 = mpz_class(to_string_i128(i128(e)));
  e3 = e3 * e3 * e3;
  // phi(e^3) from the factorization of e
  mpz_class phi = e3;
  for (auto [p, v] : factorize(e)) {
    (void)v;
    phi = phi / i64(p) * (i64(p) - 1);
  }
  if (e == 1) phi = 1;
  return phi * mpz_class(to_string_i128(i128(T(e))));
}

std::vector<u64> primes_below_simple(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (u64 i = 2; i * i <= limit; ++i)
    if (!comp[i])
      for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
  for (u64 i = 2; i <= limit; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

namespace {

// Odd-only segmented sieve. Segment size in odd numbers.
constexpr u64 kSegmentOdds = 1u << 22;

}  // namespace

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi < 2 || hi < lo) return;
  if (lo <= 2) fn(2);
  u64 root = u64(std::sqrt(double(hi))) + 2;
  while (root * root > hi + 1) --root;
  std::vector<u64> base = primes_below_simple(root + 1);

  u64 start = std::max<u64>(lo, 3) | 1;  // first odd >= lo
  std::vector<u64> seg(kSegmentOdds / 64 + 1);
  for (u64 seg_lo = start; seg_lo <= hi; seg_lo += 2 * kSegmentOdds) {
    u64 seg_hi = std::min(hi, seg_lo + 2 * (kSegmentOdds - 1));
    u64 n_odds = (seg_hi - seg_lo) / 2 + 1;
    std::fill(seg.begin(), seg.end(), 0);
    for (u64 p : base) {
      if (p == 2) continue;
      if (p * p > seg_hi) break;
      u64 first = std::max(p * p, ((seg_lo + p - 1) / p) * p);
      if (first % 2 == 0) first += p;
      if (first > seg_hi) continue;
      for (u64 v = (first - seg_lo) / 2; v < n_odds; v += p)
        seg[v >> 6] |= u64(1) << (v & 63);
    }
    for (u64 v = 0; v < n_odds; ++v) {
      if (!((seg[v >> 6] >> (v & 63)) & 1)) {
        u64 p = seg_lo + 2 * v;
        if (p >= lo && p > 2) fn(p);
      }
    }
  }
}

std::vector<u64> primes_1mod3(u64 limit) {
  if (limit < 2) throw std::invalid_argument("primes_1mod3 requires limit >= 2");
  std::vector<u64> out;
  for_each_prime(2, limit, [&](u64 p) {
    if (p % 3 == 1) out.push_back(p);
  });
  return out;
}

namespace {

constexpr mpfr_prec_t kPrec = 128;

struct ChunkProduct {
  mpfr_t lo, hi;
  ChunkProduct() {
    mpfr_init2(lo, kPrec);
    mpfr_init2(hi, kPrec);
    mpfr_set_ui(lo, 1, MPFR_RNDD);
    mpfr_set_ui(hi, 1, MPFR_RNDU);
  }
  ~ChunkProduct() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  ChunkProduct(const ChunkProduct&) = delete;
  ChunkProduct& operator=(const ChunkProduct&) = delete;
};

// Multiplies (1 + 2/(p+1)^2) = ((p+1)^2 + 2)/(p+1)^2 into the running
// directed products.
void fold_prime(ChunkProduct& acc, u64 p, mpfr_t t, mpfr_t num, mpfr_t q) {
  mpfr_set_ui(t, p + 1, MPFR_RNDN);
  mpfr_sqr(t, t, MPFR_RNDN);       // exact: (p+1)^2 < 2^68 fits 128 bits
  mpfr_add_ui(num, t, 2, MPFR_RNDN);  // exact
  mpfr_div(q, num, t, MPFR_RNDD);
  mpfr_mul(acc.lo, acc.lo, q, MPFR_RNDD);
  mpfr_nextabove(q);  // >= true factor
  mpfr_mul(acc.hi, acc.hi, q, MPFR_RNDU);
}

std::string mpfr_digits(mpfr_t v, mpfr_rnd_t rnd) {
  char* s = nullptr;
  mpfr_asprintf(&s, rnd == MPFR_RNDD ? "%.30RDg" : "%.30RUg", v);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace

QInterval Q_bounds(u64 Y, int threads) {
  if (Y < 11) throw std::invalid_argument("Q_bounds requires Y >= 11");
  if (threads < 1) threads = 1;

  // Fixed chunking so the reduction order is independent of thread count.
  const u64 chunk_span = u64(1) << 28;
  const u64 first = 11;
  u64 n_chunks = (Y - first) / chunk_span + 1;
  std::vector<ChunkProduct> chunks(n_chunks);

  std::atomic<u64> next{0};
  auto worker = [&]() {
    mpfr_t t, num, q;
    mpfr_init2(t, kPrec);
    mpfr_init2(num, kPrec);
    mpfr_init2(q, kPrec);
    while (true) {
      u64 i = next.fetch_add(1);
      if (i >= n_chunks) break;
      u64 lo = first + i * chunk_span;
      u64 hi = std::min(Y, lo + chunk_span - 1);
      for_each_prime(lo, hi, [&](u64 p) {
        if (p % 3 == 1 && p != 7) fold_prime(chunks[i], p, t, num, q);
      });
    }
    mpfr_clear(t);
    mpfr_clear(num);
    mpfr_clear(q);
  };
  if (threads == 1 || n_chunks == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  mpfr_t lo, hi, t;
  mpfr_init2(lo, kPrec);
  mpfr_init2(hi, kPrec);
  mpfr_init2(t, kPrec);
  // 273/16 is exactly representable
  mpfr_set_ui(lo, 273, MPFR_RNDD);
  mpfr_div_ui(lo, lo, 16, MPFR_RNDD);
  mpfr_set(hi, lo, MPFR_RNDU);
  for (u64 i = 0; i < n_chunks; ++i) {  // combine in index order
    mpfr_mul(lo, lo, chunks[i].lo, MPFR_RNDD);
    mpfr_mul(hi, hi, chunks[i].hi, MPFR_RNDU);
  }

  // Tail multiplier, every step rounded toward larger values:
  //   exp(5Y/(2(Y^2+1) log Y) + (1/log Y + 5/(2 log^2 Y)) (pi/2 - atan Y))
  mpfr_t logy_d, term, coef, atanY, tau;
  mpfr_init2(logy_d, kPrec);
  mpfr_init2(term, kPrec);
  mpfr_init2(coef, kPrec);
  mpfr_init2(atanY, kPrec);
  mpfr_init2(tau, kPrec);

  mpfr_set_ui(t, Y, MPFR_RNDD);
  mpfr_log(logy_d, t, MPFR_RNDD);  // underestimate of log Y

  // term = 5Y / (2 (Y^2+1) logY): numerator exact, denominator rounded down
  mpfr_set_ui(term, Y, MPFR_RNDD);
  mpfr_sqr(term, term, MPFR_RNDD);
  mpfr_add_ui(term, term, 1, MPFR_RNDD);
  mpfr_mul_ui(term, term, 2, MPFR_RNDD);
  mpfr_mul(term, term, logy_d, MPFR_RNDD);
  mpfr_ui_div(term, 1, term, MPFR_RNDU);
  mpfr_mul_ui(term, term, 5, MPFR_RNDU);
  mpfr_mul_ui(term, term, Y, MPFR_RNDU);

  // coef = 1/logY + 5/(2 logY^2), overestimated
  mpfr_ui_div(coef, 1, logy_d, MPFR_RNDU);
  mpfr_sqr(t, logy_d, MPFR_RNDD);
  mpfr_mul_ui(t, t, 2, MPFR_RNDD);
  mpfr_ui_div(t, 1, t, MPFR_RNDU);
  mpfr_mul_ui(t, t, 5, MPFR_RNDU);
  mpfr_add(coef, coef, t, MPFR_RNDU);

  // atan gap = pi/2 - atan(Y), overestimated
  mpfr_const_pi(tau, MPFR_RNDU);
  mpfr_div_ui(tau, tau, 2, MPFR_RNDU);
  mpfr_set_ui(t, Y, MPFR_RNDN);
  mpfr_atan(atanY, t, MPFR_RNDD);
  mpfr_sub(tau, tau, atanY, MPFR_RNDU);

  mpfr_mul(tau, tau, coef, MPFR_RNDU);
  mpfr_add(tau, tau, term, MPFR_RNDU);
  mpfr_exp(tau, tau, MPFR_RNDU);
  mpfr_mul(hi, hi, tau, MPFR_RNDU);

  QInterval out;
  out.prime_bound = Y;
  out.certified_upper = (Y >= 8000000000ULL);
  out.lower = mpfr_get_d(lo, MPFR_RNDD);
  out.upper = mpfr_get_d(hi, MPFR_RNDU);
  out.lower_digits = mpfr_digits(lo, MPFR_RNDD);
  out.upper_digits = mpfr_digits(hi, MPFR_RNDU);

  mpfr_clears(lo, hi, t, logy_d, term, coef, atanY, tau, (mpfr_ptr) nullptr);
  return out;
}

mpq_class Q_local(u64 p) {
  mpz_class P(to_string_i128(i128(p)));
  if (p == 3) {
    // 1 + (phi(3) T(3)/3^3 + phi(9) T(9)/3^6) / (1 + 1/3)
    mpq_class s(0);
    s += mpq_class(2 * 18, 27);
    s += mpq_class(6 * 27, 729);
    mpq_class out = 1 + s * mpq_class(3, 4);
    out.canonicalize();
    return out;
  }
  if (p == 7) {
    mpq_class s(0);
    s += mpq_class(6 * 50, 343);                      // a = 1
    s += mpq_class(42 * 2402, 117649);                // a = 2
    // a >= 3: T = 823544, phi(7^a) = 6*7^(a-1); geometric with ratio 1/49
    // sum = (6*823544/7) * 7^(-6) * 49/48
    s += mpq_class(6 * 823544, 7) * mpq_class(1, 117649) * mpq_class(49, 48);
    mpq_class out = 1 + s * mpq_class(7, 8);
    out.canonicalize();
    return out;
  }
  if (p % 3 != 1) return mpq_class(1);
  // T(p^a) = 2 for all a >= 1: 1 + 2/(p+1)^2
  mpq_class out = 1 + mpq_class(2) / mpq_class((P + 1) * (P + 1));
  out.canonicalize();
  return out;
}

int mobius(u64 n) {
  if (n == 0) throw std::invalid_argument("mobius requires n >= 1");
  int m = 1;
  for (auto [p, v] : factorize(n)) {
    (void)p;
    if (v > 1) return 0;
    m = -m;
  }
  return m;
}

u64 euler_phi(u64 n) {
  if (n == 0) throw std::invalid_argument("euler_phi requires n >= 1");
  u64 out = n;
  for (auto [p, v] : factorize(n)) {
    (void)v;
    out = out / p * (p - 1);
  }
  return out;
}

int omega(u64 n) {
  if (n == 0) throw std::invalid_argument("omega requires n >= 1");
  return int(factorize(n).size());
}

u64 num_divisors(u64 n) {
  if (n == 0) throw std::invalid_argument("num_divisors requires n >= 1");
  u64 d = 1;
  for (auto [p, v] : factorize(n)) {
    (void)p;
    d *= u64(v + 1);
  }
  return d;
}

}  // namespace isogeny7
