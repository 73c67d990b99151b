#include "isogeny7/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "isogeny7/multfun.hpp"

namespace isogeny7 {

namespace {

const mpz_class k1029_6 = []() {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 1029, 6);
  return v;
}();

int ord_i128(i128 v, i64 p) {
  if (v == 0) return 1 << 20;
  int n = 0;
  while (v % p == 0) {
    v /= p;
    ++n;
  }
  return n;
}

i64 ipow64(i64 b, int e) {
  i64 r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

bool record_less(const CurveRecord& l, const CurveRecord& r) {
  if (l.twist_height != r.twist_height) return l.twist_height < r.twist_height;
  if (l.A_red != r.A_red) return l.A_red < r.A_red;
  if (l.B_red != r.B_red) return l.B_red < r.B_red;
  return std::pair(l.a, l.b) < std::pair(r.a, r.b);
}

CensusBounds census_bounds(const mpz_class& X) {
  if (X < 1) throw std::invalid_argument("census requires X >= 1");
  CensusBounds b;
  b.X = X;
  mpz_class rhs = k1029_6 * X;
  mpz_class lim = rhs / 108;
  b.e0_max = std::max<i64>(1, floor_root(lim, 12).get_si());
  while (108 * pow(mpz_class(b.e0_max + 1), 12) <= rhs) ++b.e0_max;
  while (b.e0_max > 1 && 108 * pow(mpz_class(b.e0_max), 12) > rhs) --b.e0_max;
  mpz_class mm = floor_root(lim, 6);
  u64 m_max = mm.get_ui();
  while (108 * pow(mpz_class(m_max + 1), 6) <= rhs) ++m_max;
  while (m_max > 1 && 108 * pow(mpz_class(m_max), 6) > rhs) --m_max;
  b.m_max = m_max;
  b.table_bound = m_max + 2;
  b.A_thresh = floor_root(X / 4, 3);
  b.B_thresh = floor_root(X / 27, 2);
  mpz_class c4 = floor_root(lim, 4);
  u64 cmax = c4.get_ui();
  while (108 * pow(mpz_class(cmax + 1), 4) <= rhs) ++cmax;
  while (cmax > 1 && 108 * pow(mpz_class(cmax), 4) > rhs) --cmax;
  b.brute_C_max = cmax;
  return b;
}

namespace {

// Exact reduction and twist-height test for one candidate pair, given the
// exact twist defect e. A = C*A0 and B = C*B0 stay inside i128; B_red is
// formed through a gcd split so the product C*B0 itself is never built.
std::optional<CurveRecord> finish_candidate(i64 a, i64 b, i64 C, i128 A0,
                                            i128 B0, i64 e, i128 A_thr,
                                            i128 B_thr) {
  i128 A = i128(C) * A0;
  i128 e2 = i128(e) * e;
  if (A % e2 != 0) throw std::logic_error("defect does not divide A");
  i128 A_red = A / e2;
  if (abs128(A_red) > A_thr) return std::nullopt;

  i128 q = e2 * e;
  i128 g = gcd128(i128(C), q);
  i128 C1 = i128(C) / g, q1 = q / g;
  if (B0 % q1 != 0) throw std::logic_error("defect does not divide B");
  i128 B1 = B0 / q1;
  if (abs128(B1) > B_thr / C1) return std::nullopt;
  i128 B_red = C1 * B1;
  if (abs128(B_red) > B_thr) return std::nullopt;

  CurveRecord rec;
  rec.a = a;
  rec.b = b;
  rec.A_red = mpz_from_i128(A_red);
  rec.B_red = mpz_from_i128(abs128(B_red));
  rec.raw_B_sign = B_red < 0 ? -1 : 1;
  rec.twist_defect = e;
  rec.C_value = C;
  mpz_class a3 = abs(4 * rec.A_red * rec.A_red * rec.A_red);
  mpz_class b2 = 27 * rec.B_red * rec.B_red;
  rec.twist_height = std::max(a3, b2);
  return rec;
}

// twist defect at 3 and 7 from the valuations of A = C*A0, B = C*B0
void defect_at_3_7(i64 C, i128 A0, i128 B0, int& v3, int& v7) {
  int a3 = ord_i128(i128(C), 3) + ord_i128(A0, 3);
  int b3 = ord_i128(i128(C), 3) + ord_i128(B0, 3);
  int a7 = ord_i128(i128(C), 7) + ord_i128(A0, 7);
  int b7 = ord_i128(i128(C), 7) + ord_i128(B0, 7);
  v3 = std::min(a3 / 2, b3 / 3);
  v7 = std::min(a7 / 2, b7 / 3);
}

struct CensusContext {
  CensusBounds bounds;
  i128 A_thr, B_thr;
  const RepTable* table;
};

// Process one assembled representation list for C = 3^(3s+t) e0p^3 m
// (e0 = 3^s e0p). e_away is e0p with its 7-part removed; the 3- and 7-parts
// of the defect come from direct valuations.
void emit_candidates(const CensusContext& ctx, const std::vector<RepPair>& reps,
                     i64 e_away, std::vector<CurveRecord>& out) {
  for (auto [a, b] : reps) {
    if (b <= 0) continue;            // unit (1,0) is not a groomed point
    if (a == -7 && b == 1) continue; // cusp
    i64 C = eval_C(a, b);
    i128 A0 = eval_A0(a, b);
    i128 B0 = eval_B0(a, b);
    int v3, v7;
    defect_at_3_7(C, A0, B0, v3, v7);
    i64 e = e_away * ipow64(3, v3) * ipow64(7, v7);
    auto rec = finish_candidate(a, b, C, A0, B0, e, ctx.A_thr, ctx.B_thr);
    if (rec) out.push_back(std::move(*rec));
  }
}

}  // namespace

std::vector<CurveRecord> enumerate_census(const mpz_class& X, int threads,
                                          const RepTable* table) {
  CensusBounds bounds = census_bounds(X);
  RepTable own;
  if (table == nullptr || table->bound < bounds.table_bound) {
    own = build_rep_table(bounds.table_bound, threads);
    table = &own;
  }

  CensusContext ctx{bounds, i128_from_mpz_saturating(bounds.A_thresh),
                    i128_from_mpz_saturating(bounds.B_thresh), table};

  static const std::vector<RepPair> kUnit = {{1, 0}};
  static const std::vector<RepPair> kReps9 = {{-2, 1}, {1, 1}};
  static const std::vector<RepPair> kReps27 = {{-5, 1}, {-1, 2}, {4, 1}};

  const mpz_class rhs = k1029_6 * X;

  // Tasks are (s, t, e0p) triples; (s,t) = 3-parts of (e0, m), from
  // c(3)=0, c(9)=2, c(27)=3: 3s + t in {0, 2, 3}.
  struct Task {
    int s, t;
    i64 e0p;
  };
  std::vector<Task> tasks;
  for (auto [s, t] : {std::pair{0, 0}, std::pair{0, 2}, std::pair{1, 0}}) {
    i64 e0p_max = bounds.e0_max / ipow64(3, s);
    for (i64 e0p = 1; e0p <= e0p_max; ++e0p) {
      if (e0p % 3 == 0) continue;
      // joint bound with the smallest admissible m' = 1
      mpz_class e0 = ipow64(3, s) * mpz_class(i64(e0p));
      mpz_class m3t = ipow64(3, t);
      if (108 * pow(e0, 12) * pow(m3t, 6) > rhs) break;
      tasks.push_back({s, t, e0p});
    }
  }

  std::vector<std::vector<CurveRecord>> results(tasks.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) break;
      auto [s, t, e0p] = tasks[i];
      const std::vector<RepPair>& reps3 =
          (3 * s + t == 0) ? kUnit : (3 * s + t == 2) ? kReps9 : kReps27;

      // representations of norm e0p^3 (coprime to 3)
      std::vector<RepPair> cube_list;
      u64 e0p3 = u64(e0p) * u64(e0p) * u64(e0p);
      if (e0p == 1) {
        cube_list = kUnit;
      } else if (e0p3 < table->bound) {
        auto span = table->lookup(e0p3);
        cube_list.assign(span.begin(), span.end());
      } else {
        auto span = table->lookup(u64(e0p));
        for (auto [x, y] : span) {
          OrderElement u{x, y};
          OrderElement u3 = mul(mul(u, u), u);
          auto [nx, ny] = std::pair(u3.x, u3.y);
          if (ny < 0 || (ny == 0 && nx < 0)) {
            nx = -nx;
            ny = -ny;
          }
          cube_list.emplace_back(nx, ny);
        }
        std::sort(cube_list.begin(), cube_list.end());
      }
      if (cube_list.empty()) continue;

      i64 e_away = e0p;
      while (e_away % 7 == 0) e_away /= 7;

      // m' bound: 108 (3^s e0p)^12 (3^t m')^6 <= 1029^6 X
      mpz_class e0 = ipow64(3, s) * mpz_class(i64(e0p));
      mpz_class denom = 108 * pow(e0, 12) * pow(mpz_class(ipow64(3, t)), 6);
      mpz_class mp_bound_z = floor_root(rhs / denom, 6);
      u64 mp_bound = mp_bound_z.fits_ulong_p() ? mp_bound_z.get_ui() : ~u64(0);
      mp_bound = std::min(mp_bound, table->bound - 1);

      std::vector<CurveRecord>& out = results[i];
      for (size_t ki = 0; ki < table->key_count(); ++ki) {
        u64 mp = table->key_at(ki);
        if (mp > mp_bound) break;
        if (!table->is_cubefree(mp)) continue;
        auto m_list = table->lookup(mp);
        std::vector<RepPair> combined =
            combine_reps(cube_list, m_list);
        if (3 * s + t != 0)
          combined = combine_reps(combined, reps3);
        emit_candidates(ctx, combined, e_away, out);
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<CurveRecord> all;
  for (auto& part : results) {
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  std::sort(all.begin(), all.end(), record_less);
  for (size_t i = 1; i < all.size(); ++i)
    if (all[i].a == all[i - 1].a && all[i].b == all[i - 1].b)
      throw std::logic_error("census produced a duplicate pair");
  return all;
}

std::vector<CurveRecord> enumerate_brute(const mpz_class& X) {
  static const mpz_class kGuard("1000000000000000000");
  if (X > kGuard) throw std::invalid_argument("brute census guard: X <= 1e18");
  CensusBounds bounds = census_bounds(X);
  i128 A_thr = i128_from_mpz_saturating(bounds.A_thresh);
  i128 B_thr = i128_from_mpz_saturating(bounds.B_thresh);
  const i64 Cmax = i64(bounds.brute_C_max);

  // primes that can appear cubed in C: 3 and p = 1 mod 3, p^3 <= Cmax
  std::vector<i64> cube_primes;
  for (u64 p : primes_below_simple(u64(std::cbrt(double(Cmax))) + 2))
    if (p == 3 || p % 3 == 1) cube_primes.push_back(i64(p));

  std::vector<CurveRecord> out;
  for (i64 b = 1; 27 * b * b <= 4 * Cmax; ++b) {
    i64 disc = 4 * Cmax - 27 * b * b;
    i64 s = i64(std::sqrt(double(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    for (i64 a = (-s - b) / 2 - 1; a <= (s - b) / 2 + 1; ++a) {
      i64 C = eval_C(a, b);
      if (C > Cmax) continue;
      if (!is_groomed(a, b)) continue;
      i128 A0 = eval_A0(a, b);
      i128 B0 = eval_B0(a, b);
      // defect from direct valuations at 2, 3, 7 and cube divisors of C
      i128 A = i128(C) * A0;
      int v3, v7;
      defect_at_3_7(C, A0, B0, v3, v7);
      i64 e = ipow64(3, v3) * ipow64(7, v7);
      int va2 = ord_i128(A, 2);
      int vb2 = ord_i128(i128(C), 2) + ord_i128(B0, 2);
      e *= ipow64(2, std::min(va2 / 2, vb2 / 3));
      for (i64 p : cube_primes) {
        if (p == 3 || p == 7) continue;
        if (C % (p * p * p) != 0) continue;
        int va = ord_i128(i128(C), p) + ord_i128(A0, p);
        int vb = ord_i128(i128(C), p) + ord_i128(B0, p);
        e *= ipow64(p, std::min(va / 2, vb / 3));
      }
      auto rec = finish_candidate(a, b, C, A0, B0, e, A_thr, B_thr);
      if (rec) out.push_back(std::move(*rec));
    }
  }
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

namespace {

double mpz_to_double(const mpz_class& v) { return v.get_d(); }

// #squarefree integers in [1, n], by sieve
u64 squarefree_count(u64 n) {
  if (n == 0) return 0;
  std::vector<bool> not_sf(n + 1, false);
  for (u64 d = 2; d * d <= n; ++d)
    for (u64 v = d * d; v <= n; v += d * d) not_sf[v] = true;
  u64 c = 0;
  for (u64 v = 1; v <= n; ++v)
    if (!not_sf[v]) ++c;
  return c;
}

constexpr double kZeta2 = 1.6449340668482264;
constexpr double kQRef = 17.460405231130727;
constexpr double kRRef = 0.04316889;

}  // namespace

CountReport count_twist(const mpz_class& X, int threads) {
  auto records = enumerate_census(X, threads);
  CountReport rep;
  rep.X = X;
  rep.n_tw = records.size();
  rep.n_rational = 0;
  for (const auto& r : records) {
    if (!rep.histogram.empty() && rep.histogram.back().first == r.twist_height)
      ++rep.histogram.back().second;
    else
      rep.histogram.emplace_back(r.twist_height, 1);
  }
  double x16 = std::pow(mpz_to_double(X), 1.0 / 6.0);
  rep.ratio_check = kZeta2 / (kQRef * kRRef) * double(rep.n_tw) / x16;
  return rep;
}

CountReport count_rational(const mpz_class& X, int threads) {
  CountReport rep = count_twist(X, threads);
  // N(X) = 2 sum_records #{c >= 1 squarefree : c^6 twht <= X}
  u64 nmax = 0;
  std::vector<u64> sf_prefix;
  for (auto& [twht, mult] : rep.histogram) {
    mpz_class q = X / twht;
    u64 climit = floor_root(q, 6).get_ui();
    if (climit > nmax) {
      nmax = climit;
    }
  }
  // prefix counts of squarefree integers up to nmax
  std::vector<bool> not_sf(nmax + 1, false);
  for (u64 d = 2; d * d <= nmax; ++d)
    for (u64 v = d * d; v <= nmax; v += d * d) not_sf[v] = true;
  sf_prefix.assign(nmax + 1, 0);
  for (u64 v = 1; v <= nmax; ++v)
    sf_prefix[v] = sf_prefix[v - 1] + (not_sf[v] ? 0 : 1);

  mpz_class total = 0;
  for (auto& [twht, mult] : rep.histogram) {
    u64 climit = floor_root(mpz_class(X / twht), 6).get_ui();
    total += mpz_class(2 * sf_prefix[climit]) * i64(mult);
  }
  rep.n_rational = total;
  return rep;
}

mpz_class count_rational_brute(const mpz_class& X) {
  static const mpz_class kGuard("1000000000000000");
  if (X > kGuard)
    throw std::invalid_argument("rational brute guard: X <= 1e15");
  CensusBounds bounds = census_bounds(X);
  const i64 Cmax = i64(bounds.brute_C_max);

  std::vector<i64> cube_primes;
  for (u64 p : primes_below_simple(u64(std::cbrt(double(Cmax))) + 2))
    if (p == 3 || p % 3 == 1) cube_primes.push_back(i64(p));

  mpz_class total = 0;
  for (i64 b = 1; 27 * b * b <= 4 * Cmax; ++b) {
    i64 disc = 4 * Cmax - 27 * b * b;
    i64 s = i64(std::sqrt(double(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    for (i64 a = (-s - b) / 2 - 1; a <= (s - b) / 2 + 1; ++a) {
      i64 C = eval_C(a, b);
      if (C > Cmax) continue;
      if (!is_groomed(a, b)) continue;
      i128 A0 = eval_A0(a, b), B0 = eval_B0(a, b);
      i128 A = i128(C) * A0;

      // valuations of (A, B) at every prime that can carry a defect of a
      // twist by squarefree c: primes of c, 2, 3, 7, cube divisors of C
      std::vector<std::pair<i64, std::pair<int, int>>> base_vals;
      for (i64 p : {i64(2), i64(3), i64(7)})
        base_vals.push_back({p, {ord_i128(A, p),
                                 ord_i128(i128(C), p) + ord_i128(B0, p)}});
      i64 e_twist = ipow64(3, std::min(base_vals[1].second.first / 2,
                                       base_vals[1].second.second / 3)) *
                    ipow64(7, std::min(base_vals[2].second.first / 2,
                                       base_vals[2].second.second / 3));
      for (i64 p : cube_primes) {
        if (p == 3 || p == 7 || C % (p * p * p) != 0) continue;
        int va = ord_i128(i128(C), p) + ord_i128(A0, p);
        int vb = ord_i128(i128(C), p) + ord_i128(B0, p);
        base_vals.push_back({p, {va, vb}});
        e_twist *= ipow64(p, std::min(va / 2, vb / 3));
      }

      mpz_class Az = mpz_from_i128(A);
      mpz_class Bz = mpz_from_i128(i128(C)) * mpz_from_i128(B0);
      mpz_class H = std::max(mpz_class(abs(4 * Az * Az * Az)),
                             mpz_class(27 * Bz * Bz));
      mpz_class e6 = pow(mpz_class(e_twist), 6);
      mpz_class twht = H / e6;
      if (twht > X) continue;

      // c-range: ht(c^2 A, c^3 B) = (c')^6 twht with c' = c s0/gcd(c,s0)^2
      // for some squarefree s0 with |s0| <= e_twist, so c <= e_twist cap.
      i64 c_cap = e_twist * floor_root(mpz_class(X / twht), 6).get_si() + 1;
      for (i64 c = 1; c <= c_cap; ++c) {
        auto cf = factorize(u64(c));
        bool sf = true;
        for (auto& [p, v] : cf)
          if (v > 1) sf = false;
        if (!sf) continue;
        // mindefect of (c^2 A, c^3 B) from explicit valuations
        mpz_class d(1);
        auto mindef_at = [&](i64 p, int va, int vb) {
          int vc = 0;
          for (auto& [q, v] : cf)
            if (i64(q) == p) vc = v;
          int v = std::min((2 * vc + va) / 4, (3 * vc + vb) / 6);
          if (v > 0) d *= pow(mpz_class(p), v);
        };
        for (auto& [p, vavb] : base_vals) mindef_at(p, vavb.first, vavb.second);
        for (auto& [p, v] : cf) {
          bool seen = false;
          for (auto& [q, vavb] : base_vals)
            if (i64(q) == i64(p)) seen = true;
          if (!seen)
            mindef_at(i64(p), mpz_ord_long(Az, i64(p)), mpz_ord_long(Bz, i64(p)));
        }
        mpz_class c6 = pow(mpz_class(c), 6);
        mpz_class ht = c6 * H / pow(d, 12);
        // the twist by -c has the same H, mindefect and height
        if (ht <= X) total += 2;
      }
    }
  }
  return total;
}

u64 M_de(const mpz_class& X, u64 d, u64 e) {
  if (d == 0 || e == 0) throw std::invalid_argument("M_de requires d, e >= 1");
  // H(A(da,db),...) = d^12 H(A(a,b),...) and 108 C^6 <= H
  mpz_class lim = X / 108;
  mpz_class d12 = pow(mpz_class(i64(d)), 12);
  if (d12 > lim) return 0;
  u64 Cmax = floor_root(mpz_class(lim / d12), 6).get_ui();
  mpz_class e2 = mpz_class(i64(e)) * i64(e);
  mpz_class e3 = e2 * i64(e);

  u64 count = 0;
  for (i64 b = 1; u64(27 * b * b) <= 4 * Cmax; ++b) {
    i64 disc = i64(4 * Cmax) - 27 * b * b;
    i64 s = i64(std::sqrt(double(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    for (i64 a = (-s - b) / 2 - 1; a <= (s - b) / 2 + 1; ++a) {
      if (u64(eval_C(a, b)) > Cmax) continue;
      if (a == -7 && b == 1) continue;
      u64 g = std::gcd(std::gcd(u64(std::abs(a)) * d, u64(b) * d), e);
      if (g != 1) continue;
      WeierstrassPair w = eval_AB(i64(d) * a, i64(d) * b);
      if (height_H(w) > X) continue;
      if (!mpz_divisible_p(w.A.get_mpz_t(), e2.get_mpz_t())) continue;
      if (!mpz_divisible_p(w.B.get_mpz_t(), e3.get_mpz_t())) continue;
      ++count;
    }
  }
  return count;
}

u64 M_e(const mpz_class& X, u64 e) {
  if (e == 0) throw std::invalid_argument("M_e requires e >= 1");
  u64 Cmax = floor_root(mpz_class(X / 108), 6).get_ui();
  mpz_class e2 = mpz_class(i64(e)) * i64(e);
  mpz_class e3 = e2 * i64(e);
  u64 count = 0;
  for (i64 b = 1; u64(27 * b * b) <= 4 * Cmax; ++b) {
    i64 disc = i64(4 * Cmax) - 27 * b * b;
    i64 s = i64(std::sqrt(double(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    for (i64 a = (-s - b) / 2 - 1; a <= (s - b) / 2 + 1; ++a) {
      if (u64(eval_C(a, b)) > Cmax) continue;
      if (!is_groomed(a, b)) continue;
      WeierstrassPair w = eval_AB(a, b);
      if (height_H(w) > X) continue;
      if (!mpz_divisible_p(w.A.get_mpz_t(), e2.get_mpz_t())) continue;
      if (!mpz_divisible_p(w.B.get_mpz_t(), e3.get_mpz_t())) continue;
      ++count;
    }
  }
  return count;
}

u64 sieve_d_max(const mpz_class& X) {
  u64 d = floor_root(mpz_class(X / 108), 12).get_ui();
  while (108 * pow(mpz_class(d + 1), 12) <= X) ++d;
  while (d > 1 && 108 * pow(mpz_class(d), 12) > X) --d;
  return std::max<u64>(d, 1);
}

u64 sieve_f_max(const mpz_class& X, u64 e) {
  // 4 f^18 e^12 <= 3^9 7^36 X
  mpz_class rhs = mpz_class("19683") * mpz_class("2651730845859653471779023381601") * X;
  mpz_class e12 = pow(mpz_class(i64(e)), 12);
  u64 f = floor_root(mpz_class(rhs / (4 * e12)), 18).get_ui();
  while (4 * pow(mpz_class(f + 1), 18) * e12 <= rhs) ++f;
  while (f > 1 && 4 * pow(mpz_class(f), 18) * e12 > rhs) --f;
  return std::max<u64>(f, 1);
}

// serialization --------------------------------------------------------------

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

void write_records_csv(std::ostream& os, const std::vector<CurveRecord>& recs,
                       const std::vector<std::pair<std::string, std::string>>& meta) {
  for (auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
  os << "a,b,A_red,B_red,twist_height,twist_defect,C_value\n";
  for (const auto& r : recs) {
    os << r.a << ',' << r.b << ',' << r.A_red << ',' << r.B_red << ','
       << r.twist_height << ',' << r.twist_defect << ',' << r.C_value << '\n';
  }
}

void write_records_json(std::ostream& os, const std::vector<CurveRecord>& recs,
                        const std::vector<std::pair<std::string, std::string>>& meta) {
  os << "{\n  \"config\": {";
  for (size_t i = 0; i < meta.size(); ++i) {
    if (i) os << ", ";
    os << '"' << json_escape(meta[i].first) << "\": \""
       << json_escape(meta[i].second) << '"';
  }
  os << "},\n  \"records\": [";
  for (size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"a\": " << r.a << ", \"b\": " << r.b << ", \"A_red\": " << r.A_red
       << ", \"B_red\": " << r.B_red << ", \"twist_height\": " << r.twist_height
       << ", \"twist_defect\": " << r.twist_defect << ", \"C_value\": "
       << r.C_value << "}";
  }
  os << (recs.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void write_count_json(std::ostream& os, const CountReport& report,
                      const std::vector<std::pair<std::string, std::string>>& meta) {
  os << "{\n  \"config\": {";
  for (size_t i = 0; i < meta.size(); ++i) {
    if (i) os << ", ";
    os << '"' << json_escape(meta[i].first) << "\": \""
       << json_escape(meta[i].second) << '"';
  }
  os << "},\n";
  os << "  \"X\": " << report.X << ",\n";
  os << "  \"n_tw\": " << report.n_tw << ",\n";
  os << "  \"n_rational\": " << report.n_rational << ",\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", report.ratio_check);
  os << "  \"ratio_check\": " << buf << ",\n";
  os << "  \"histogram\": [";
  for (size_t i = 0; i < report.histogram.size(); ++i) {
    if (i) os << ", ";
    os << "[" << report.histogram[i].first << ", " << report.histogram[i].second
       << "]";
  }
  os << "]\n}\n";
}

std::vector<Discrepancy> compare_records(const std::vector<CurveRecord>& lhs,
                                         const std::vector<CurveRecord>& rhs,
                                         size_t limit) {
  std::vector<Discrepancy> out;
  if (lhs.size() != rhs.size()) {
    out.push_back({0, "size mismatch: " + std::to_string(lhs.size()) + " vs " +
                          std::to_string(rhs.size())});
  }
  size_t n = std::min(lhs.size(), rhs.size());
  for (size_t i = 0; i < n && out.size() < limit; ++i) {
    if (lhs[i] == rhs[i]) continue;
    std::ostringstream ss;
    ss << "record " << i << ": (" << lhs[i].a << "," << lhs[i].b << ") twht "
       << lhs[i].twist_height << " defect " << lhs[i].twist_defect << "  vs  ("
       << rhs[i].a << "," << rhs[i].b << ") twht " << rhs[i].twist_height
       << " defect " << rhs[i].twist_defect;
    out.push_back({i, ss.str()});
  }
  return out;
}

VerifyReport run_verification(const mpz_class& X, int threads) {
  VerifyReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    if (rep.failures.size() < 10) rep.failures.push_back(s);
  };

  auto census = enumerate_census(X, threads);
  auto brute = enumerate_brute(X);
  for (auto& d : compare_records(census, brute))
    fail("census/brute: " + d.what);

  static const mpz_class kRationalGuard("1000000000000000");
  if (X <= kRationalGuard) {
    CountReport cr = count_rational(X, threads);
    mpz_class direct = count_rational_brute(X);
    if (cr.n_rational != direct) {
      std::ostringstream ss;
      ss << "count_rational: histogram " << cr.n_rational << " vs brute "
         << direct;
      fail(ss.str());
    }
  }

  // M(X;e) = sum_d mu(d) M(X;d,e)
  for (u64 e = 1; e <= 20; ++e) {
    u64 lhs = M_e(X, e);
    i64 rhs = 0;
    for (u64 d = 1; d <= sieve_d_max(X); ++d) {
      if (std::gcd(d, e) != 1) continue;
      int mu = mobius(d);
      if (mu == 0) continue;
      rhs += i64(mu) * i64(M_de(X, d, e));
    }
    if (i64(lhs) != rhs) {
      std::ostringstream ss;
      ss << "M identity failed at e=" << e << ": " << lhs << " vs " << rhs;
      fail(ss.str());
    }
  }

  // N^tw(X;e) = sum_f mu(f) M(e^6 X; e f)
  for (u64 e : {u64(1), u64(3), u64(7), u64(21)}) {
    u64 lhs = 0;
    for (const auto& r : census)
      if (u64(r.twist_defect) == e) ++lhs;
    i64 rhs = 0;
    mpz_class e6X = pow(mpz_class(i64(e)), 6) * X;
    for (u64 f = 1; f <= sieve_f_max(X, e); ++f) {
      int mu = mobius(f);
      if (mu == 0) continue;
      rhs += i64(mu) * i64(M_e(e6X, e * f));
    }
    if (i64(lhs) != rhs) {
      std::ostringstream ss;
      ss << "N^tw identity failed at e=" << e << ": " << lhs << " vs " << rhs;
      fail(ss.str());
    }
  }
  return rep;
}

}  // namespace isogeny7
