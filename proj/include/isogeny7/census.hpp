#pragma once

// Enumeration of twist-minimal elliptic curves with a 7-isogeny up to twist
// height X, brute-force oracles, counting functions N^tw(X) and N(X), and
// the Moebius sieve identity counters M(X;e), M(X;d,e).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "isogeny7/forms.hpp"
#include "isogeny7/normform.hpp"

namespace isogeny7 {

struct CurveRecord {
  i64 a = 0, b = 0;          // groomed parameter pair
  mpz_class A_red, B_red;    // twist-minimal model, B_red > 0
  int raw_B_sign = 1;        // sign of B(a,b) before |.|
  mpz_class twist_height;
  i64 twist_defect = 1;
  i64 C_value = 1;

  friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

// ordering used everywhere: (twist_height, A_red, B_red, a, b)
bool record_less(const CurveRecord& l, const CurveRecord& r);

struct CensusBounds {
  mpz_class X;
  i64 e0_max = 1;        // largest e0 with 108 e0^12 <= 1029^6 X
  u64 m_max = 1;         // largest m with 108 m^6 <= 1029^6 X
  u64 table_bound = 2;   // m_max + 2
  mpz_class A_thresh;    // floor((X/4)^(1/3));  twht <= X  <=>
  mpz_class B_thresh;    // |A_red| <= A_thresh and |B_red| <= B_thresh
  u64 brute_C_max = 1;   // largest C with 108 C^4 <= 1029^6 X
};

CensusBounds census_bounds(const mpz_class& X);

// The lookup-table algorithm: iterate factorizations C = e0^3 m (m cubefree)
// with 108 e0^12 m^6 <= (3*7^3)^6 X, assemble representations of e0^3 m in
// Z[3 zeta] from the table (cubing representations of e0 when e0^3 falls
// outside it), then filter by exact twist height. Sorted by record_less.
std::vector<CurveRecord> enumerate_census(const mpz_class& X, int threads = 1,
                                          const RepTable* table = nullptr);

// Independent oracle: scan every groomed pair with 108 C(a,b)^4 <= 1029^6 X
// (sound since e <= 1029 e0 and e0^3 <= C), computing the defect from the
// valuations of A and B at 2, 3, 7 and the cube-divisor primes of C.
// Rejects X > 10^18.
std::vector<CurveRecord> enumerate_brute(const mpz_class& X);

struct CountReport {
  mpz_class X;
  u64 n_tw = 0;
  mpz_class n_rational;
  std::vector<std::pair<mpz_class, u64>> histogram;  // twist height -> count
  double ratio_check = 0;  // zeta(2)/(QR) * n_tw / X^(1/6)
};

CountReport count_twist(const mpz_class& X, int threads = 1);

// n_rational = N(X) = 2 * sum over records of #{c squarefree, >= 1,
// c^6 twht <= X}; also fills the twist fields.
CountReport count_rational(const mpz_class& X, int threads = 1);

// Direct (a,b,c) scan of height(c^2 A, c^3 B) <= X with c running over
// squarefree integers of both signs. Rejects X > 10^15.
mpz_class count_rational_brute(const mpz_class& X);

// #{(a,b): gcd(da,db,e)=1, b>0, (a,b) != (-7,1),
//          H(A(da,db),B(da,db)) <= X, e | twistdefect(A(da,db),B(da,db))}
u64 M_de(const mpz_class& X, u64 d, u64 e);

// #{(a,b) groomed: H(A,B) <= X, e | twistdefect(A,B)}
u64 M_e(const mpz_class& X, u64 e);

// largest d with 108 d^12 <= X (the support bound of the M(X;d,e) sieve)
u64 sieve_d_max(const mpz_class& X);
// largest f with 4 f^18 e^12 <= 3^9 7^36 X (support bound of the
// N^tw(X;e) sieve)
u64 sieve_f_max(const mpz_class& X, u64 e);

// serialization ------------------------------------------------------------

// CSV: "# key=value" metadata lines, a header line, then one record per
// line: a,b,A_red,B_red,twist_height,twist_defect,C_value.
void write_records_csv(std::ostream& os, const std::vector<CurveRecord>& recs,
                       const std::vector<std::pair<std::string, std::string>>& meta);

// JSON: {"config": {...}, "records": [ {...}, ... ]} with the same seven
// keys per record; big integers are emitted as exact decimal JSON numbers.
void write_records_json(std::ostream& os, const std::vector<CurveRecord>& recs,
                        const std::vector<std::pair<std::string, std::string>>& meta);

void write_count_json(std::ostream& os, const CountReport& report,
                      const std::vector<std::pair<std::string, std::string>>& meta);

// verification --------------------------------------------------------------

struct Discrepancy {
  size_t index;
  std::string what;
};

// Element-wise comparison; at most `limit` discrepancies reported.
std::vector<Discrepancy> compare_records(const std::vector<CurveRecord>& lhs,
                                         const std::vector<CurveRecord>& rhs,
                                         size_t limit = 10);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;  // human-readable, first 10
};

// Oracle equivalence at X (census vs brute, rational count vs brute when
// within its guard) plus both sieve identities.
VerifyReport run_verification(const mpz_class& X, int threads = 1);

}  // namespace isogeny7
