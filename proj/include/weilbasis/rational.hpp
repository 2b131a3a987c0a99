#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace weilbasis {

using Int = mpz_class;
using Rat = mpq_class;

// Library-wide error with a stable machine-readable code ("NotEven",
// "TooLarge", ...). The CLI maps codes to exit statuses.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool ok, const char* code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline long mod_floor(long a, long b) {
  long r = a % b;
  if (r < 0) r += (b < 0) ? -b : b;
  return r;
}

// Euclidean division: a = q*b + r with 0 <= r < |b|.
inline void euclid_div(const Int& a, const Int& b, Int& q, Int& r) {
  if (b > 0) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  } else {
    mpz_cdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline long lcm_long(long a, long b) {
  Int l = lcm(Int(a), Int(b));
  if (!l.fits_slong_p()) fail("TooLarge", "lcm overflow");
  return l.get_si();
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  bool inv = e < 0;
  unsigned long n = inv ? -(unsigned long)e : (unsigned long)e;
  Rat num, den;
  mpz_pow_ui(num.get_num_mpz_t(), b.get_num_mpz_t(), n);
  mpz_pow_ui(den.get_den_mpz_t(), b.get_den_mpz_t(), n);
  Rat r(num.get_num(), den.get_den());
  r.canonicalize();
  if (inv) {
    require(r != 0, "DivisionByZero", "0^negative");
    r = 1 / r;
  }
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
  return r;
}

// Kronecker symbol (a|n), the natural extension of the Jacobi symbol.
inline int kronecker(const Int& a, const Int& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

// mpq_class(a, b) does not reduce; normalize before relying on ==
inline Rat canon(Rat x) {
  x.canonicalize();
  return x;
}

inline Rat make_rat(const Int& num, const Int& den) {
  require(den != 0, "DivisionByZero", "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// x mod 1 in [0,1).
inline Rat mod1(Rat x) {
  x.canonicalize();
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rat(fl);
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Int rat_floor(const Rat& x) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return fl;
}

inline std::vector<std::pair<Int, unsigned>> factorize(Int n) {
  require(n != 0, "DomainError", "factorize(0)");
  if (n < 0) n = -n;
  std::vector<std::pair<Int, unsigned>> out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<long> prime_divisors_long(const Int& n) {
  std::vector<long> ps;
  for (auto& [p, e] : factorize(n)) ps.push_back((long)p.get_si());
  return ps;
}

inline std::vector<long> divisors_long(long n) {
  std::vector<long> ds;
  for (long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) fail("ParseError", "bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline double rat_to_double(const Rat& x) { return x.get_d(); }

}  // namespace weilbasis
