#pragma once

#include <weilbasis/intmat.hpp>
#include <weilbasis/rational.hpp>

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace weilbasis {

// Exact arithmetic in Q(zeta_M). Values are kept in canonical form: a sparse
// rational combination of zeta_M^j for 0 <= j < phi(M), reduced modulo the
// M-th cyclotomic polynomial. Mixed-order operations promote to the lcm and
// results drop back to a subfield when the power support allows it, so pure
// rationals always live at order 1.

namespace detail {

inline std::vector<Int> poly_divexact(std::vector<Int> num,
                                      const std::vector<Int>& den) {
  long dn = (long)num.size() - 1, dd = (long)den.size() - 1;
  require(dd >= 0 && den[dd] != 0, "DomainError", "poly division by zero");
  std::vector<Int> q(dn - dd + 1);
  for (long i = dn; i >= dd; --i) {
    if (num[i] == 0) continue;
    Int f = num[i] / den[dd];
    require(f * den[dd] == num[i], "InternalError", "inexact poly division");
    q[i - dd] = f;
    for (long j = 0; j <= dd; ++j) num[i - dd + j] -= f * den[j];
  }
  for (auto& c : num)
    require(c == 0, "InternalError", "poly division remainder");
  return q;
}

inline const std::vector<Int>& cyclotomic_polynomial(long m) {
  static std::unordered_map<long, std::vector<Int>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::function<const std::vector<Int>&(long)> get =
      [&](long mm) -> const std::vector<Int>& {
    auto jt = cache.find(mm);
    if (jt != cache.end()) return jt->second;
    std::vector<Int> p(mm + 1);
    p[0] = -1;
    p[mm] = 1;
    for (long d : divisors_long(mm))
      if (d < mm) p = poly_divexact(p, get(d));
    return cache.emplace(mm, std::move(p)).first->second;
  };
  return get(m);
}

struct CycField {
  long order;                         // M
  long deg;                           // phi(M)
  std::vector<Int> minpoly;           // Phi_M, monic
  std::vector<std::vector<Int>> red;  // red[t-deg]: x^t in basis, t in [deg,M)

  explicit CycField(long m) : order(m) {
    minpoly = cyclotomic_polynomial(m);
    deg = (long)minpoly.size() - 1;
    red.resize(std::max<long>(0, m - deg));
    if (m > deg) {
      std::vector<Int> row(deg);
      for (long j = 0; j < deg; ++j) row[j] = -minpoly[j];
      red[0] = row;
      for (long t = deg + 1; t < m; ++t) {
        std::vector<Int> nr(deg);
        const auto& prev = red[t - 1 - deg];
        for (long j = 0; j + 1 < deg; ++j) nr[j + 1] = prev[j];
        if (prev[deg - 1] != 0)
          for (long j = 0; j < deg; ++j) nr[j] += prev[deg - 1] * red[0][j];
        red[t - deg] = std::move(nr);
      }
    }
  }
};

inline const CycField& field_locked(long m) {
  static std::unordered_map<long, std::unique_ptr<CycField>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end())
    it = cache.emplace(m, std::make_unique<CycField>(m)).first;
  return *it->second;
}

// mutex-free fast path: field objects are immortal, cache pointers per thread
inline const CycField& field(long m) {
  static thread_local std::unordered_map<long, const CycField*> local;
  auto it = local.find(m);
  if (it != local.end()) return *it->second;
  const CycField& f = field_locked(m);
  local.emplace(m, &f);
  return f;
}

inline long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// reusable dense accumulator per thread, kept all-zero between uses
inline std::vector<Rat>& scratch(long m) {
  static thread_local std::unordered_map<long, std::vector<Rat>> bufs;
  auto& v = bufs[m];
  if ((long)v.size() < m) v.resize(m);
  return v;
}

}  // namespace detail

class Cyc {
 public:
  Cyc() : order_(1) {}
  explicit Cyc(const Rat& r0) : order_(1) {
    Rat r = canon(r0);
    if (r != 0) terms_.emplace_back(0, r);
  }
  explicit Cyc(long n) : Cyc(Rat(n)) {}
  explicit Cyc(const Int& n) : Cyc(Rat(n)) {}

  // e(x) = exp(2 pi i x) for rational x
  static Cyc e(const Rat& x) {
    Rat y = mod1(x);
    require(y.get_den().fits_slong_p(), "TooLarge", "root of unity order");
    long den = y.get_den().get_si();
    long num = (long)y.get_num().get_si();
    Cyc c;
    c.order_ = den;
    c.terms_.emplace_back(num, Rat(1));
    c.canonicalize();
    return c;
  }

  static Cyc zero() { return Cyc(); }
  static Cyc one() { return Cyc(Rat(1)); }

  long order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<std::pair<long, Rat>>& terms() const { return terms_; }

  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
  }
  Rat rational_value() const {
    require(is_rational(), "NotRational", "cyclotomic value not rational");
    return terms_.empty() ? Rat(0) : terms_[0].second;
  }

  // same value represented in Q(zeta_m); never descends afterwards, so the
  // result's power basis really is the order-m one
  Cyc promoted(long m) const {
    require(m % order_ == 0, "DomainError", "promotion to non-multiple order");
    if (m == order_) return *this;
    long k = m / order_;
    Cyc out;
    out.order_ = m;
    for (auto& [p, c] : terms_) out.terms_.emplace_back(p * k, c);
    out.canonicalize(false);
    return out;
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) { return add_sub(a, b, 1); }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return add_sub(a, b, -1); }
  Cyc operator-() const {
    Cyc out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.is_zero() || b.is_zero()) return Cyc();
    if (a.is_rational()) return b.scaled(a.rational_value());
    if (b.is_rational()) return a.scaled(b.rational_value());
    long m = a.order_ == b.order_ ? a.order_ : lcm_long(a.order_, b.order_);
    Cyc xp, yp;
    const Cyc& xr = (a.order_ == m) ? a : (xp = a.promoted(m));
    const Cyc& yr = (b.order_ == m) ? b : (yp = b.promoted(m));
    Cyc out;
    out.order_ = m;
    auto& acc = detail::scratch(m);
    for (auto& [p1, c1] : xr.terms_)
      for (auto& [p2, c2] : yr.terms_) {
        long p = p1 + p2;
        if (p >= m) p -= m;
        acc[p] += c1 * c2;
      }
    out.from_dense(acc);
    out.shrink_order();
    return out;
  }
  Cyc scaled(const Rat& r0) const {
    Rat r = canon(r0);
    if (r == 0) return Cyc();
    Cyc out = *this;
    for (auto& t : out.terms_) t.second *= r;
    return out;
  }
  friend Cyc operator*(const Rat& r, const Cyc& a) { return a.scaled(r); }
  Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
  Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
  Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

  bool operator==(const Cyc& o) const {
    if (order_ == o.order_) return terms_ == o.terms_;
    long m = lcm_long(order_, o.order_);
    return promoted(m).terms_ == o.promoted(m).terms_;
  }
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  // complex conjugate: zeta^j -> zeta^(M-j)
  Cyc conj() const {
    if (is_rational()) return *this;
    Cyc out;
    out.order_ = order_;
    auto& acc = detail::scratch(order_);
    for (auto& [p, c] : terms_) acc[p == 0 ? 0 : order_ - p] += c;
    out.from_dense(acc);
    out.shrink_order();
    return out;
  }

  Cyc inverse() const {
    require(!is_zero(), "DivisionByZero", "inverse of zero");
    if (is_rational()) return Cyc(1 / rational_value());
    if (terms_.size() == 1) {  // c * zeta^p
      Cyc r = Cyc::e(Rat(-terms_[0].first, order_));
      return r.scaled(1 / terms_[0].second);
    }
    const auto& f = detail::field(order_);
    long d = f.deg;
    QMat mul(d, d);
    for (long j = 0; j < d; ++j) {
      Cyc col = *this * zeta_power(order_, j);
      for (auto& [p, c] : col.promoted(order_).terms_) mul(p, j) = c;
    }
    std::vector<Rat> e0(d, Rat(0));
    e0[0] = 1;
    std::vector<Rat> x = q_solve(mul, e0);
    Cyc out;
    out.order_ = order_;
    for (long j = 0; j < d; ++j)
      if (x[j] != 0) out.terms_.emplace_back(j, x[j]);
    out.shrink_order();
    Cyc check = out * (*this);
    require(check == Cyc::one(), "InternalError", "inverse verification");
    return out;
  }
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

  static Cyc zeta_power(long order, long p) {
    return Cyc::e(Rat(mod_floor(p, order), order));
  }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    for (auto& [p, c] : terms_) {
      double ang = 2.0 * 3.14159265358979323846 * (double)p / (double)order_;
      z += rat_to_double(c) *
           std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
  }

  std::vector<Rat> dense_coords() const {
    std::vector<Rat> v(detail::field(order_).deg, Rat(0));
    for (auto& [p, c] : terms_) v[p] = c;
    return v;
  }
  static Cyc from_coords(long order, const std::vector<Rat>& v) {
    require((long)v.size() == detail::field(order).deg, "ParseError",
            "cyclotomic coordinate length mismatch");
    Cyc out;
    out.order_ = order;
    for (long j = 0; j < (long)v.size(); ++j)
      if (v[j] != 0) out.terms_.emplace_back(j, v[j]);
    out.shrink_order();
    return out;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (auto& [p, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.get_str();
      if (p > 0) s += "*z" + std::to_string(order_) + "^" + std::to_string(p);
    }
    return s;
  }

 private:
  long order_;
  std::vector<std::pair<long, Rat>> terms_;  // sorted by power, power < phi

  static Cyc add_sub(const Cyc& a, const Cyc& b, int sign) {
    long m = a.order_ == b.order_ ? a.order_ : lcm_long(a.order_, b.order_);
    Cyc xp, yp;
    const Cyc& x = (a.order_ == m) ? a : (xp = a.promoted(m));
    const Cyc& y = (b.order_ == m) ? b : (yp = b.promoted(m));
    Cyc out;
    out.order_ = m;
    out.terms_.reserve(x.terms_.size() + y.terms_.size());
    size_t i = 0, j = 0;
    while (i < x.terms_.size() || j < y.terms_.size()) {
      if (j == y.terms_.size() ||
          (i < x.terms_.size() && x.terms_[i].first < y.terms_[j].first)) {
        out.terms_.push_back(x.terms_[i++]);
      } else if (i == x.terms_.size() ||
                 y.terms_[j].first < x.terms_[i].first) {
        out.terms_.emplace_back(y.terms_[j].first, sign * y.terms_[j].second);
        ++j;
      } else {
        Rat c = x.terms_[i].second + sign * y.terms_[j].second;
        if (c != 0) out.terms_.emplace_back(x.terms_[i].first, c);
        ++i;
        ++j;
      }
    }
    out.shrink_order();
    return out;
  }

  // Reduce a dense power-indexed accumulator (size order_) to canonical form
  // and leave the scratch all-zero again.
  void from_dense(std::vector<Rat>& acc) {
    const auto& f = detail::field(order_);
    for (long t = order_ - 1; t >= f.deg; --t) {
      if (acc[t] == 0) continue;
      const auto& row = f.red[t - f.deg];
      for (long j = 0; j < f.deg; ++j)
        if (row[j] != 0) acc[j] += acc[t] * Rat(row[j]);
      acc[t] = 0;
    }
    terms_.clear();
    for (long j = 0; j < f.deg; ++j)
      if (acc[j] != 0) {
        terms_.emplace_back(j, acc[j]);
        acc[j] = 0;
      }
  }

  // normalize terms whose powers may lie anywhere
  void canonicalize(bool allow_shrink = true) {
    const auto& f = detail::field(order_);
    bool ok = true;
    long prev = -1;
    for (auto& [p, c] : terms_) {
      if (p >= f.deg || p <= prev || c == 0) {
        ok = false;
        break;
      }
      prev = p;
    }
    if (!ok) {
      auto& acc = detail::scratch(order_);
      for (auto& [p, c] : terms_) acc[mod_floor(p, order_)] += c;
      from_dense(acc);
    }
    if (allow_shrink) shrink_order();
  }

  // Descend to a subfield when the support allows: if all powers are
  // divisible by a prime q | order with phi(order) = q*phi(order/q), then
  // zeta_order^(qj) = zeta_(order/q)^j re-indexes the canonical basis.
  void shrink_order() {
    if (terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0)) {
      order_ = 1;
      return;
    }
    for (;;) {
      long g = 0;
      for (auto& [p, c] : terms_) g = detail::gcd_long(g, p);
      long k = detail::gcd_long(g, order_);
      if (k <= 1) break;
      long q = 1;
      for (long qq = 2; qq * qq <= k; ++qq)
        if (k % qq == 0) {
          q = qq;
          break;
        }
      if (q == 1) q = k;  // k itself prime
      long m2 = order_ / q;
      if (detail::field(order_).deg != q * detail::field(m2).deg) {
        // try the remaining prime factors of k before giving up
        bool found = false;
        for (long qq : prime_divisors_long(Int(k))) {
          if (detail::field(order_).deg ==
              qq * detail::field(order_ / qq).deg) {
            q = qq;
            m2 = order_ / qq;
            found = true;
            break;
          }
        }
        if (!found) break;
      }
      for (auto& t : terms_) t.first /= q;
      order_ = m2;
    }
  }
};

// the canonical positive square root of a positive integer, as an exact
// cyclotomic value built from quadratic Gauss sums
inline Cyc sqrt_positive_integer(const Int& n) {
  require(n > 0, "DomainError", "sqrt of non-positive integer");
  Cyc out = Cyc::one();
  Int square_part = 1;
  for (auto& [p, e] : factorize(n)) {
    square_part *= pow_int(p, e / 2);
    if (e % 2 == 0) continue;
    if (p == 2) {
      out *= Cyc::e(Rat(1, 8)) + Cyc::e(Rat(-1, 8));
    } else {
      // quadratic Gauss sum: sum_x e(x^2/p) = sqrt(p) for p = 1 mod 4 and
      // i*sqrt(p) for p = 3 mod 4
      long pl = (long)p.get_si();
      Cyc g = Cyc::zero();
      for (long x = 0; x < pl; ++x) g += Cyc::e(Rat(x * x, pl));
      if (pl % 4 == 3) g *= Cyc::e(Rat(-1, 4));
      out *= g;
    }
  }
  return out.scaled(Rat(square_part));
}

}  // namespace weilbasis
