#include "qiso/qscalar.hpp"

#include <sstream>
#include <stdexcept>

namespace qiso {

int Poly::ord() const {
  for (size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) return static_cast<int>(k);
  return -1;
}

void Poly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Poly Poly::monomial(GaussRational a, int k) {
  Poly p;
  if (a.is_zero()) return p;
  p.c.assign(static_cast<size_t>(k) + 1, GaussRational());
  p.c[static_cast<size_t>(k)] = std::move(a);
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t k = 0; k < r.c.size(); ++k) {
    if (k < a.c.size()) r.c[k] += a.c[k];
    if (k < b.c.size()) r.c[k] += b.c[k];
  }
  r.trim();
  return r;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, GaussRational());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  r.trim();
  return r;
}

Poly operator*(const Poly& a, const GaussRational& s) {
  if (s.is_zero()) return Poly();
  Poly r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

Poly poly_divmod(const Poly& a, const Poly& b, Poly* rem) {
  if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
  Poly q;
  Poly r = a;
  GaussRational binv = b.lead().inv();
  int db = b.deg();
  if (r.deg() >= db) q.c.assign(static_cast<size_t>(r.deg() - db) + 1, GaussRational());
  while (r.deg() >= db) {
    int k = r.deg() - db;
    GaussRational f = r.lead() * binv;
    q.c[static_cast<size_t>(k)] = f;
    for (int j = 0; j <= db; ++j) {
      if (b.c[static_cast<size_t>(j)].is_zero()) continue;
      r.c[static_cast<size_t>(j + k)] -= f * b.c[static_cast<size_t>(j)];
    }
    r.trim();
  }
  q.trim();
  if (rem) *rem = std::move(r);
  return q;
}

Poly poly_exact_div(const Poly& a, const Poly& b) {
  Poly rem;
  Poly q = poly_divmod(a, b, &rem);
  if (!rem.is_zero()) throw std::domain_error("Poly: inexact division");
  return q;
}

namespace {

Poly make_monic(Poly p) {
  if (p.is_zero()) return p;
  GaussRational linv = p.lead().inv();
  for (auto& x : p.c) x *= linv;
  return p;
}

}  // namespace

Poly poly_gcd(Poly a, Poly b) {
  if (a.is_zero()) return make_monic(std::move(b));
  if (b.is_zero()) return make_monic(std::move(a));
  if (a.deg() == 0 || b.deg() == 0) return Poly::one();
  // Monomial fast paths: gcd(c*v^k, p) = v^min(k, ord p).
  if (a.is_monomial() || b.is_monomial()) {
    int k = a.is_monomial() ? std::min(a.deg(), b.ord()) : std::min(b.deg(), a.ord());
    return Poly::monomial(GaussRational(1), k);
  }
  while (!b.is_zero()) {
    Poly r;
    poly_divmod(a, b, &r);
    a = std::move(b);
    b = make_monic(std::move(r));  // monic remainders keep coefficient growth in check
  }
  return make_monic(std::move(a));
}

QScalar::QScalar(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("QScalar: zero denominator");
  canonicalize();
}

void QScalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly::one();
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (g.deg() > 0) {
    num_ = poly_exact_div(num_, g);
    den_ = poly_exact_div(den_, g);
  }
  GaussRational linv = den_.lead().inv();
  if (!(linv == GaussRational(1))) {
    for (auto& x : num_.c) x *= linv;
    for (auto& x : den_.c) x *= linv;
  }
}

QScalar QScalar::v_pow(int k) {
  QScalar r;
  if (k >= 0) {
    r.num_ = Poly::monomial(GaussRational(1), k);
    r.den_ = Poly::one();
  } else {
    r.num_ = Poly::one();
    r.den_ = Poly::monomial(GaussRational(1), -k);
  }
  return r;
}

GaussRational QScalar::constant_value() const {
  if (!is_constant()) throw std::domain_error("QScalar: not a constant");
  return num_.is_zero() ? GaussRational() : num_.c[0];
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

QScalar& QScalar::operator+=(const QScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ = num_ + o.num_;
    canonicalize();
    return *this;
  }
  Poly g = poly_gcd(den_, o.den_);
  Poly da = (g.deg() > 0) ? poly_exact_div(den_, g) : den_;
  Poly db = (g.deg() > 0) ? poly_exact_div(o.den_, g) : o.den_;
  num_ = num_ * db + o.num_ * da;
  den_ = den_ * db;
  canonicalize();
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) { return *this += -o; }

QScalar& QScalar::operator*=(const QScalar& o) {
  if (is_zero() || o.is_zero()) return *this = QScalar();
  // Cross-cancel before multiplying to keep degrees small.
  Poly g1 = poly_gcd(num_, o.den_);
  Poly g2 = poly_gcd(o.num_, den_);
  Poly n1 = (g1.deg() > 0) ? poly_exact_div(num_, g1) : num_;
  Poly d2 = (g1.deg() > 0) ? poly_exact_div(o.den_, g1) : o.den_;
  Poly n2 = (g2.deg() > 0) ? poly_exact_div(o.num_, g2) : o.num_;
  Poly d1 = (g2.deg() > 0) ? poly_exact_div(den_, g2) : den_;
  num_ = n1 * n2;
  den_ = d1 * d2;
  canonicalize();
  return *this;
}

QScalar& QScalar::operator/=(const QScalar& o) {
  if (o.is_zero()) throw std::domain_error("QScalar: division by zero");
  QScalar inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  inv.canonicalize();
  return *this *= inv;
}

QScalar QScalar::pow(int k) const {
  if (k == 0) return QScalar(1);
  QScalar base = *this;
  if (k < 0) {
    base = QScalar(1) / base;
    k = -k;
  }
  QScalar r(1);
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

namespace {

// p(1/v) * v^deg(p), with coefficients conjugated.
Poly conj_reverse(const Poly& p) {
  Poly r;
  r.c.assign(p.c.rbegin(), p.c.rend());
  for (auto& x : r.c) x = x.conj();
  r.trim();
  return r;
}

}  // namespace

QScalar QScalar::star() const {
  if (is_zero()) return QScalar();
  int dn = num_.deg();
  int dd = den_.deg();
  Poly n = conj_reverse(num_);
  Poly d = conj_reverse(den_);
  if (dd >= dn) {
    n = n * Poly::monomial(GaussRational(1), dd - dn);
  } else {
    d = d * Poly::monomial(GaussRational(1), dn - dd);
  }
  return QScalar(std::move(n), std::move(d));
}

std::complex<double> QScalar::eval_at(std::complex<double> q_value) const {
  std::complex<double> v = std::sqrt(q_value);
  auto horner = [&](const Poly& p) {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
      acc = acc * v + std::complex<double>(it->re.convert_to<double>(), it->im.convert_to<double>());
    }
    return acc;
  };
  std::complex<double> d = horner(den_);
  if (std::abs(d) < kPoleEps) throw std::domain_error("QScalar: pole at evaluation point");
  return horner(num_) / d;
}

GaussRational QScalar::eval_at_one() const {
  auto at_one = [](const Poly& p) {
    GaussRational s;
    for (const auto& x : p.c) s += x;
    return s;
  };
  GaussRational d = at_one(den_);
  if (d.is_zero()) throw std::domain_error("QScalar: pole at q = 1");
  return at_one(num_) / d;
}

namespace {

using Series = std::vector<GaussRational>;  // truncated power series in t = q - 1

Series series_mul(const Series& a, const Series& b, size_t len) {
  Series r(len);
  for (size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; i + j < len && j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

// p(v) composed with the series v(t), truncated to len coefficients.
Series compose_poly(const Poly& p, const Series& vseries, size_t len) {
  Series r(len);
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
    r = series_mul(r, vseries, len);
    r[0] += *it;
  }
  return r;
}

Series series_div(const Series& a, const Series& b, size_t len) {
  if (b.empty() || b[0].is_zero()) throw std::domain_error("QScalar: pole at q = 1");
  Series c(len);
  GaussRational binv = b[0].inv();
  for (size_t k = 0; k < len; ++k) {
    GaussRational acc = (k < a.size()) ? a[k] : GaussRational();
    for (size_t j = 1; j <= k && j < b.size(); ++j) acc -= b[j] * c[k - j];
    c[k] = acc * binv;
  }
  return c;
}

}  // namespace

std::vector<GaussRational> QScalar::taylor_at_one(int order) const {
  if (order < 0) throw std::invalid_argument("QScalar: negative Taylor order");
  size_t len = static_cast<size_t>(order) + 1;
  // v = (1+t)^{1/2} = sum_k binom(1/2, k) t^k.
  Series vs(len);
  vs[0] = GaussRational(1);
  Rat coef(1);
  for (size_t k = 1; k < len; ++k) {
    coef *= (Rat(1, 2) - Rat(static_cast<long>(k) - 1)) / Rat(static_cast<long>(k));
    vs[k] = GaussRational(coef);
  }
  Series n = compose_poly(num_, vs, len);
  Series d = compose_poly(den_, vs, len);
  return series_div(n, d, len);
}

std::string QScalar::str() const {
  auto poly_str = [](const Poly& p) {
    if (p.is_zero()) return std::string("0");
    std::string s;
    for (size_t k = 0; k < p.c.size(); ++k) {
      if (k) s += ' ';
      s += p.c[k].str();
    }
    return s;
  };
  return poly_str(num_) + " / " + poly_str(den_);
}

QScalar QScalar::parse(std::string_view s) {
  size_t sep = s.find(" / ");
  if (sep == std::string_view::npos) throw std::invalid_argument("QScalar: missing ' / '");
  auto parse_poly = [](std::string_view t) {
    Poly p;
    if (t == "0") return p;
    std::istringstream in{std::string(t)};
    std::string tok;
    while (in >> tok) p.c.push_back(GaussRational::parse(tok));
    p.trim();
    return p;
  };
  return QScalar(parse_poly(s.substr(0, sep)), parse_poly(s.substr(sep + 3)));
}

}  // namespace qiso
