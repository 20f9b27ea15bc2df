#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <utility>

namespace qiso {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Element of Q(i): re + im*i with exact arbitrary-precision rational parts.
struct GaussRational {
  Rat re{0};
  Rat im{0};

  GaussRational() = default;
  GaussRational(int v) : re(v) {}
  GaussRational(const Rat& r) : re(r) {}
  GaussRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return GaussRational(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRational conj() const { return GaussRational(re, -im); }
  // |z|^2 as an exact rational.
  Rat norm2() const { return re * re + im * im; }

  GaussRational operator-() const { return GaussRational(-re, -im); }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }

  // Multiplicative inverse; throws std::domain_error on zero.
  GaussRational inv() const;
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    return a * b.inv();
  }
  GaussRational& operator/=(const GaussRational& o) { return *this = *this / o; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  // Canonical text form: "0", "5", "-3/2", "i", "-i", "2/3i", "1+i", "3/2-5/3i".
  std::string str() const;
  // Inverse of str(); throws std::invalid_argument on malformed input.
  static GaussRational parse(std::string_view s);
};

}  // namespace qiso
