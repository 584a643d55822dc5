#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

#include "plflow/errors.hpp"

namespace plflow {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_power_of_two(const Int& n) {
  if (n <= 0) return false;
  return boost::multiprecision::lsb(n) == boost::multiprecision::msb(n);
}

// true iff r = p/2^q for integers p, q >= 0
inline bool is_dyadic(const Rat& r) {
  Int d = rat_den(r);
  return d == 1 || is_power_of_two(d);
}

// true iff r = 2^m for some integer m (positive power-of-two slope)
inline bool is_pow2_rational(const Rat& r) {
  if (r <= 0) return false;
  Int n = rat_num(r), d = rat_den(r);
  return (n == 1 || is_power_of_two(n)) && (d == 1 || is_power_of_two(d)) &&
         (n == 1 || d == 1);
}

inline Int floor_rat(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (n > 0 && q * d != n) ++q;
  return q;
}

// Exact dyadic rational p / 2^q.  Canonical form: numerator odd or exponent 0.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(long long n) : num_(n), exp_(0) {}  // NOLINT: implicit integer lift
  Dyadic(Int n, unsigned q) : num_(std::move(n)), exp_(q) { canonicalize(); }

  static Dyadic from_rational(const Rat& r) {
    Int d = rat_den(r);
    if (d != 1 && !is_power_of_two(d))
      throw validation_error("not a dyadic rational: " + r.str());
    unsigned q = (d == 1) ? 0u : static_cast<unsigned>(boost::multiprecision::lsb(d));
    return Dyadic(rat_num(r), q);
  }

  const Int& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }
  Rat to_rational() const {
    Int d = 1;
    d <<= exp_;
    return Rat(num_, d);
  }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ == 0; }

  Dyadic operator-() const { return Dyadic(-num_, exp_); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned q = std::max(a.exp_, b.exp_);
    return Dyadic((a.num_ << (q - a.exp_)) + (b.num_ << (q - b.exp_)), q);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
  }

  // multiply by 2^m, m of either sign
  Dyadic mul_pow2(long m) const {
    if (m >= 0) return Dyadic(num_ << m, exp_);
    return Dyadic(num_, exp_ + static_cast<unsigned>(-m));
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    unsigned q = std::max(a.exp_, b.exp_);
    Int lhs = a.num_ << (q - a.exp_);
    Int rhs = b.num_ << (q - b.exp_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Int floor() const { return num_ >= 0 ? (num_ >> exp_) : -((-num_ + ((Int(1) << exp_) - 1)) >> exp_); }
  Int ceil() const { return -((-*this).floor()); }

  // serialized as "p/2^q"; plain integers allowed on input
  std::string str() const { return num_.str() + "/2^" + std::to_string(exp_); }

  static Dyadic parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Dyadic(Int(s), 0);
      std::string den = s.substr(slash + 1);
      if (den.rfind("2^", 0) != 0) throw validation_error("bad dyadic denominator: " + s);
      unsigned q = static_cast<unsigned>(std::stoul(den.substr(2)));
      return Dyadic(Int(s.substr(0, slash)), q);
    } catch (const std::exception&) {
      throw validation_error("cannot parse dyadic: " + s);
    }
  }

  double to_double() const { return static_cast<double>(to_rational()); }

 private:
  void canonicalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --exp_;
    }
  }

  Int num_;
  unsigned exp_;
};

// Fixed-precision decimal rendering (advisory; exact fields are authoritative).
inline std::string decimal_string(const Rat& r, int digits = 12) {
  Int n = rat_num(r), d = rat_den(r);
  bool neg = n < 0;
  if (neg) n = -n;
  Int ip = n / d;
  Int rem = n % d;
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int frac = (rem * scale) / d;
  std::string fs = frac.str();
  fs.insert(fs.begin(), digits - static_cast<int>(fs.size()), '0');
  return (neg ? "-" : "") + ip.str() + "." + fs;
}

}  // namespace plflow
