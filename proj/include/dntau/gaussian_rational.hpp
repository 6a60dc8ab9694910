#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace dntau {

struct ArithmeticError : std::domain_error {
  using std::domain_error::domain_error;
};

// Element re + im*i of Q(i).  mpq_class keeps both parts canonical.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(implicit)
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  static GaussianRational frac(long num, long den);
  static GaussianRational i() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational pow(long n) const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string to_string() const;

  // acc += a*b without allocating fresh temporaries per call.
  friend void fma_into(GaussianRational& acc, const GaussianRational& a, const GaussianRational& b);

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using GR = GaussianRational;

void fma_into(GR& acc, const GR& a, const GR& b);

// Division returning nullopt instead of throwing.
std::optional<GR> checked_div(const GR& x, const GR& y);

// i^n for any integer n.
GR i_pow(long n);

// (n)!! for odd n; negative odd n = 2k-1 (k<0) gives (-1)^k/(2|k|-1)!!.
mpq_class double_factorial(long n);
// (2k-1)!! under the same convention.
inline mpq_class dfact(long k) { return double_factorial(2 * k - 1); }

mpq_class factorial(long n);
mpq_class binomial(long n, long k);
// Generalised binomial coefficient C(r, k) for rational r.
mpq_class binomial(const mpq_class& r, long k);

nlohmann::json to_json(const mpq_class& q);
nlohmann::json to_json(const GR& x);
GR gr_from_json(const nlohmann::json& j);

}  // namespace dntau
