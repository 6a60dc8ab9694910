#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "dntau/gaussian_rational.hpp"

namespace dntau {

using BigFloat = boost::multiprecision::mpfr_float;

constexpr unsigned kDefaultPrecisionBits = 512;

unsigned digits10_for_bits(unsigned bits);

// Sets the working precision for values created inside the scope.
// Arithmetic results take the largest precision among their operands.
class PrecisionScope {
public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
  unsigned saved_;
};

class BigComplex {
public:
  BigComplex();
  explicit BigComplex(unsigned bits);
  BigComplex(const BigFloat& re, const BigFloat& im, unsigned bits);
  BigComplex(const GR& x, unsigned bits);
  BigComplex(double re, double im, unsigned bits);

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  unsigned bits() const { return bits_; }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  BigComplex operator-() const;

  BigFloat abs() const;
  BigFloat arg() const;
  BigComplex conj() const;

  std::string to_string(int digits = 30) const;

private:
  unsigned bits_;
  BigFloat re_, im_;
};

BigComplex exp(const BigComplex& z);
// Principal branch.
BigComplex log(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);
// z^q for rational q, principal branch; exact for integer q.
BigComplex pow(const BigComplex& z, const mpq_class& q);
BigComplex pow(const BigComplex& z, long n);
// e^{i*pi*q}
BigComplex exp_i_pi(const mpq_class& q, unsigned bits);
BigFloat pi(unsigned bits);

}  // namespace dntau
