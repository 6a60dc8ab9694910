#include "dntau/bigcomplex.hpp"

#include <cmath>
#include <sstream>

namespace dntau {

namespace mp = boost::multiprecision;

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_(BigFloat::default_precision()) {
  BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_); }

BigComplex::BigComplex() : BigComplex(kDefaultPrecisionBits) {}

BigComplex::BigComplex(unsigned bits) : bits_(bits) {
  PrecisionScope s(bits);
  re_ = 0;
  im_ = 0;
}

BigComplex::BigComplex(const BigFloat& re, const BigFloat& im, unsigned bits) : bits_(bits) {
  PrecisionScope s(bits);
  re_ = BigFloat(re);
  im_ = BigFloat(im);
}

BigComplex::BigComplex(const GR& x, unsigned bits) : bits_(bits) {
  PrecisionScope s(bits);
  re_ = BigFloat(x.re().get_num().get_str()) / BigFloat(x.re().get_den().get_str());
  im_ = BigFloat(x.im().get_num().get_str()) / BigFloat(x.im().get_den().get_str());
}

BigComplex::BigComplex(double re, double im, unsigned bits) : bits_(bits) {
  PrecisionScope s(bits);
  re_ = re;
  im_ = im;
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  bits_ = std::max(bits_, o.bits_);
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  bits_ = std::max(bits_, o.bits_);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat r = re_ * o.re_ - im_ * o.im_;
  BigFloat i = re_ * o.im_ + im_ * o.re_;
  re_ = r;
  im_ = i;
  bits_ = std::max(bits_, o.bits_);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigFloat n = o.re_ * o.re_ + o.im_ * o.im_;
  if (n == 0) throw ArithmeticError("BigComplex division by zero");
  BigFloat r = (re_ * o.re_ + im_ * o.im_) / n;
  BigFloat i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = r;
  im_ = i;
  bits_ = std::max(bits_, o.bits_);
  return *this;
}

BigComplex BigComplex::operator-() const { return BigComplex(BigFloat(-re_), BigFloat(-im_), bits_); }

BigFloat BigComplex::abs() const { return mp::sqrt(re_ * re_ + im_ * im_); }

BigFloat BigComplex::arg() const { return mp::atan2(im_, re_); }

BigComplex BigComplex::conj() const { return BigComplex(re_, BigFloat(-im_), bits_); }

std::string BigComplex::to_string(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << re_ << (im_ < 0 ? " - " : " + ") << mp::abs(im_) << "*i";
  return os.str();
}

BigFloat pi(unsigned bits) {
  PrecisionScope s(bits);
  BigFloat r = 0;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

BigComplex exp(const BigComplex& z) {
  PrecisionScope s(z.bits());
  BigFloat m = mp::exp(z.re());
  return BigComplex(BigFloat(m * mp::cos(z.im())), BigFloat(m * mp::sin(z.im())), z.bits());
}

BigComplex log(const BigComplex& z) {
  PrecisionScope s(z.bits());
  if (z.re() == 0 && z.im() == 0) throw ArithmeticError("log of zero");
  return BigComplex(BigFloat(mp::log(z.abs())), z.arg(), z.bits());
}

BigComplex sqrt(const BigComplex& z) {
  if (z.re() == 0 && z.im() == 0) return BigComplex(z.bits());
  return pow(z, mpq_class(1, 2));
}

BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) return BigComplex(GR(1), z.bits()) / pow(z, -n);
  BigComplex base = z, acc(GR(1), z.bits());
  while (n > 0) {
    if (n & 1) acc *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return acc;
}

BigComplex pow(const BigComplex& z, const mpq_class& q) {
  if (q.get_den() == 1) return pow(z, q.get_num().get_si());
  PrecisionScope s(z.bits());
  BigFloat qq = BigFloat(q.get_num().get_str()) / BigFloat(q.get_den().get_str());
  BigComplex l = log(z);
  return exp(BigComplex(BigFloat(l.re() * qq), BigFloat(l.im() * qq), z.bits()));
}

BigComplex exp_i_pi(const mpq_class& q, unsigned bits) {
  PrecisionScope s(bits);
  // reduce q mod 2 so that exact quarter turns stay exact
  mpq_class r = q;
  mpz_class fl;
  mpq_class half = r / 2;
  mpz_fdiv_q(fl.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  r -= 2 * mpq_class(fl);
  if (r == 0) return BigComplex(GR(1), bits);
  if (r == mpq_class(1, 2)) return BigComplex(GR::i(), bits);
  if (r == 1) return BigComplex(GR(-1), bits);
  if (r == mpq_class(3, 2)) return BigComplex(-GR::i(), bits);
  BigFloat th = pi(bits) * BigFloat(r.get_num().get_str()) / BigFloat(r.get_den().get_str());
  return BigComplex(BigFloat(mp::cos(th)), BigFloat(mp::sin(th)), bits);
}

}  // namespace dntau
