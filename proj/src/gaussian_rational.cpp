#include "dntau/gaussian_rational.hpp"

#include <sstream>

namespace dntau {

GaussianRational GaussianRational::frac(long num, long den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, 0};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero in Q(i)");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class n = o.norm();
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational GaussianRational::pow(long n) const {
  if (n < 0) {
    if (is_zero()) throw ArithmeticError("zero to a negative power");
    return GaussianRational(1) / pow(-n);
  }
  GaussianRational base = *this, acc = 1;
  while (n > 0) {
    if (n & 1) acc *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return acc;
}

std::string GaussianRational::to_string() const {
  std::ostringstream os;
  if (sgn(im_) == 0) {
    os << re_;
  } else if (sgn(re_) == 0) {
    os << im_ << "*i";
  } else {
    os << re_ << (sgn(im_) > 0 ? "+" : "-") << abs(im_) << "*i";
  }
  return os.str();
}

void fma_into(GR& acc, const GR& a, const GR& b) {
  thread_local mpq_class t;
  bool ar = sgn(a.im_) == 0, br = sgn(b.im_) == 0;
  mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
  mpq_add(acc.re_.get_mpq_t(), acc.re_.get_mpq_t(), t.get_mpq_t());
  if (ar && br) return;
  if (!ar && !br) {
    mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
    mpq_sub(acc.re_.get_mpq_t(), acc.re_.get_mpq_t(), t.get_mpq_t());
  }
  if (!br) {
    mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
    mpq_add(acc.im_.get_mpq_t(), acc.im_.get_mpq_t(), t.get_mpq_t());
  }
  if (!ar) {
    mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
    mpq_add(acc.im_.get_mpq_t(), acc.im_.get_mpq_t(), t.get_mpq_t());
  }
}

std::optional<GR> checked_div(const GR& x, const GR& y) {
  if (y.is_zero()) return std::nullopt;
  return x / y;
}

GR i_pow(long n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return 1;
    case 1: return GR::i();
    case 2: return -1;
    default: return -GR::i();
  }
}

mpq_class double_factorial(long n) {
  if (n % 2 == 0) throw ArithmeticError("double factorial needs an odd argument");
  if (n >= -1) {
    mpz_class acc = 1;
    for (long j = n; j > 1; j -= 2) acc *= j;
    return mpq_class(acc);
  }
  // n = 2k-1 with k <= -1
  long k = (n + 1) / 2;
  long m = -k;
  mpz_class den = 1;
  for (long j = 2 * m - 1; j > 1; j -= 2) den *= j;
  mpq_class r(m % 2 == 0 ? 1 : -1, 1);
  r /= den;
  return r;
}

mpq_class factorial(long n) {
  if (n < 0) throw ArithmeticError("factorial of a negative integer");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return mpq_class(r);
}

mpq_class binomial(long n, long k) {
  if (k < 0) return 0;
  return binomial(mpq_class(n), k);
}

mpq_class binomial(const mpq_class& r, long k) {
  if (k < 0) return 0;
  mpq_class acc = 1;
  for (long j = 0; j < k; ++j) {
    acc *= (r - j);
    acc /= (j + 1);
  }
  return acc;
}

nlohmann::json to_json(const mpq_class& q) {
  return nlohmann::json::array({q.get_num().get_str(), q.get_den().get_str()});
}

nlohmann::json to_json(const GR& x) {
  return {{"re", to_json(x.re())}, {"im", to_json(x.im())}};
}

static mpq_class q_from_json(const nlohmann::json& j) {
  mpq_class q(mpz_class(j.at(0).get<std::string>()), mpz_class(j.at(1).get<std::string>()));
  q.canonicalize();
  return q;
}

GR gr_from_json(const nlohmann::json& j) {
  return {q_from_json(j.at("re")), q_from_json(j.at("im"))};
}

}  // namespace dntau
