#include "dntau/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace dntau {

Laurent Laurent::monomial(long n, const GR& c, long floor) {
  Laurent r(floor);
  r.add(n, c);
  return r;
}

bool Laurent::is_zero() const {
  for (auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

long Laurent::top() const {
  for (size_t i = c_.size(); i-- > 0;)
    if (!c_[i].is_zero()) return lo_ + static_cast<long>(i);
  throw SeriesError("top() of a zero series");
}

long Laurent::bottom() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return lo_ + static_cast<long>(i);
  throw SeriesError("bottom() of a zero series");
}

GR Laurent::get(long n) const {
  if (n < floor_) throw SeriesError("coefficient of z^" + std::to_string(n) + " is below the truncation floor " +
                                    std::to_string(floor_));
  if (c_.empty() || n < lo_ || n >= lo_ + static_cast<long>(c_.size())) return 0;
  return c_[n - lo_];
}

void Laurent::add(long n, const GR& c) {
  if (n < floor_ || c.is_zero()) return;
  if (c_.empty()) {
    lo_ = n;
    c_.assign(1, c);
    return;
  }
  if (n < lo_) {
    c_.insert(c_.begin(), lo_ - n, GR());
    lo_ = n;
  } else if (n >= lo_ + static_cast<long>(c_.size())) {
    c_.resize(n - lo_ + 1);
  }
  c_[n - lo_] += c;
}

void Laurent::set(long n, const GR& c) {
  if (n < floor_) return;
  GR old = c_.empty() || n < lo_ || n >= lo_ + static_cast<long>(c_.size()) ? GR() : c_[n - lo_];
  add(n, c - old);
}

void Laurent::normalize() {
  size_t a = 0, b = c_.size();
  while (a < b && c_[a].is_zero()) ++a;
  while (b > a && c_[b - 1].is_zero()) --b;
  if (a == b) {
    c_.clear();
    lo_ = 0;
    return;
  }
  c_ = std::vector<GR>(c_.begin() + a, c_.begin() + b);
  lo_ += static_cast<long>(a);
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

static Laurent combine(const Laurent& a, const Laurent& b, bool sub) {
  Laurent r(std::max(a.floor(), b.floor()));
  a.for_each([&](long n, const GR& c) { r.add(n, c); });
  b.for_each([&](long n, const GR& c) { r.add(n, sub ? -c : c); });
  return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) { return combine(a, b, false); }
Laurent operator-(const Laurent& a, const Laurent& b) { return combine(a, b, true); }

Laurent operator*(const GR& c, const Laurent& a) {
  Laurent r(a.floor());
  if (c.is_zero()) return r;
  r = a;
  for (auto& x : r.c_) x *= c;
  return r;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return Laurent(std::max(a.floor(), b.floor()));
  long fa = a.exact() ? Laurent::kExact : a.floor() + b.top();
  long fb = b.exact() ? Laurent::kExact : b.floor() + a.top();
  Laurent r(std::max(fa, fb));
  a.for_each([&](long n, const GR& x) {
    b.for_each([&](long m, const GR& y) {
      if (n + m >= r.floor()) r.add(n + m, x * y);
    });
  });
  r.normalize();
  return r;
}

Laurent Laurent::shifted(long p) const {
  Laurent r = *this;
  r.lo_ += p;
  if (!exact()) r.floor_ += p;
  return r;
}

Laurent Laurent::truncated(long f) const {
  if (f < floor_) throw SeriesError("cannot lower the truncation floor");
  Laurent r(f);
  for_each([&](long n, const GR& c) { r.add(n, c); });
  return r;
}

Laurent Laurent::with_floor(long f) const {
  Laurent r(f);
  for_each([&](long n, const GR& c) { r.add(n, c); });
  return r;
}

bool Laurent::agrees(const Laurent& o, long lo) const { return first_difference(o, lo).empty(); }

std::string Laurent::first_difference(const Laurent& o, long lo) const {
  long f = std::max({floor_, o.floor_, lo});
  long hi = LONG_MIN;
  if (!is_zero()) hi = top();
  if (!o.is_zero()) hi = std::max(hi, o.top());
  for (long n = hi; n >= f && hi != LONG_MIN; --n) {
    GR x = get(n), y = o.get(n);
    if (!(x == y)) return "z^" + std::to_string(n) + ": " + x.to_string() + " vs " + y.to_string();
  }
  return {};
}

SparseSeries Laurent::to_series(const SpacePtr& sp, int var, int sign) const {
  std::vector<SparseSeries::Term> terms;
  for_each([&](long n, const GR& c) { terms.emplace_back(mono_unit(var, static_cast<int>(sign * n)), c); });
  return SparseSeries::from_terms(sp, std::move(terms));
}

nlohmann::json Laurent::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for_each([&](long n, const GR& c) { terms.push_back(nlohmann::json::array({n, dntau::to_json(c)})); });
  nlohmann::json j;
  j["floor"] = exact() ? nlohmann::json(nullptr) : nlohmann::json(floor_);
  j["terms"] = terms;
  return j;
}

std::string Laurent::to_string(const char* var) const {
  std::ostringstream os;
  bool first = true;
  for_each([&](long n, const GR& c) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (n != 0) os << "*" << var << "^" << n;
  });
  if (first) os << "0";
  if (!exact()) os << " + O(" << var << "^" << (floor_ - 1) << ")";
  return os.str();
}

}  // namespace dntau
