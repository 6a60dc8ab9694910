#include "dntau/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dntau/parallel.hpp"

namespace dntau {

size_t MonoHash::operator()(const Mono& m) const noexcept {
  uint64_t h = 1469598103934665603ull;
  for (int16_t x : m) {
    h ^= static_cast<uint16_t>(x);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

bool mono_less(const Mono& a, const Mono& b) {
  long da = 0, db = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db;
  return a < b;
}

Mono mono_zero() {
  Mono m{};
  return m;
}

Mono mono_unit(int v, int e) {
  Mono m{};
  m[v] = static_cast<int16_t>(e);
  return m;
}

// ---------------------------------------------------------------- Space

Space::Space(std::vector<Variable> vars, std::vector<LinearBound> bounds, std::string region)
    : vars_(std::move(vars)), bounds_(std::move(bounds)), region_(std::move(region)) {
  if (vars_.size() > static_cast<size_t>(kMaxVars)) throw SeriesError("too many variables");
  for (auto& b : bounds_) {
    if (b.coeffs.size() != vars_.size()) throw SeriesError("bound arity mismatch");
  }
  for (auto& v : vars_) {
    if (v.lattice < 1) throw SeriesError("lattice constant must be positive");
  }
}

SpacePtr Space::graded(const std::vector<std::string>& names, const std::vector<int>& weights, long W) {
  std::vector<Variable> vars;
  for (auto& n : names) vars.push_back({n, 1});
  return std::make_shared<Space>(vars, std::vector<LinearBound>{{weights, W}});
}

SpacePtr Space::polynomial(const std::vector<std::string>& names) {
  std::vector<Variable> vars;
  for (auto& n : names) vars.push_back({n, 1});
  return std::make_shared<Space>(vars, std::vector<LinearBound>{});
}

SpacePtr Space::region(const std::vector<std::vector<std::string>>& blocks, long W) {
  std::vector<Variable> vars;
  std::vector<std::pair<size_t, size_t>> ranges;
  std::string tag;
  for (auto& b : blocks) {
    ranges.push_back({vars.size(), vars.size() + b.size()});
    for (size_t i = 0; i < b.size(); ++i) {
      vars.push_back({b[i], 1});
      tag += (i ? ">" : (tag.empty() ? "|" : ";|")) + b[i];
    }
    if (!b.empty()) tag += "|";
  }
  size_t n = vars.size();
  // one form per choice of prefix length in every non-empty block
  std::vector<LinearBound> bounds;
  std::vector<size_t> choice(ranges.size(), 1);
  std::vector<size_t> live;
  for (size_t k = 0; k < ranges.size(); ++k)
    if (ranges[k].second > ranges[k].first) live.push_back(k);
  if (live.empty()) return std::make_shared<Space>(vars, bounds, "region" + tag);
  while (true) {
    std::vector<int> c(n, 0);
    for (size_t k : live)
      for (size_t i = ranges[k].first; i < ranges[k].first + choice[k]; ++i) c[i] = 1;
    bounds.push_back({c, W});
    size_t k = 0;
    for (; k < live.size(); ++k) {
      size_t b = live[k];
      if (choice[b] < ranges[b].second - ranges[b].first) {
        ++choice[b];
        break;
      }
      choice[b] = 1;
    }
    if (k == live.size()) break;
  }
  return std::make_shared<Space>(vars, bounds, "region" + tag);
}

int Space::index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<int>(i);
  return -1;
}

int Space::require(const std::string& name) const {
  int i = index(name);
  if (i < 0) throw SeriesError("unknown variable " + name);
  return i;
}

long Space::form(size_t j, const Mono& m) const {
  long s = 0;
  const auto& c = bounds_[j].coeffs;
  for (size_t i = 0; i < c.size(); ++i) s += static_cast<long>(c[i]) * m[i];
  return s;
}

bool Space::admits(const Mono& m) const {
  for (size_t j = 0; j < bounds_.size(); ++j)
    if (form(j, m) > bounds_[j].bound) return false;
  return true;
}

bool Space::same_as(const Space& o) const {
  if (this == &o) return true;
  if (vars_.size() != o.vars_.size() || bounds_.size() != o.bounds_.size() || region_ != o.region_) return false;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name != o.vars_[i].name || vars_[i].lattice != o.vars_[i].lattice) return false;
  for (size_t j = 0; j < bounds_.size(); ++j)
    if (bounds_[j].coeffs != o.bounds_[j].coeffs || bounds_[j].bound != o.bounds_[j].bound) return false;
  return true;
}

static void check_compatible(const SparseSeries& a, const SparseSeries& b) {
  if (!a.space() || !b.space()) throw SeriesError("series without a space");
  if (!a.space()->same_as(*b.space())) {
    if (a.space()->region_tag() != b.space()->region_tag())
      throw SeriesError("refusing to mix regions " + a.space()->region_tag() + " and " + b.space()->region_tag());
    for (size_t i = 0; i < std::min(a.space()->nvars(), b.space()->nvars()); ++i)
      if (a.space()->var(i).lattice != b.space()->var(i).lattice) throw SeriesError("incompatible lattices");
    throw SeriesError("incompatible variable sets or truncation data");
  }
}

// ---------------------------------------------------------------- accumulation

void TermAccumulator::add(const Mono& m, const GR& c) {
  if (c.is_zero()) return;
  auto it = map_.find(m);
  if (it == map_.end())
    map_.emplace(m, c);
  else
    it->second += c;
}

void TermAccumulator::add_product(const Mono& m, const GR& a, const GR& b) {
  auto [it, fresh] = map_.try_emplace(m);
  fma_into(it->second, a, b);
}

SparseSeries TermAccumulator::finish() {
  SparseSeries s(sp_);
  s.terms_.reserve(map_.size());
  for (auto& [m, c] : map_)
    if (!c.is_zero() && sp_->admits(m)) s.terms_.emplace_back(m, std::move(c));
  map_.clear();
  std::sort(s.terms_.begin(), s.terms_.end(), [](const auto& x, const auto& y) { return mono_less(x.first, y.first); });
  return s;
}

// ---------------------------------------------------------------- SparseSeries

SparseSeries SparseSeries::constant(SpacePtr sp, const GR& c) { return monomial(std::move(sp), mono_zero(), c); }

SparseSeries SparseSeries::monomial(SpacePtr sp, const Mono& m, const GR& c) {
  SparseSeries s(std::move(sp));
  if (!c.is_zero() && s.sp_->admits(m)) s.terms_.emplace_back(m, c);
  return s;
}

SparseSeries SparseSeries::variable(SpacePtr sp, const std::string& name, const GR& c) {
  int v = sp->require(name);
  Mono m = mono_unit(v, sp->var(v).lattice);
  return monomial(std::move(sp), m, c);
}

SparseSeries SparseSeries::from_terms(SpacePtr sp, std::vector<Term> terms) {
  SparseSeries s(std::move(sp));
  for (auto& t : terms)
    if (!t.second.is_zero() && s.sp_->admits(t.first)) s.terms_.push_back(std::move(t));
  std::sort(s.terms_.begin(), s.terms_.end(), [](const auto& x, const auto& y) { return mono_less(x.first, y.first); });
  for (size_t i = 1; i < s.terms_.size(); ++i)
    if (s.terms_[i].first == s.terms_[i - 1].first) throw SeriesError("duplicate monomial in from_terms");
  return s;
}

GR SparseSeries::coeff(const Mono& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Mono& x) { return mono_less(t.first, x); });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

GR SparseSeries::constant_term() const { return coeff(mono_zero()); }

SparseSeries SparseSeries::operator-() const {
  SparseSeries r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

static SparseSeries merge(const SparseSeries& a, const SparseSeries& b, bool subtract) {
  check_compatible(a, b);
  std::vector<SparseSeries::Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && mono_less(ia->first, ib->first))) {
      out.push_back(*ia++);
    } else if (ia == a.terms().end() || mono_less(ib->first, ia->first)) {
      out.emplace_back(ib->first, subtract ? -ib->second : ib->second);
      ++ib;
    } else {
      GR c = subtract ? ia->second - ib->second : ia->second + ib->second;
      if (!c.is_zero()) out.emplace_back(ia->first, std::move(c));
      ++ia;
      ++ib;
    }
  }
  SparseSeries r(a.space());
  return SparseSeries::from_terms(a.space(), std::move(out));
}

SparseSeries operator+(const SparseSeries& a, const SparseSeries& b) { return merge(a, b, false); }
SparseSeries operator-(const SparseSeries& a, const SparseSeries& b) { return merge(a, b, true); }

SparseSeries operator*(const GR& c, const SparseSeries& a) {
  SparseSeries r(a.space());
  if (c.is_zero()) return r;
  std::vector<SparseSeries::Term> out;
  out.reserve(a.size());
  for (auto& t : a.terms()) out.emplace_back(t.first, c * t.second);
  return SparseSeries::from_terms(a.space(), std::move(out));
}

bool operator==(const SparseSeries& a, const SparseSeries& b) {
  if (!a.space()->same_as(*b.space())) return false;
  return a.terms() == b.terms();
}

namespace {

struct Prepared {
  std::vector<const SparseSeries::Term*> terms;
  std::vector<long> forms;  // row-major: term x bound
};

Prepared prepare(const SparseSeries& s, const char* which) {
  const Space& sp = *s.space();
  size_t nb = sp.bounds().size();
  Prepared p;
  p.terms.reserve(s.size());
  for (auto& t : s.terms()) p.terms.push_back(&t);
  if (nb > 0) {
    std::stable_sort(p.terms.begin(), p.terms.end(),
                     [&](const auto* x, const auto* y) { return sp.form(0, x->first) < sp.form(0, y->first); });
  }
  p.forms.resize(p.terms.size() * nb);
  for (size_t k = 0; k < p.terms.size(); ++k)
    for (size_t j = 0; j < nb; ++j) {
      long v = sp.form(j, p.terms[k]->first);
      if (v < 0)
        throw SeriesError(std::string("operand ") + which + " has a term outside the truncation cone of " +
                          (sp.region_tag().empty() ? "the space" : sp.region_tag()));
      p.forms[k * nb + j] = v;
    }
  return p;
}

}  // namespace

SparseSeries operator*(const SparseSeries& a, const SparseSeries& b) {
  check_compatible(a, b);
  const SpacePtr& sp = a.space();
  if (a.is_zero() || b.is_zero()) return SparseSeries(sp);
  size_t nb = sp->bounds().size();
  Prepared pa = prepare(a, "a"), pb = prepare(b, "b");
  std::vector<long> bound(nb);
  for (size_t j = 0; j < nb; ++j) bound[j] = sp->bounds()[j].bound;
  size_t nv = sp->nvars();

  auto work = [&](size_t lo, size_t hi, TermAccumulator& acc) {
    for (size_t i = lo; i < hi; ++i) {
      const long* fa = nb ? &pa.forms[i * nb] : nullptr;
      const Mono& ma = pa.terms[i]->first;
      for (size_t k = 0; k < pb.terms.size(); ++k) {
        const long* fb = nb ? &pb.forms[k * nb] : nullptr;
        if (nb && fa[0] + fb[0] > bound[0]) break;
        bool ok = true;
        for (size_t j = 1; j < nb; ++j)
          if (fa[j] + fb[j] > bound[j]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        Mono m = ma;
        const Mono& mb = pb.terms[k]->first;
        for (size_t v = 0; v < nv; ++v) m[v] = static_cast<int16_t>(m[v] + mb[v]);
        acc.add_product(m, pa.terms[i]->second, pb.terms[k]->second);
      }
    }
  };

  size_t threads = worker_count();
  size_t na = pa.terms.size();
  if (threads <= 1 || na * pb.terms.size() < 200000) {
    TermAccumulator acc(sp);
    work(0, na, acc);
    return acc.finish();
  }
  std::vector<TermAccumulator> parts(threads, TermAccumulator(sp));
  parallel_for(threads, [&](size_t t) {
    size_t lo = na * t / threads, hi = na * (t + 1) / threads;
    work(lo, hi, parts[t]);
  });
  // fixed-order reduction keeps the result independent of scheduling
  SparseSeries r = parts[0].finish();
  for (size_t t = 1; t < threads; ++t) r = r + parts[t].finish();
  return r;
}

SparseSeries SparseSeries::pow(unsigned n) const {
  SparseSeries acc = constant(sp_, 1), base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

SparseSeries SparseSeries::shifted(const Mono& m, const GR& c) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  size_t nv = sp_->nvars();
  for (auto& t : terms_) {
    Mono x = t.first;
    for (size_t v = 0; v < nv; ++v) x[v] = static_cast<int16_t>(x[v] + m[v]);
    out.emplace_back(x, c * t.second);
  }
  return from_terms(sp_, std::move(out));
}

SparseSeries SparseSeries::truncated(const SpacePtr& target) const {
  if (target->nvars() != sp_->nvars()) throw SeriesError("truncated: variable count mismatch");
  for (size_t i = 0; i < sp_->nvars(); ++i)
    if (target->var(i).name != sp_->var(i).name || target->var(i).lattice != sp_->var(i).lattice)
      throw SeriesError("truncated: variable mismatch");
  std::vector<Term> out;
  for (auto& t : terms_)
    if (target->admits(t.first)) out.push_back(t);
  return from_terms(target, std::move(out));
}

SparseSeries SparseSeries::embed(const SpacePtr& target, const std::vector<int>& map) const {
  if (map.size() != sp_->nvars()) throw SeriesError("embed: map arity");
  for (size_t i = 0; i < map.size(); ++i)
    if (map[i] >= 0 && target->var(map[i]).lattice != sp_->var(i).lattice)
      throw SeriesError("embed: incompatible lattices");
  TermAccumulator acc(target);
  for (auto& t : terms_) {
    Mono m{};
    for (size_t i = 0; i < map.size(); ++i) {
      if (t.first[i] == 0) continue;
      if (map[i] < 0) throw SeriesError("embed: dropped variable has non-zero exponent");
      m[map[i]] = static_cast<int16_t>(m[map[i]] + t.first[i]);
    }
    acc.add(m, t.second);
  }
  return acc.finish();
}

SparseSeries SparseSeries::derivative(int v) const {
  int L = sp_->var(v).lattice;
  std::vector<Term> out;
  for (auto& t : terms_) {
    int e = t.first[v];
    if (e == 0) continue;
    Mono m = t.first;
    m[v] = static_cast<int16_t>(e - L);
    mpq_class f(e, L);
    f.canonicalize();
    out.emplace_back(m, GR(f) * t.second);
  }
  return from_terms(sp_, std::move(out));
}

SparseSeries SparseSeries::scale_vars(const std::vector<GR>& factors) const {
  size_t nv = sp_->nvars();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    GR c = t.second;
    for (size_t v = 0; v < nv && v < factors.size(); ++v) {
      int e = t.first[v];
      if (e == 0) continue;
      if (e % sp_->var(v).lattice != 0) throw SeriesError("scale_vars on a fractional exponent");
      c *= factors[v].pow(e / sp_->var(v).lattice);
    }
    out.emplace_back(t.first, std::move(c));
  }
  return from_terms(sp_, std::move(out));
}

SparseSeries SparseSeries::map_terms(const std::function<std::pair<Mono, GR>(const Mono&, const GR&)>& f) const {
  TermAccumulator acc(sp_);
  for (auto& t : terms_) {
    auto [m, c] = f(t.first, t.second);
    acc.add(m, c);
  }
  return acc.finish();
}

SparseSeries SparseSeries::slice(int v, int e) const {
  std::vector<Term> out;
  for (auto& t : terms_)
    if (t.first[v] == e) {
      Mono m = t.first;
      m[v] = 0;
      out.emplace_back(m, t.second);
    }
  // clearing an exponent can only lower form values when the coefficient is
  // non-negative; re-filter in the same space
  TermAccumulator acc(sp_);
  for (auto& t : out) acc.add(t.first, t.second);
  return acc.finish();
}

nlohmann::json SparseSeries::to_json() const {
  nlohmann::json vars = nlohmann::json::array(), lat = nlohmann::json::array(), terms = nlohmann::json::array();
  size_t nv = sp_->nvars();
  for (size_t i = 0; i < nv; ++i) {
    vars.push_back(sp_->var(i).name);
    lat.push_back(sp_->var(i).lattice);
  }
  for (auto& t : terms_) {
    nlohmann::json e = nlohmann::json::array();
    for (size_t i = 0; i < nv; ++i) e.push_back(t.first[i]);
    terms.push_back(nlohmann::json::array({e, dntau::to_json(t.second)}));
  }
  return {{"vars", vars}, {"lattice", lat}, {"terms", terms}};
}

std::string SparseSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.second.to_string() << ")";
    for (size_t i = 0; i < sp_->nvars(); ++i) {
      int e = t.first[i];
      if (e == 0) continue;
      int L = sp_->var(i).lattice;
      os << "*" << sp_->var(i).name;
      if (e != L) {
        if (L == 1)
          os << "^" << e;
        else
          os << "^(" << e << "/" << L << ")";
      }
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- exp / log / inverse

void require_nilpotent(const SparseSeries& f, const char* what) {
  const Space& sp = *f.space();
  for (size_t j = 0; j < sp.bounds().size(); ++j) {
    bool all = true;
    for (auto& t : f.terms())
      if (sp.form(j, t.first) < 1) {
        all = false;
        break;
      }
    if (all) return;
  }
  if (f.is_zero()) return;
  throw SeriesError(std::string(what) + ": argument is not nilpotent modulo the truncation");
}

static SparseSeries geometric_like(const SparseSeries& g, const std::function<GR(long)>& coef, long start) {
  // sum_{n>=start} coef(n) g^n, terminating by nilpotency
  SparseSeries acc(g.space());
  SparseSeries pw = start == 0 ? SparseSeries::constant(g.space(), 1) : g;
  for (long n = start; !pw.is_zero(); ++n) {
    acc += coef(n) * pw;
    pw = pw * g;
    if (n > 100000) throw SeriesError("series did not terminate");
  }
  return acc;
}

SparseSeries exp(const SparseSeries& f) {
  if (!f.constant_term().is_zero()) throw SeriesError("exp requires zero constant term");
  require_nilpotent(f, "exp");
  return geometric_like(f, [](long n) { return GR(mpq_class(1) / factorial(n)); }, 0);
}

SparseSeries log(const SparseSeries& f) {
  if (!(f.constant_term() == GR(1))) throw SeriesError("log requires constant term 1");
  SparseSeries g = f - SparseSeries::constant(f.space(), 1);
  require_nilpotent(g, "log");
  return geometric_like(g, [](long n) { return GR(mpq_class(n % 2 ? 1 : -1, n)); }, 1);
}

SparseSeries invert_unit(const SparseSeries& f) {
  GR c = f.constant_term();
  if (c.is_zero()) throw SeriesError("invert_unit requires a non-zero constant term");
  GR ci = GR(1) / c;
  SparseSeries g = ci * f - SparseSeries::constant(f.space(), 1);
  require_nilpotent(g, "invert_unit");
  return ci * geometric_like(g, [](long n) { return GR(n % 2 ? -1 : 1); }, 0);
}

SparseSeries mul_select(const SparseSeries& a, const SparseSeries& b, int v, int target) {
  check_compatible(a, b);
  const SpacePtr& sp = a.space();
  size_t nb = sp->bounds().size();
  Prepared pa = prepare(a, "a"), pb = prepare(b, "b");
  std::unordered_map<int, std::vector<size_t>> byexp;
  for (size_t k = 0; k < pb.terms.size(); ++k) byexp[pb.terms[k]->first[v]].push_back(k);
  size_t nv = sp->nvars();
  TermAccumulator acc(sp);
  for (size_t i = 0; i < pa.terms.size(); ++i) {
    auto it = byexp.find(target - pa.terms[i]->first[v]);
    if (it == byexp.end()) continue;
    const Mono& ma = pa.terms[i]->first;
    for (size_t k : it->second) {
      bool ok = true;
      for (size_t j = 0; j < nb; ++j)
        if (pa.forms[i * nb + j] + pb.forms[k * nb + j] > sp->bounds()[j].bound) {
          ok = false;
          break;
        }
      if (!ok) continue;
      Mono m = ma;
      const Mono& mb = pb.terms[k]->first;
      for (size_t x = 0; x < nv; ++x) m[x] = static_cast<int16_t>(m[x] + mb[x]);
      acc.add_product(m, pa.terms[i]->second, pb.terms[k]->second);
    }
  }
  return acc.finish();
}

}  // namespace dntau
