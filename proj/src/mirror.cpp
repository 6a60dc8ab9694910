#include "dntau/mirror.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dntau {

namespace mp = boost::multiprecision;

namespace {

mpq_class q(long n, long d) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

bool is_integer(const mpq_class& x) { return x.get_den() == 1; }

// prod_{j=0}^{k} (x + j)
mpq_class pochhammer(const mpq_class& x, int k) {
  mpq_class r = 1;
  for (int j = 0; j <= k; ++j) r *= x + j;
  return r;
}

BigComplex bc(const GR& x, unsigned bits) { return BigComplex(x, bits); }

BigFloat tolerance_for(unsigned bits) {
  PrecisionScope s(bits);
  return mp::pow(BigFloat(10), -static_cast<long>(bits / 4));
}

double as_double(const BigFloat& x) { return x.convert_to<double>(); }

// Local algebra of x1^2 x2 - x2^{N-1} + x3^2 on the basis x2^0..x2^{N-2}, x1.
struct LocalAlgebra {
  int N;
  using Elem = std::vector<mpq_class>;
  Elem zero() const { return Elem(N, 0); }
  Elem x2pow(int j) const {
    Elem e = zero();
    if (j <= N - 2) e[j] = 1;
    return e;
  }
  Elem x1() const {
    Elem e = zero();
    e[N - 1] = 1;
    return e;
  }
  // relations: x1 x2 = 0, x1^2 = (N-1) x2^{N-2}, x2^{N-1} = 0
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int p = 0; p < N; ++p) {
      if (a[p] == 0) continue;
      for (int s = 0; s < N; ++s) {
        if (b[s] == 0) continue;
        mpq_class c = a[p] * b[s];
        bool px = p == N - 1, sx = s == N - 1;
        if (px && sx) {
          r[N - 2] += c * (N - 1);
        } else if (px || sx) {
          if ((px ? s : p) == 0) r[N - 1] += c;
        } else if (p + s <= N - 2) {
          r[p + s] += c;
        }
      }
    }
    return r;
  }
  Elem scaled(Elem e, const mpq_class& c) const {
    for (auto& x : e) x *= c;
    return e;
  }
  Elem sub(Elem a, const Elem& b) const {
    for (int i = 0; i < N; ++i) a[i] -= b[i];
    return a;
  }
  Elem phi(int i) const { return i == N ? scaled(x1(), 2) : x2pow(i - 1); }
  // Hess f = f_33 (f_11 f_22 - f_12^2)
  Elem hessian() const {
    Elem f11 = scaled(x2pow(1), 2), f12 = scaled(x1(), 2);
    Elem f22 = scaled(x2pow(N - 3), -mpq_class((N - 1) * (N - 2)));
    return scaled(sub(mul(f11, f22), mul(f12, f12)), 2);
  }
  mpq_class residue(const Elem& psi) const {
    mpq_class top = hessian()[N - 2];
    if (top == 0) throw std::logic_error("Hessian has no top-degree component");
    return mpq_class(N) * psi[N - 2] / top;
  }
};

// Local algebra of f + t x2 on the same basis; x1^2 = (N-1) x2^{N-2} - t, x2^{N-1} = t x2/(N-1).
struct DeformedAlgebra {
  int N;
  mpq_class t;
  using Elem = std::vector<mpq_class>;
  Elem zero() const { return Elem(N, 0); }
  Elem x2pow(int j) const {
    Elem e = zero();
    mpq_class c = 1;
    while (j > N - 2) {
      c *= t / (N - 1);
      j -= N - 2;
    }
    e[j] = c;
    return e;
  }
  Elem x1() const {
    Elem e = zero();
    e[N - 1] = 1;
    return e;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int p = 0; p < N; ++p) {
      if (a[p] == 0) continue;
      for (int s = 0; s < N; ++s) {
        if (b[s] == 0) continue;
        mpq_class c = a[p] * b[s];
        bool px = p == N - 1, sx = s == N - 1;
        if (px && sx) {
          r[N - 2] += c * (N - 1);
          r[0] -= c * t;
        } else if (px || sx) {
          if ((px ? s : p) == 0) r[N - 1] += c;
        } else {
          Elem e = x2pow(p + s);
          for (int i = 0; i < N; ++i) r[i] += c * e[i];
        }
      }
    }
    return r;
  }
  // matrix of multiplication by a, columns = images of basis vectors
  std::vector<std::vector<mpq_class>> matrix(const Elem& a) const {
    std::vector<std::vector<mpq_class>> M(N, std::vector<mpq_class>(N));
    for (int c = 0; c < N; ++c) {
      Elem b = zero();
      b[c] = 1;
      Elem img = mul(a, b);
      for (int r = 0; r < N; ++r) M[r][c] = img[r];
    }
    return M;
  }
  Elem hessian() const {
    Elem f11 = x2pow(1), f12 = x1(), f22 = x2pow(N - 3);
    for (auto& x : f11) x *= 2;
    for (auto& x : f12) x *= 2;
    for (auto& x : f22) x *= -(N - 1) * (N - 2);
    Elem a = mul(f11, f22), b = mul(f12, f12);
    for (int i = 0; i < N; ++i) a[i] = 2 * (a[i] - b[i]);
    return a;
  }
  // sum over critical points psi(p)/Hess(p) = Tr(m_psi m_Hess^{-1})
  mpq_class residue(const Elem& psi) const {
    auto H = matrix(hessian()), P = matrix(psi);
    // solve H X = P by Gauss-Jordan
    for (int c = 0; c < N; ++c) {
      int piv = c;
      while (piv < N && H[piv][c] == 0) ++piv;
      if (piv == N) throw std::logic_error("Hessian is not invertible; t must be non-zero");
      std::swap(H[piv], H[c]);
      std::swap(P[piv], P[c]);
      mpq_class inv = 1 / H[c][c];
      for (int k = 0; k < N; ++k) {
        H[c][k] *= inv;
        P[c][k] *= inv;
      }
      for (int r = 0; r < N; ++r) {
        if (r == c || H[r][c] == 0) continue;
        mpq_class f = H[r][c];
        for (int k = 0; k < N; ++k) {
          H[r][k] -= f * H[c][k];
          P[r][k] -= f * P[c][k];
        }
      }
    }
    mpq_class tr = 0;
    for (int i = 0; i < N; ++i) tr += P[i][i];
    return tr;
  }
};

std::string side_prefix(Side s) { return s == Side::SG ? "tSG" : "tFJRW"; }

std::vector<Insertion> insertions_of_mono(const SpacePtr& sp, const Mono& m, int N) {
  std::vector<Insertion> out;
  for (size_t v = 0; v < sp->nvars(); ++v) {
    if (!m[v]) continue;
    const std::string& nm = sp->var(v).name;
    Insertion x = insertion_of(nm[1] - '0', std::stoi(nm.substr(3)), N);
    for (int e = 0; e < m[v]; ++e) out.push_back(x);
  }
  return out;
}

void require_mirror_N(int N) {
  if (N < 3) throw std::invalid_argument("mirror dictionaries need N >= 3");
}

}  // namespace

nlohmann::json MirrorConstants::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  j["h"] = h;
  j["bits"] = bits;
  j["xi"] = xi.to_string(40);
  j["eta"] = eta.to_string(40);
  j["c"] = c.to_string(40);
  j["D"] = D.get_str();
  for (int i = 1; i <= N; ++i) {
    nlohmann::json e;
    e["i"] = i;
    e["star"] = star(i);
    e["m"] = m[i];
    e["rho"] = rho[i].to_string(40);
    e["deg"] = deg[i].get_str();
    e["theta"] = {theta[i].first.get_str(), theta[i].second.get_str()};
    j["slots"].push_back(e);
  }
  return j;
}

MirrorConstants mirror_constants(int N, unsigned bits) {
  require_mirror_N(N);
  MirrorConstants mc;
  mc.N = N;
  mc.h = 2 * N - 2;
  mc.bits = bits;
  const int h = mc.h;
  mc.xi = exp_i_pi(q(1, h), bits);
  mc.eta = exp_i_pi(q(2, h), bits);
  mc.c = bc(GR::i(), bits) / sqrt(BigComplex(GR(2 * h), bits)) * pow(BigComplex(GR(2), bits), q(-(N - 2), h));
  mc.m.assign(N + 1, 0);
  mc.rho.assign(N + 1, BigComplex(bits));
  mc.deg.assign(N + 1, 0);
  mc.theta.assign(N + 1, {0, 0});
  for (int i = 1; i <= N; ++i) {
    mc.m[i] = i < N ? 2 * i - 1 : N - 1;
    mc.rho[i] = bc(-GR::i(), bits) * pow(mc.xi, static_cast<long>(mc.m[i]));
    mc.deg[i] = i < N ? q(i - 1, N - 1) : q(N - 2, 2 * N - 2);
    mc.theta[i] = i < N ? std::make_pair(q(2 * i - 1, h), q(1, 2)) : std::make_pair(mpq_class(0), mpq_class(0));
  }
  mc.D = 1 - q(2, h);
  return mc;
}

CheckReport verify_mirror_constants(const MirrorConstants& mc) {
  PrecisionScope s(mc.bits);
  CheckReport r;
  r.check = "mirror_constants";
  BigFloat tol = tolerance_for(mc.bits);
  const int N = mc.N, h = mc.h;
  // rho_N both as -i xi^{m_N} and as the exact 1
  BigFloat e_rhoN = (mc.rho[N] - bc(1, mc.bits)).abs();
  BigFloat e_rho1sq = (mc.rho[1] * mc.rho[1] + mc.eta).abs();
  BigFloat e_unit = 0;
  for (int i = 1; i <= N; ++i) e_unit = std::max(e_unit, BigFloat(mp::abs(mc.rho[i].abs() - 1)));
  BigComplex ratio = mc.rho[1] * mc.rho[1] / (mc.c * mc.c);
  BigComplex expect = pow(BigComplex(GR(2), mc.bits), 2 - q(1, N - 1)) * bc(GR(h), mc.bits) * mc.eta;
  BigFloat e_ratio = (ratio - expect).abs();
  bool star_ok = true;
  for (int i = 1; i <= N; ++i) star_ok = star_ok && mc.star(mc.star(i)) == i;
  bool pairing_ok = true;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      pairing_ok = pairing_ok && residue_pairing(N, i, j) == local_residue(N, {i, j}) &&
                   residue_pairing(N, i, j) == residue_pairing(N, j, i);
  r.data["rho_N_minus_1"] = as_double(e_rhoN);
  r.data["rho1_sq_plus_eta"] = as_double(e_rho1sq);
  r.data["rho_modulus_defect"] = as_double(e_unit);
  r.data["hbar_ratio_defect"] = as_double(e_ratio);
  r.data["star_involution"] = star_ok;
  r.data["residue_pairing_matches_local_algebra"] = pairing_ok;
  r.data["tolerance_exponent"] = -static_cast<long>(mc.bits / 4);
  r.data["constants"] = mc.to_json();
  r.pass = e_rhoN <= tol && e_rho1sq <= tol && e_unit <= tol && e_ratio <= tol && star_ok && pairing_ok;
  return r;
}

mpq_class residue_pairing(int N, int i, int j) {
  int h = 2 * N - 2;
  if (i < N && j < N) return i + j == N ? -q(1, 2 * h) : mpq_class(0);
  return i == N && j == N ? mpq_class(-1) : mpq_class(0);
}

mpq_class local_residue(int N, const std::vector<int>& slots) {
  require_mirror_N(N);
  LocalAlgebra A{N};
  LocalAlgebra::Elem e = A.x2pow(0);
  for (int s : slots) {
    if (s < 1 || s > N) throw std::invalid_argument("slot out of range");
    e = A.mul(e, A.phi(s));
  }
  return A.residue(e);
}

nlohmann::json FourPointOracle::to_json() const {
  return {{"naive", naive.get_str()}, {"flat_shift", flat_shift.get_str()}, {"flat", flat.get_str()}};
}

mpq_class deformed_residue_x2(int N, const mpq_class& t, int j) {
  require_mirror_N(N);
  DeformedAlgebra A{N, t};
  return A.residue(A.x2pow(j));
}

FourPointOracle sg_four_point_oracle(int N) {
  if (N < 4) throw std::invalid_argument("the 4-point oracle needs N >= 4");
  // both residues below are homogeneous of degree one in t; check it on t = 1, 2
  auto linear = [&](int j) {
    mpq_class r1 = deformed_residue_x2(N, 1, j), r2 = deformed_residue_x2(N, 2, j);
    if (r2 != 2 * r1) throw std::logic_error("deformed residue is not linear in t");
    return r1;
  };
  mpq_class top = deformed_residue_x2(N, 1, N - 2);
  if (top != local_residue(N, {N - 1}) || deformed_residue_x2(N, 1, 0) != 0)
    throw std::logic_error("deformed residues disagree with the undeformed pairing");
  FourPointOracle o;
  o.naive = linear(2 * N - 4);  // x2 * x2^{N-3} * x2^{N-2}
  // d_{t_{N-1}} f = x2^{N-2} + c t; Res((x2^{N-2} + c t)^2) = 0 to first order fixes c
  mpq_class c = -linear(2 * N - 4) / (2 * top);
  o.flat_shift = c * top;  // c * Res(x2 * x2^{N-3})
  o.flat = o.naive + o.flat_shift;
  return o;
}

Side parse_side(const std::string& s) {
  if (s == "sg" || s == "SG") return Side::SG;
  if (s == "fjrw" || s == "FJRW") return Side::FJRW;
  throw std::invalid_argument("side must be sg or fjrw");
}

std::string side_name(Side s) { return s == Side::SG ? "sg" : "fjrw"; }

std::vector<Insertion> parse_insertions(const std::string& text, int N, Side side) {
  std::vector<Insertion> out;
  std::stringstream ss(text);
  std::string tok;
  auto fail = [&](const std::string& t) { throw std::invalid_argument("bad insertion '" + t + "'"); };
  auto number = [&](const std::string& t, const std::string& whole) {
    if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) fail(whole);
    return std::stoi(t);
  };
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) fail(tok);
    Insertion x;
    std::string body = tok;
    if (auto p = tok.find(':'); p != std::string::npos) {
      body = tok.substr(0, p);
      x.k = number(tok.substr(p + 1), tok);
    }
    if (side == Side::FJRW) {
      if (body.size() < 2 || body[0] != 'e') fail(tok);
      int j = number(body.substr(1), tok);
      if (j == 0) {
        x.slot = N;
      } else if (j % 2 == 1 && j <= 2 * N - 3) {
        x.slot = (j + 1) / 2;
      } else {
        fail(tok);
      }
    } else {
      if (body == "1") {
        x.slot = 1;
      } else if (body == "x2") {
        x.slot = 2;
      } else if (body.rfind("x2^", 0) == 0) {
        x.slot = number(body.substr(3), tok) + 1;
      } else if (body.rfind("phi", 0) == 0) {
        x.slot = number(body.substr(3), tok);
      } else {
        fail(tok);
      }
      if (x.slot < 1 || x.slot > N || (body[0] == 'x' && x.slot > N - 1)) fail(tok);
    }
    out.push_back(x);
  }
  if (out.empty()) throw std::invalid_argument("no insertions given");
  return out;
}

std::string insertion_label(const Insertion& x, int N, Side side) {
  std::string s = side == Side::FJRW ? "e" + std::to_string(x.slot == N ? 0 : 2 * x.slot - 1)
                                     : "phi" + std::to_string(x.slot);
  if (x.k) s += ":" + std::to_string(x.k);
  return s;
}

std::pair<int, int> bkp_time(const Insertion& x, int N) {
  if (x.slot < 1 || x.slot > N || x.k < 0) throw std::invalid_argument("bad insertion");
  if (x.slot == N) return {2, 2 * x.k + 1};
  return {1, (2 * N - 2) * x.k + 2 * x.slot - 1};
}

Insertion insertion_of(int a, int m, int N) {
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("BKP times have odd positive index");
  if (a == 2) return {N, (m - 1) / 2};
  // (m+1)/2 = (N-1) k + s, 1 <= s <= N-1
  int l1 = (m + 1) / 2;
  int k = (l1 - 1) / (N - 1);
  return {l1 - (N - 1) * k, k};
}

BigComplex dictionary_factor(const MirrorConstants& mc, Side side, const Insertion& x) {
  const int N = mc.N, h = mc.h;
  const unsigned b = mc.bits;
  PrecisionScope s(b);
  BigComplex I = bc(GR::i(), b);
  if (side == Side::SG) {
    if (x.slot < N)
      return I * mc.rho[x.slot] / (bc(GR(h), b) * mc.rho[1]) / bc(GR(pochhammer(q(mc.m[x.slot], h), x.k)), b);
    return I * mc.rho[N] / mc.rho[1] / bc(GR(pochhammer(q(1, 2), x.k)), b);
  }
  BigComplex base = pow(BigComplex(GR(2), b), q(-1, h)) * mc.xi;
  BigComplex f = pow(base, static_cast<long>(mc.m[x.slot] - 1)) / bc(GR(pochhammer(q(mc.m[x.slot], h), x.k)), b);
  if (x.slot < N) return I / bc(GR(h), b) * f;
  return bc(GR(q(-1, h)), b) * f;
}

BigComplex side_hbar(const MirrorConstants& mc, Side side) {
  BigComplex sg = mc.rho[1] * mc.rho[1];
  return side == Side::SG ? sg : sg / (mc.c * mc.c);
}

nlohmann::json SelectionRules::to_json() const {
  return {{"dimension_sum", dimension_sum.get_str()},
          {"genus_from_dimension", genus_solution.get_str()},
          {"dimension", dimension},
          {"euler", euler},
          {"euler_defects", {euler1.get_str(), euler2.get_str()}},
          {"stable", stable},
          {"violated", violated}};
}

SelectionRules selection_rules(int N, const std::vector<Insertion>& ins, int g) {
  require_mirror_N(N);
  const int h = 2 * N - 2;
  const long m = static_cast<long>(ins.size());
  mpq_class D = 1 - q(2, h);
  SelectionRules r;
  mpq_class th1 = 0, th2 = 0;
  for (auto& x : ins) {
    if (x.slot < 1 || x.slot > N) throw std::invalid_argument("slot out of range");
    r.dimension_sum += (x.slot < N ? q(x.slot - 1, N - 1) : q(N - 2, 2 * N - 2)) + x.k;
    if (x.slot < N) {
      th1 += q(2 * x.slot - 1, h);
      th2 += q(1, 2);
    }
  }
  r.genus_solution = (r.dimension_sum - m + 3 - D) / (3 - D);
  r.dimension = r.dimension_sum == 3 * g - 3 + m + D * (1 - g);
  r.euler1 = q(2 * g - 2 + m, h) - th1;
  r.euler2 = q(2 * g - 2 + m, 2) - th2;
  r.euler = is_integer(r.euler1) && is_integer(r.euler2);
  r.stable = g >= 0 && m >= 1 && 2 * g - 2 + m > 0;
  if (!r.stable) r.violated = "stability";
  else if (!r.dimension) r.violated = "dimension";
  else if (!r.euler) r.violated = "euler";
  return r;
}

int dimension_genus(int N, const std::vector<Insertion>& ins) {
  SelectionRules r = selection_rules(N, ins, 0);
  if (!is_integer(r.genus_solution) || r.genus_solution < 0) return -1;
  return static_cast<int>(r.genus_solution.get_num().get_si());
}

nlohmann::json Correlator::to_json(int N) const {
  nlohmann::json j;
  j["side"] = side_name(side);
  j["g"] = g;
  for (auto& x : insertions) j["insertions"].push_back(insertion_label(x, N, side));
  j["value"] = value.to_string(60);
  j["forbidden"] = forbidden;
  j["selection_rules"] = rules.to_json();
  return j;
}

Correlator extract_correlator(const TauSeries& tau, const SparseSeries& log_tau, const MirrorConstants& mc, Side side,
                              int g, std::vector<Insertion> ins) {
  if (tau.N != mc.N) throw std::invalid_argument("tau and mirror constants disagree on N");
  std::sort(ins.begin(), ins.end());
  PrecisionScope ps(mc.bits);
  Correlator c;
  c.side = side;
  c.g = g;
  c.insertions = ins;
  c.rules = selection_rules(mc.N, ins, g);
  c.value = BigComplex(mc.bits);
  const SpacePtr& sp = tau.t.space();
  Mono mono = mono_zero();
  long weight = 0;
  for (auto& x : ins) {
    auto [a, m] = bkp_time(x, mc.N);
    weight += m;
    if (weight > tau.W) throw std::invalid_argument("insertions exceed the weight window of tau");
    mono[time_index(sp, a, m)] += 1;
  }
  // at fixed hbar a monomial collects every genus the dimension constraint admits
  int admitted = 0;
  for (int gg = 0; gg <= 3 + static_cast<int>(ins.size()) + static_cast<int>(tau.W); ++gg)
    if (selection_rules(mc.N, ins, gg).dimension) ++admitted;
  if (admitted > 1) throw std::logic_error("genus is ambiguous for this insertion list");
  if (!c.rules.admissible()) {
    c.forbidden = true;
    return c;
  }
  BigComplex v(log_tau.coeff(mono), mc.bits);
  std::map<Insertion, int> mult;
  for (auto& x : ins) mult[x] += 1;
  for (auto& [x, n] : mult) {
    v = v * pow(dictionary_factor(mc, side, x), static_cast<long>(n));
    v = v * bc(GR(factorial(n)), mc.bits);
  }
  c.value = v * pow(side_hbar(mc, side), static_cast<long>(1 - g));
  return c;
}

NumericSeries to_side_variables(const TauSeries& tau, const MirrorConstants& mc, Side side) {
  PrecisionScope ps(mc.bits);
  const SpacePtr& sp = tau.t.space();
  NumericSeries out;
  std::vector<BigComplex> fac;
  for (size_t v = 0; v < sp->nvars(); ++v) {
    const std::string& nm = sp->var(v).name;
    Insertion x = insertion_of(nm[1] - '0', std::stoi(nm.substr(3)), mc.N);
    out.vars.push_back(side_prefix(side) + "_" + std::to_string(x.k) + "_" + std::to_string(x.slot));
    fac.push_back(dictionary_factor(mc, side, x));
  }
  for (auto& [m, c] : tau.t.terms()) {
    BigComplex x(c, mc.bits);
    for (size_t v = 0; v < sp->nvars(); ++v)
      if (m[v]) x = x * pow(fac[v], static_cast<long>(m[v]));
    out.terms.emplace_back(m, x);
  }
  return out;
}

NumericSeries from_side_variables(const NumericSeries& s, const MirrorConstants& mc, Side side) {
  PrecisionScope ps(mc.bits);
  NumericSeries out;
  std::vector<BigComplex> fac;
  const std::string pre = side_prefix(side) + "_";
  for (auto& nm : s.vars) {
    if (nm.rfind(pre, 0) != 0) throw std::invalid_argument("series is not in " + side_name(side) + " variables");
    auto rest = nm.substr(pre.size());
    auto us = rest.find('_');
    Insertion x{std::stoi(rest.substr(us + 1)), std::stoi(rest.substr(0, us))};
    auto [a, m] = bkp_time(x, mc.N);
    out.vars.push_back("t" + std::to_string(a) + "_" + std::to_string(m));
    fac.push_back(dictionary_factor(mc, side, x));
  }
  for (auto& [m, c] : s.terms) {
    BigComplex x = c;
    for (size_t v = 0; v < fac.size(); ++v)
      if (m[v]) x = x / pow(fac[v], static_cast<long>(m[v]));
    out.terms.emplace_back(m, x);
  }
  return out;
}

CheckReport verify_dictionaries(const TauSeries& tau, const MirrorConstants& mc) {
  PrecisionScope ps(mc.bits);
  CheckReport r;
  r.check = "mirror_dictionaries";
  BigFloat tol = tolerance_for(mc.bits);
  BigFloat worst_round = 0;
  for (Side side : {Side::SG, Side::FJRW}) {
    NumericSeries back = from_side_variables(to_side_variables(tau, mc, side), mc, side);
    for (auto& [m, x] : back.terms) {
      BigComplex exact(tau.t.coeff(m), mc.bits);
      worst_round = std::max(worst_round, BigFloat((x - exact).abs() / exact.abs()));
    }
  }
  // Mir: phi_i -> 2^{(i-1)/(N-1)} e_{2i-1}, phi_N -> -h i 2^{(N-2)/(2N-2)} e_0
  BigFloat worst_mir = 0;
  const SpacePtr& sp = tau.t.space();
  for (size_t v = 0; v < sp->nvars(); ++v) {
    const std::string& nm = sp->var(v).name;
    Insertion x = insertion_of(nm[1] - '0', std::stoi(nm.substr(3)), mc.N);
    BigComplex mir = x.slot < mc.N ? pow(BigComplex(GR(2), mc.bits), q(x.slot - 1, mc.N - 1))
                                   : bc(GR(0, -mc.h), mc.bits) * pow(BigComplex(GR(2), mc.bits), q(mc.N - 2, 2 * mc.N - 2));
    BigComplex sg = dictionary_factor(mc, Side::SG, x), fj = dictionary_factor(mc, Side::FJRW, x);
    worst_mir = std::max(worst_mir, BigFloat((fj * mir - sg).abs() / sg.abs()));
  }
  r.data["round_trip_relative_error"] = as_double(worst_round);
  r.data["mir_composition_relative_error"] = as_double(worst_mir);
  r.data["tolerance_exponent"] = -static_cast<long>(mc.bits / 4);
  r.pass = worst_round <= tol && worst_mir <= tol;
  return r;
}

CheckReport verify_selection_rules(const TauSeries& tau, const MirrorConstants& mc) {
  CheckReport r;
  r.check = "selection_rules";
  SparseSeries lt = log(tau.t);
  const SpacePtr& sp = tau.t.space();
  std::unordered_map<Mono, GR, MonoHash> coeff;
  for (auto& [m, c] : lt.terms()) coeff.emplace(m, c);
  // enumerate every monomial of the window
  std::vector<int> wts;
  for (size_t v = 0; v < sp->nvars(); ++v) wts.push_back(std::stoi(sp->var(v).name.substr(3)));
  long forbidden = 0, forbidden_nonzero = 0, admissible = 0, admissible_nonzero = 0;
  nlohmann::json witnesses = nlohmann::json::array();
  Mono cur = mono_zero();
  std::function<void(size_t, long)> rec = [&](size_t v, long left) {
    if (v == wts.size()) {
      if (cur == mono_zero()) return;
      auto ins = insertions_of_mono(sp, cur, mc.N);
      int g = dimension_genus(mc.N, ins);
      bool ok = g >= 0 && selection_rules(mc.N, ins, g).admissible();
      auto it = coeff.find(cur);
      bool nz = it != coeff.end() && !it->second.is_zero();
      if (ok) {
        ++admissible;
        admissible_nonzero += nz;
      } else {
        ++forbidden;
        if (nz) {
          ++forbidden_nonzero;
          if (witnesses.size() < 5) {
            nlohmann::json w;
            for (auto& x : ins) w.push_back(insertion_label(x, mc.N, Side::FJRW));
            witnesses.push_back(w);
          }
        }
      }
      return;
    }
    for (int e = 0; static_cast<long>(e) * wts[v] <= left; ++e) {
      cur[v] = static_cast<int16_t>(e);
      rec(v + 1, left - static_cast<long>(e) * wts[v]);
    }
    cur[v] = 0;
  };
  rec(0, tau.W);
  r.data["weight"] = tau.W;
  r.data["forbidden_monomials"] = forbidden;
  r.data["forbidden_nonzero"] = forbidden_nonzero;
  r.data["admissible_monomials"] = admissible;
  r.data["admissible_nonzero"] = admissible_nonzero;
  r.data["witnesses"] = witnesses;
  r.pass = forbidden_nonzero == 0;
  return r;
}

CheckReport verify_three_point(const TauSeries& tau, const MirrorConstants& mc, double tol) {
  PrecisionScope ps(mc.bits);
  CheckReport r;
  r.check = "three_point";
  SparseSeries lt = log(tau.t);
  const int N = mc.N;
  BigFloat worst = 0;
  long tested = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 1; i <= N; ++i)
    for (int j = i; j <= N; ++j)
      for (int k = j; k <= N; ++k) {
        std::vector<Insertion> ins{{i, 0}, {j, 0}, {k, 0}};
        long w = 0;
        for (auto& x : ins) w += bkp_time(x, N).second;
        if (w > tau.W) continue;
        // SG: Res(phi_i phi_j phi_k); FJRW: 1 for admissible triples without e_0, <e0,e0,e1> = -1/(N-1)
        GR sg = local_residue(N, {i, j, k});
        GR fj = 0;
        if (i == 1 && j == N && k == N) fj = GR(q(-1, N - 1));
        else if (k < N && selection_rules(N, ins, 0).dimension) fj = 1;
        for (auto [side, expect] : {std::pair<Side, GR>{Side::SG, sg}, {Side::FJRW, fj}}) {
          Correlator c = extract_correlator(tau, lt, mc, side, 0, ins);
          BigFloat err = (c.value - BigComplex(expect, mc.bits)).abs();
          worst = std::max(worst, err);
          ++tested;
          if (!expect.is_zero() || err > tol)
            rows.push_back({{"insertions", c.to_json(N)["insertions"]}, {"side", side_name(side)},
                            {"expected", expect.to_string()}, {"error", as_double(err)}});
        }
      }
  r.data["tested"] = tested;
  r.data["max_error"] = as_double(worst);
  r.data["tolerance"] = tol;
  r.data["nonzero_rows"] = rows;
  r.pass = tested > 0 && worst <= tol;
  return r;
}

CheckReport verify_correlator(const TauSeries& tau, const MirrorConstants& mc, Side side, int g,
                              const std::vector<Insertion>& ins, const GR& expected, double tol) {
  PrecisionScope ps(mc.bits);
  CheckReport r;
  r.check = "correlator";
  Correlator c = extract_correlator(tau, log(tau.t), mc, side, g, ins);
  BigFloat err = (c.value - BigComplex(expected, mc.bits)).abs();
  r.data = c.to_json(mc.N);
  r.data["expected"] = expected.to_string();
  r.data["abs_error"] = as_double(err);
  r.data["tolerance"] = tol;
  r.data["bits"] = mc.bits;
  r.pass = err <= tol;
  return r;
}

}  // namespace dntau
