#pragma once

#include <string>
#include <vector>

#include "dntau/laurent.hpp"
#include "dntau/operators.hpp"
#include "dntau/report.hpp"
#include "dntau/twopoint.hpp"

namespace dntau {

// Phase f(x) = x^{2h+2} - (h+1) x^2 at its two critical points.
struct SaddleData {
  int h = 2;
  mpq_class xi[2];    // critical points, component 1 and 2
  mpq_class u[2];     // critical values
  mpq_class c_sq[2];  // c_a^2; c_1 = i sqrt(2h(h+1)), c_2 = sqrt(h+1)
  nlohmann::json to_json() const;
};

SaddleData saddle_data(const Params& p);
// f'(xi) = 0, f(xi) = u and the quadratic Taylor coefficient equals -c^2, exactly.
CheckReport verify_saddle(const Params& p);

// Psi_k^{(a)} to z^{-order} from the integral representation: Gaussian at y = iz
// for a = 1, Watson at y = 0 for a = 2.
Laurent expand_1d(int a, long k, const Params& p, long order);

// Formal expansion of the double integral with kernel (x-y)/(x+y).  The
// kernel multiple and regular part use the same convention as build_twopoint;
// (1,1) is produced in the |z|>|w| region ring and then split.
TwoPoint expand_2d(int a, int b, const Params& p, long T);

// (1/2pi) * integral of exp(-X^2-Y^2) X^{2k} Y^{2l} over R^2
mpq_class gaussian_double_moment(long k, long l);

// Constant-kernel part of the (2,2) integral, evaluated exactly as (1/2) K.
SparseSeries int_sing_series(long T);

// Check expand_2d against build_twopoint for all three pairs, plus expand_1d
// against the basis for |k| <= kmax, on a window of `orders` correction orders.
CheckReport verify_double_integrals(const Params& p, long orders, long kmax = 5);

// I_p(lambda) up to a common constant, as a series in mu = 1/lambda with
// exponents on the half-integer lattice.  a = 1 strips the e^{-h lambda} factor.
SparseSeries ip_series(int a, long p, const Params& par, long B);
// (lambda d/dlambda + (2p+1)/(2h+2)) I_p = -lambda h I_{p+1}
CheckReport verify_Ip_relation(int a, long p_lo, long p_hi, const Params& par, long order);

}  // namespace dntau
