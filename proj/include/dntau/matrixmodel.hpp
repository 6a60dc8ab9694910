#pragma once

#include <string>
#include <vector>

#include "dntau/bigcomplex.hpp"
#include "dntau/report.hpp"
#include "dntau/tau.hpp"

namespace dntau {

// det(X (x) I + I (x) X) = prod 2x_i prod_{i<j} (x_i+x_j)^2 and
// det(X (x) I - I (x) Y) / det(X (x) I + I (x) Y) = prod (x_i-y_j)/(x_i+y_j),
// both checked as exact polynomial identities on the Kronecker matrices.
CheckReport verify_det_identities(int N);

struct HcizResult {
  double quadrature = 0;
  double formula = 0;  // C(N) det(e^{-a_i b_j}) / (Delta(a) Delta(b))
  double constant = 0;
};

// Integral over U(N) (Haar, total mass 1) of exp(-Tr U A U^+ B).
double hciz_quadrature(const std::vector<double>& A, const std::vector<double>& B);
double hciz_determinant_ratio(const std::vector<double>& A, const std::vector<double>& B);
// N = 1 or 2; C(N) is fitted on a calibration pair and reused on (A, B).
CheckReport verify_hciz(int N, const std::vector<double>& A, const std::vector<double>& B, double rel_tol = 1e-8);

struct WatsonTask {
  int h = 2;
  long k = 0;
  double z = 3;
  unsigned bits = 256;
};

// (z/sqrt(pi)) * integral_0^inf (-iy)^k exp(-z^2 y - y^{h+1}/(h+1)) y^{-1/2} dy; needs h = 2 mod 4.
BigComplex watson_quadrature(const WatsonTask& t);
// Partial sum of the first n_terms non-zero terms of Psi_k^{(2)}(z) and the first omitted term.
std::pair<BigComplex, BigComplex> watson_partial_sum(const WatsonTask& t, int n_terms);
CheckReport quadrature_vs_asymptotics(const WatsonTask& t, int n_terms);

// (zw/2pi) * double integral over (R_+)^2 of (x-y)/(x+y) exp(-w^2 x - z^2 y) dx dy / sqrt(xy)
double int_sing_quadrature(double z, double w);
CheckReport verify_int_sing(double z, double w, double tol = 1e-10);

// (1/2pi) * integral over R^2 of exp(-X^2-Y^2) X^{2k} Y^{2l}, numerically.
double gaussian_double_moment_quadrature(long k, long l);

// Symbolic normalization prefactor, C left undetermined.
nlohmann::json normalization_report(const Params& p, const MiwaConfig& cfg);

}  // namespace dntau
