#pragma once

#include "dntau/report.hpp"
#include "dntau/tau.hpp"

namespace dntau {

// Space for the bilinear residue: t (both blocks), primed copies and z.
// Bounds: wt(t)+wt(t') - e_z <= W, and wt(t)+wt(t') <= W.
SpacePtr hirota_space(long W);

// exp(s * sum_k t_{a,k} z^k) * tau(t_a - s*2[z^{-1}]) with t taken from the
// primed copy when primed is set; s = +1 for (t,z), s = -1 for (t',-z).
SparseSeries vertex_action(const TauSeries& tau, int a, bool primed, int s, const SpacePtr& hs);

// Coefficients of Omega_m(tau x tau) as a series in (t, t'), truncated to
// combined weight <= window.
SparseSeries hirota_residual(const TauSeries& tau, int m, long window);

// Largest window on which every residual coefficient is exact: W - h*m.
long hirota_exact_window(const TauSeries& tau, int m);

// window < 0 selects hirota_exact_window.
CheckReport verify_hirota(const TauSeries& tau, int m, long window = -1);

}  // namespace dntau
