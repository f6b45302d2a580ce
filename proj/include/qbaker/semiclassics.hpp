#ifndef QBAKER_SEMICLASSICS_HPP
#define QBAKER_SEMICLASSICS_HPP

#include <string>
#include <vector>

#include "qbaker/classical.hpp"
#include "qbaker/hilbert.hpp"
#include "qbaker/propagator.hpp"

namespace qbaker {

// Minimum-uncertainty packet of width sqrt(hbar) centered at (x0, p0).
// When projected to a finite sector, hbar is tied to 1/(2 pi N).
struct CoherentParams {
  double x0;
  double p0;
  double hbar;

  CoherentParams(double x0_, double p0_, double hbar_);
  static CoherentParams for_sector(double x0_, double p0_, const HilbertConfig& cfg);
};

// phi(x) = (pi hbar)^{-1/4} e^{-(x-x0)^2/2hbar} e^{i p0 x/hbar - i p0 x0/2hbar}
Complex coherent_wavefunction(double x, const CoherentParams& cp);

// Momentum-space wavefunction of the same packet.
Complex coherent_wavefunction_momentum(double p, const CoherentParams& cp);

// c_m = (1/sqrt N) sum_k phi(m/N + k), Gaussian-tail truncated, then
// normalized. Requires cp.hbar == 1/(2 pi N).
StateVector project_to_sector(const CoherentParams& cp, const HilbertConfig& cfg);

// Doubled-space packet projections used for the even/odd localization rows:
// position representation over (Phi^{(0,0)}, Phi^{(0,1/2)}) and momentum
// representation over (PhiTilde^{(0,0)}, PhiTilde^{(1/2,0)}).
Vector project_to_doubled_position(const CoherentParams& cp, const HilbertConfig& cfg);
Vector project_to_doubled_momentum(const CoherentParams& cp, const HilbertConfig& cfg);

// <phi| U^a V^b |phi> in closed form:
//   e^{2 pi i (a x0 + b p0)} e^{-pi^2 hbar (a^2+b^2)} e^{-2 i pi^2 a b hbar}
// (tends to e^{2 pi i (a x0 + b p0)} as hbar -> 0; matches quadrature).
Complex harmonic_expectation_closed_form(int a, int b, const CoherentParams& cp);

// || projector . state ||^2
double projector_mass(const StateVector& state, const Matrix& projector);

// e^{-eps^2/hbar}/2, valid for eps/sqrt(hbar) > 1 (rejected otherwise);
// the measured packet tail beyond eps stays below (2/sqrt(pi)) times this.
double gaussian_tail_bound(double epsilon, double hbar);

struct LimitRow {
  int N;
  Complex quantum;
  Complex classical;
  double error;
};

struct LimitReport {
  int a, b;
  double x0, p0;
  std::vector<LimitRow> rows;
};

// For each N: quantum = <c| F^dag U^a V^b F |c> with c the packet projected
// at hbar = 1/(2 pi N), classical = the same expectation in the packet moved
// to the covering-map image of (x0, p0). Boundary centers are rejected.
LimitReport weak_limit_experiment(int a, int b, double x0, double p0,
                                  const std::vector<int>& n_list,
                                  PropagatorVariant variant);

// Sector inner-product kernel K(x,y) = g((x-y)/2hbar) / (2 pi hbar) with
// g(r) = (sin r / r) e^{-hbar r^2}, g(0) = 1. K -> delta(x-y) as hbar -> 0.
Complex diffraction_kernel(double x, double y, double hbar);

// One row of the projector-localization table: operator acting on a packet
// centered inside region, measured mass vs the hbar -> 0 limit.
struct LocalizationRow {
  std::string op;      // "L", "R", "B", "T", "E_x", "O_x", "E_p", "O_p"
  std::string region;  // "l", "r", "b", "t", "e_x", "o_x", "e_p", "o_p"
  double measured;
  int expected;        // 0 or 1
};

// All sixteen rows at dimension cfg.N (centers 0.3/0.7 for the period-1
// rows, 0.5/1.5 for the period-2 rows).
std::vector<LocalizationRow> localization_table(const HilbertConfig& cfg);

void write_limit_csv(std::ostream& os, const LimitReport& report);
void write_localization_csv(std::ostream& os, const std::vector<LocalizationRow>& rows);

}  // namespace qbaker

#endif
