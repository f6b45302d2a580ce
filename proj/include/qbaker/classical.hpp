#ifndef QBAKER_CLASSICAL_HPP
#define QBAKER_CLASSICAL_HPP

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace qbaker {

// Phase-space point on the unit torus, both coordinates in [0,1).
struct TorusPoint {
  double x;
  double p;

  TorusPoint(double x_, double p_);

  // Reduces arbitrary reals mod 1 before constructing.
  static TorusPoint wrapped(double x_, double p_);
};

// Point on the universal cover R^2. Components must be finite.
struct PlanePoint {
  double x;
  double p;

  PlanePoint(double x_, double p_);
};

// Membership in the eight half-plane families:
//   l/r     : x mod 1 in [0,1/2) / [1/2,1)
//   b/t     : p mod 1 in [0,1/2) / [1/2,1)
//   e_x/o_x : x mod 2 in [0,1)   / [1,2)
//   e_p/o_p : p mod 2 in [0,1)   / [1,2)
// Exactly one of each complementary pair holds.
struct RegionFlags {
  bool in_l, in_r;
  bool in_b, in_t;
  bool in_e_x, in_o_x;
  bool in_e_p, in_o_p;
};

// Thrown by pullback_harmonic when the point sits on (or within 1e-12 of) a
// branch boundary, where the piecewise identity has no well-defined side.
class BoundaryPointError : public std::runtime_error {
 public:
  explicit BoundaryPointError(const std::string& what) : std::runtime_error(what) {}
};

// fractional part x - floor(x), in [0,1)
double frac(double v);

TorusPoint baker_map(const TorusPoint& pt);
TorusPoint baker_inverse(const TorusPoint& pt);

PlanePoint cover_map(const PlanePoint& pt);
PlanePoint cover_inverse(const PlanePoint& pt);

RegionFlags region_membership(const PlanePoint& pt);

// True when the point lies within tol of a discontinuity line of the forward
// covering map: x mod 1 near 0 or 1/2 (l/r and e_x/o_x boundaries), or p
// within tol of an integer (e_p/o_p boundaries).
bool near_region_boundary(const PlanePoint& pt, double tol = 1e-12);

// Both sides of the pullback identity for the harmonic e^{2pi i(ax+bp)}:
// lhs evaluates the harmonic at the covering-map image, rhs evaluates the
// chi-function expansion at the original point. They agree off boundaries.
struct PullbackValues {
  std::complex<double> lhs;
  std::complex<double> rhs;
};
PullbackValues pullback_harmonic(int a, int b, const PlanePoint& pt);

// steps+1 points starting at pt, each the baker image of the previous.
std::vector<TorusPoint> orbit(const TorusPoint& pt, int steps);

// CSV with header "step,x,p", 17 significant digits.
void write_orbit_csv(std::ostream& os, const std::vector<TorusPoint>& pts);

}  // namespace qbaker

#endif
