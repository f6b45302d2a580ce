#include "qbaker/classical.hpp"

#include <cmath>
#include <ostream>

#include "qbaker/io.hpp"

namespace qbaker {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

double frac(double v) {
  double f = v - std::floor(v);
  // rounding can push v - floor(v) to 1.0 for tiny negative v
  if (f >= 1.0) f = 0.0;
  return f;
}

TorusPoint::TorusPoint(double x_, double p_) : x(x_), p(p_) {
  require_finite(x_, "x");
  require_finite(p_, "p");
  if (x < 0.0 || x >= 1.0 || p < 0.0 || p >= 1.0)
    throw std::invalid_argument("TorusPoint components must lie in [0,1)");
}

TorusPoint TorusPoint::wrapped(double x_, double p_) {
  require_finite(x_, "x");
  require_finite(p_, "p");
  return TorusPoint(frac(x_), frac(p_));
}

PlanePoint::PlanePoint(double x_, double p_) : x(x_), p(p_) {
  require_finite(x_, "x");
  require_finite(p_, "p");
}

TorusPoint baker_map(const TorusPoint& pt) {
  if (pt.x < 0.5) return TorusPoint(2.0 * pt.x, pt.p / 2.0);
  return TorusPoint(2.0 * pt.x - 1.0, pt.p / 2.0 + 0.5);
}

TorusPoint baker_inverse(const TorusPoint& pt) {
  // projection of the inverse covering map: on the torus x is always in the
  // even cell, so only the b/t branches survive
  if (pt.p < 0.5) return TorusPoint(pt.x / 2.0, 2.0 * pt.p);
  return TorusPoint(pt.x / 2.0 + 0.5, 2.0 * pt.p - 1.0);
}

RegionFlags region_membership(const PlanePoint& pt) {
  const double fx1 = frac(pt.x);
  const double fp1 = frac(pt.p);
  // period-2 fractional parts
  double fx2 = pt.x - 2.0 * std::floor(pt.x / 2.0);
  if (fx2 >= 2.0) fx2 = 0.0;
  double fp2 = pt.p - 2.0 * std::floor(pt.p / 2.0);
  if (fp2 >= 2.0) fp2 = 0.0;

  RegionFlags f{};
  f.in_l = fx1 < 0.5;
  f.in_r = !f.in_l;
  f.in_b = fp1 < 0.5;
  f.in_t = !f.in_b;
  f.in_e_x = fx2 < 1.0;
  f.in_o_x = !f.in_e_x;
  f.in_e_p = fp2 < 1.0;
  f.in_o_p = !f.in_e_p;
  return f;
}

PlanePoint cover_map(const PlanePoint& pt) {
  const RegionFlags f = region_membership(pt);
  if (f.in_l && f.in_e_p) return PlanePoint(2.0 * pt.x, pt.p / 2.0);
  if (f.in_r && f.in_e_p) return PlanePoint(2.0 * pt.x - 1.0, pt.p / 2.0 + 0.5);
  if (f.in_l && f.in_o_p) return PlanePoint(2.0 * pt.x + 1.0, pt.p / 2.0 + 0.5);
  return PlanePoint(2.0 * pt.x, pt.p / 2.0);  // r and o_p
}

PlanePoint cover_inverse(const PlanePoint& pt) {
  const RegionFlags f = region_membership(pt);
  if (f.in_e_x && f.in_b) return PlanePoint(pt.x / 2.0, 2.0 * pt.p);
  if (f.in_o_x && f.in_b) return PlanePoint(pt.x / 2.0 - 0.5, 2.0 * pt.p - 1.0);
  if (f.in_e_x && f.in_t) return PlanePoint(pt.x / 2.0 + 0.5, 2.0 * pt.p - 1.0);
  return PlanePoint(pt.x / 2.0, 2.0 * pt.p);  // o_x and t
}

bool near_region_boundary(const PlanePoint& pt, double tol) {
  // discontinuity lines of the forward covering map: the l/r boundaries
  // x in (1/2)Z and the e_p/o_p boundaries p in Z
  const double fx = frac(pt.x);
  const double fp = frac(pt.p);
  return fx < tol || fx > 1.0 - tol || std::abs(fx - 0.5) < tol ||
         fp < tol || fp > 1.0 - tol;
}

PullbackValues pullback_harmonic(int a, int b, const PlanePoint& pt) {
  if (near_region_boundary(pt))
    throw BoundaryPointError("pullback_harmonic: point on a region boundary");

  const PlanePoint im = cover_map(pt);
  const Complex lhs = std::polar(1.0, kTwoPi * (a * im.x + b * im.p));

  const RegionFlags f = region_membership(pt);
  const double sign_b = (b % 2 == 0) ? 1.0 : -1.0;
  const double chi_x = f.in_l ? 1.0 : sign_b;        // chi_l + (-1)^b chi_r
  const double chi_p = f.in_e_p ? 1.0 : sign_b;      // chi_ep + (-1)^b chi_op
  // e^{4 pi i a x} e^{i pi b p} (chi_l + (-1)^b chi_r)(chi_ep + (-1)^b chi_op)
  const Complex rhs =
      std::polar(1.0, 2.0 * kTwoPi * a * pt.x) *
      std::polar(1.0, 0.5 * kTwoPi * b * pt.p) * (chi_x * chi_p);
  return PullbackValues{lhs, rhs};
}

std::vector<TorusPoint> orbit(const TorusPoint& pt, int steps) {
  if (steps < 0) throw std::invalid_argument("orbit: steps must be >= 0");
  std::vector<TorusPoint> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  out.push_back(pt);
  for (int i = 0; i < steps; ++i) out.push_back(baker_map(out.back()));
  return out;
}

void write_orbit_csv(std::ostream& os, const std::vector<TorusPoint>& pts) {
  os << "step,x,p\n";
  for (size_t i = 0; i < pts.size(); ++i)
    os << i << ',' << format_g17(pts[i].x) << ',' << format_g17(pts[i].p) << '\n';
}

}  // namespace qbaker
