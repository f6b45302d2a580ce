#include "qbaker/semiclassics.hpp"

#include <cmath>
#include <ostream>

#include "qbaker/io.hpp"
#include "qbaker/sector_oracle.hpp"

namespace qbaker {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// k-sum radius for the comb pairing; Gaussian tails below 1e-16 are dropped
double comb_sum_radius(double hbar) {
  const double tol = 1e-16;
  return 10.0 * std::sqrt(hbar) * std::max(1.0, std::sqrt(std::log(1.0 / tol)));
}

void require_sector_hbar(const CoherentParams& cp, const HilbertConfig& cfg) {
  if (std::abs(cp.hbar - cfg.hbar()) > 1e-15 * cfg.hbar())
    throw std::invalid_argument("coherent packet hbar must equal 1/(2 pi N) for sector projection");
}

}  // namespace

CoherentParams::CoherentParams(double x0_, double p0_, double hbar_)
    : x0(x0_), p0(p0_), hbar(hbar_) {
  if (!(hbar > 0.0)) throw std::invalid_argument("CoherentParams: hbar must be positive");
  if (!std::isfinite(x0) || !std::isfinite(p0))
    throw std::invalid_argument("CoherentParams: center must be finite");
}

CoherentParams CoherentParams::for_sector(double x0_, double p0_, const HilbertConfig& cfg) {
  return CoherentParams(x0_, p0_, cfg.hbar());
}

Complex coherent_wavefunction(double x, const CoherentParams& cp) {
  const double amp = std::pow(kPi * cp.hbar, -0.25) *
                     std::exp(-(x - cp.x0) * (x - cp.x0) / (2.0 * cp.hbar));
  return amp * std::polar(1.0, cp.p0 * x / cp.hbar - cp.p0 * cp.x0 / (2.0 * cp.hbar));
}

Complex coherent_wavefunction_momentum(double p, const CoherentParams& cp) {
  const double amp = std::pow(kPi * cp.hbar, -0.25) *
                     std::exp(-(p - cp.p0) * (p - cp.p0) / (2.0 * cp.hbar));
  return amp * std::polar(1.0, -p * cp.x0 / cp.hbar + cp.p0 * cp.x0 / (2.0 * cp.hbar));
}

StateVector project_to_sector(const CoherentParams& cp, const HilbertConfig& cfg) {
  require_sector_hbar(cp, cfg);
  const int n = cfg.N;
  const double radius = comb_sum_radius(cp.hbar);
  const int k_lo = static_cast<int>(std::floor(cp.x0 - radius)) - 1;
  const int k_hi = static_cast<int>(std::ceil(cp.x0 + radius)) + 1;

  Vector c = Vector::Zero(n);
  for (int m = 0; m < n; ++m)
    for (int k = k_lo; k <= k_hi; ++k)
      c(m) += coherent_wavefunction(static_cast<double>(m) / n + k, cp);
  c /= std::sqrt(static_cast<double>(n));

  const double nrm = c.norm();
  if (nrm == 0.0)
    throw std::runtime_error("project_to_sector: packet projected to the zero vector");
  c /= nrm;
  return StateVector(std::move(c), BasisKind::position, SectorTag::theta_00);
}

Vector project_to_doubled_position(const CoherentParams& cp, const HilbertConfig& cfg) {
  require_sector_hbar(cp, cfg);
  const int n = cfg.N;
  const double radius = comb_sum_radius(cp.hbar);
  const int k_lo = static_cast<int>(std::floor(cp.x0 - radius)) - 1;
  const int k_hi = static_cast<int>(std::ceil(cp.x0 + radius)) + 1;

  Vector v = Vector::Zero(2 * n);
  for (int m = 0; m < n; ++m) {
    Complex plain = 0.0, alternating = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
      const Complex phi = coherent_wavefunction(static_cast<double>(m) / n + k, cp);
      plain += phi;
      alternating += (k % 2 == 0 ? phi : -phi);
    }
    v(m) = plain;
    // <Phi_m^{(0,1/2)}|phi>: comb phases conjugated
    v(n + m) = std::polar(1.0, -kPi * m / n) * alternating;
  }
  const double nrm = v.norm();
  if (nrm == 0.0) throw std::runtime_error("doubled projection: zero vector");
  return v / nrm;
}

Vector project_to_doubled_momentum(const CoherentParams& cp, const HilbertConfig& cfg) {
  require_sector_hbar(cp, cfg);
  const int n = cfg.N;
  const double radius = comb_sum_radius(cp.hbar);
  const int k_lo = static_cast<int>(std::floor(cp.p0 - radius)) - 1;
  const int k_hi = static_cast<int>(std::ceil(cp.p0 + radius)) + 1;

  Vector v = Vector::Zero(2 * n);
  for (int m = 0; m < n; ++m) {
    Complex plain = 0.0, alternating = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
      const Complex phi = coherent_wavefunction_momentum(static_cast<double>(m) / n + k, cp);
      plain += phi;
      alternating += (k % 2 == 0 ? phi : -phi);
    }
    v(m) = plain;
    // <PhiTilde_m^{(1/2,0)}|phi>: momentum combs of the (1/2,0) sector
    v(n + m) = std::polar(1.0, kPi * m / n) * alternating;
  }
  const double nrm = v.norm();
  if (nrm == 0.0) throw std::runtime_error("doubled projection: zero vector");
  return v / nrm;
}

Complex harmonic_expectation_closed_form(int a, int b, const CoherentParams& cp) {
  const double damp = std::exp(-kPi * kPi * cp.hbar * (static_cast<double>(a) * a +
                                                       static_cast<double>(b) * b));
  return damp *
         std::polar(1.0, 2.0 * kPi * (a * cp.x0 + b * cp.p0)) *
         std::polar(1.0, -2.0 * kPi * kPi * a * b * cp.hbar);
}

double projector_mass(const StateVector& state, const Matrix& projector) {
  if (projector.cols() != state.dim())
    throw std::invalid_argument("projector_mass: dimension mismatch");
  return (projector * state.coeffs).squaredNorm();
}

double gaussian_tail_bound(double epsilon, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("gaussian_tail_bound: hbar must be positive");
  if (!(epsilon / std::sqrt(hbar) > 1.0))
    throw std::invalid_argument("gaussian_tail_bound: requires epsilon/sqrt(hbar) > 1");
  return std::exp(-epsilon * epsilon / hbar) / 2.0;
}

LimitReport weak_limit_experiment(int a, int b, double x0, double p0,
                                  const std::vector<int>& n_list,
                                  PropagatorVariant variant) {
  const PlanePoint center(x0, p0);
  if (near_region_boundary(center))
    throw BoundaryPointError("weak_limit_experiment: packet center on a region boundary");
  if (n_list.empty()) throw std::invalid_argument("weak_limit_experiment: empty N list");
  for (size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] <= 0 || n_list[i] % 2 != 0)
      throw std::invalid_argument("weak_limit_experiment: N values must be even and positive");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("weak_limit_experiment: N values must be ascending");
  }

  const PlanePoint image = cover_map(center);
  const double bx = frac(image.x);
  const double bp = frac(image.p);

  LimitReport report{a, b, x0, p0, {}};
  for (int n : n_list) {
    const HilbertConfig cfg(n);
    const Matrix f = (variant == PropagatorVariant::balazs_voros)
                         ? bv_matrix(cfg).matrix
                         : corrected_matrix(cfg).matrix;
    const Matrix op = harmonic_operator(a, b, cfg);

    const Vector c = project_to_sector(CoherentParams::for_sector(x0, p0, cfg), cfg).coeffs;
    const Vector fc = f * c;
    const Complex quantum = fc.dot(op * fc);

    const Vector cb = project_to_sector(CoherentParams::for_sector(bx, bp, cfg), cfg).coeffs;
    const Complex classical = cb.dot(op * cb);

    report.rows.push_back(LimitRow{n, quantum, classical, std::abs(quantum - classical)});
  }
  return report;
}

Complex diffraction_kernel(double x, double y, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("diffraction_kernel: hbar must be positive");
  const double r = (x - y) / (2.0 * hbar);
  const double sinc = (r == 0.0) ? 1.0 : std::sin(r) / r;
  return Complex(sinc * std::exp(-hbar * r * r) / (2.0 * kPi * hbar), 0.0);
}

std::vector<LocalizationRow> localization_table(const HilbertConfig& cfg) {
  const int n = cfg.N;
  std::vector<LocalizationRow> rows;

  const Matrix proj_l = half_projector(HalfProjector::position_low, cfg);
  const Matrix proj_r = half_projector(HalfProjector::position_high, cfg);
  const Matrix proj_b = half_projector(HalfProjector::momentum_low, cfg);
  const Matrix proj_t = half_projector(HalfProjector::momentum_high, cfg);

  const auto single_mass = [&](const Matrix& proj, double x0, double p0) {
    const StateVector c = project_to_sector(CoherentParams::for_sector(x0, p0, cfg), cfg);
    return projector_mass(c, proj);
  };

  // x-half-line rows (period 1): centers 0.3 (inside l) and 0.7 (inside r)
  rows.push_back({"L", "l", single_mass(proj_l, 0.3, 0.2), 1});
  rows.push_back({"L", "r", single_mass(proj_l, 0.7, 0.2), 0});
  rows.push_back({"R", "l", single_mass(proj_r, 0.3, 0.2), 0});
  rows.push_back({"R", "r", single_mass(proj_r, 0.7, 0.2), 1});
  // p-half-line rows
  rows.push_back({"B", "b", single_mass(proj_b, 0.2, 0.3), 1});
  rows.push_back({"B", "t", single_mass(proj_b, 0.2, 0.7), 0});
  rows.push_back({"T", "b", single_mass(proj_t, 0.2, 0.3), 0});
  rows.push_back({"T", "t", single_mass(proj_t, 0.2, 0.7), 1});

  // even/odd x rows (period 2), on the doubled space H(0,0) + H(0,1/2)
  const auto [ex, ox] = build_Ex_Ox(cfg);
  const auto doubled_mass_x = [&](const Matrix& proj, double x0) {
    const Vector v = project_to_doubled_position(CoherentParams::for_sector(x0, 0.2, cfg), cfg);
    return (proj * v).squaredNorm();
  };
  rows.push_back({"E_x", "e_x", doubled_mass_x(ex.matrix, 0.5), 1});
  rows.push_back({"E_x", "o_x", doubled_mass_x(ex.matrix, 1.5), 0});
  rows.push_back({"O_x", "e_x", doubled_mass_x(ox.matrix, 0.5), 0});
  rows.push_back({"O_x", "o_x", doubled_mass_x(ox.matrix, 1.5), 1});

  // even/odd p rows, on the mirrored doubled space H(0,0) + H(1/2,0) in the
  // momentum representation, where E_p has the mirror 2x2 block form
  Matrix ep = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    const Complex ph = std::polar(1.0, kPi * k / n);  // e^{+i pi k/N}
    ep(k, k) = 0.5;
    ep(n + k, k) = 0.5 * ph;
    ep(n + k, n + k) = 0.5;
    ep(k, n + k) = 0.5 * std::conj(ph);
  }
  const Matrix op_proj = Matrix::Identity(2 * n, 2 * n) - ep;
  const auto doubled_mass_p = [&](const Matrix& proj, double p0) {
    const Vector v = project_to_doubled_momentum(CoherentParams::for_sector(0.2, p0, cfg), cfg);
    return (proj * v).squaredNorm();
  };
  rows.push_back({"E_p", "e_p", doubled_mass_p(ep, 0.5), 1});
  rows.push_back({"E_p", "o_p", doubled_mass_p(ep, 1.5), 0});
  rows.push_back({"O_p", "e_p", doubled_mass_p(op_proj, 0.5), 0});
  rows.push_back({"O_p", "o_p", doubled_mass_p(op_proj, 1.5), 1});

  return rows;
}

void write_limit_csv(std::ostream& os, const LimitReport& report) {
  os << "N,re_q,im_q,re_c,im_c,error\n";
  for (const auto& row : report.rows) {
    os << row.N << ',' << format_g17(row.quantum.real()) << ','
       << format_g17(row.quantum.imag()) << ',' << format_g17(row.classical.real())
       << ',' << format_g17(row.classical.imag()) << ',' << format_g17(row.error)
       << '\n';
  }
}

void write_localization_csv(std::ostream& os, const std::vector<LocalizationRow>& rows) {
  os << "operator,region,measured_mass,expected_limit\n";
  for (const auto& row : rows)
    os << row.op << ',' << row.region << ',' << format_g17(row.measured) << ','
       << row.expected << '\n';
}

}  // namespace qbaker
