#include "qbaker/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qbaker/fft.hpp"

namespace qbaker {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

const char* to_string(PropagatorVariant v) {
  return v == PropagatorVariant::balazs_voros ? "bv" : "parity";
}

PropagatorVariant variant_from_string(const std::string& s) {
  if (s == "bv") return PropagatorVariant::balazs_voros;
  if (s == "parity") return PropagatorVariant::parity_corrected;
  throw std::invalid_argument("unknown propagator variant: " + s);
}

PropagatorMatrix bv_matrix(const HilbertConfig& cfg) {
  const int n = cfg.N;
  const Matrix f = dft_matrix(n);
  const Matrix fh = dft_matrix(n / 2);
  Matrix block = Matrix::Zero(n, n);
  block.topLeftCorner(n / 2, n / 2) = fh;
  block.bottomRightCorner(n / 2, n / 2) = fh;
  return PropagatorMatrix{cfg, PropagatorVariant::balazs_voros, f.adjoint() * block};
}

Complex phase_correction(int n, int m, const HilbertConfig& cfg) {
  if (n < 0 || n >= cfg.N || m < 0 || m >= cfg.N)
    throw std::out_of_range("phase_correction: index out of range");
  if (n % 2 == 0) return Complex(1.0, 0.0);
  const int delta = (m < cfg.N / 2) ? (n - 2 * m) : (n - (2 * m - cfg.N));
  return std::polar(1.0, kPi * delta / cfg.N);
}

PropagatorMatrix corrected_matrix(const HilbertConfig& cfg) {
  PropagatorMatrix out = bv_matrix(cfg);
  out.variant = PropagatorVariant::parity_corrected;
  for (int n = 1; n < cfg.N; n += 2)
    for (int m = 0; m < cfg.N; ++m)
      out.matrix(n, m) *= phase_correction(n, m, cfg);
  return out;
}

StateVector apply_fast(const StateVector& state, PropagatorVariant variant,
                       const HilbertConfig& cfg) {
  const int n = cfg.N;
  if (state.dim() != n) throw std::invalid_argument("apply_fast: dimension mismatch");
  if (state.basis != BasisKind::position)
    throw std::invalid_argument("apply_fast: state must be in the position basis");

  const auto block_transform = [n](const Vector& c) {
    Vector z(n);
    z.head(n / 2) = fft::forward(c.head(n / 2));
    z.tail(n / 2) = fft::forward(c.tail(n / 2));
    return z;
  };

  const Vector& c = state.coeffs;
  Vector out = fft::inverse(block_transform(c));

  if (variant == PropagatorVariant::parity_corrected) {
    // odd rows of corrected = e^{i pi n/N} . bv-rows of (q coeffwise c),
    // q_m = e^{-2 pi i m/N} for m < N/2 and -e^{-2 pi i m/N} for m >= N/2
    // (the elementwise form of the odd-row phase mask; verified against
    // phase_correction in the unit tests)
    Vector cq(n);
    for (int m = 0; m < n; ++m) {
      const double sign = (m < n / 2) ? 1.0 : -1.0;
      cq(m) = c(m) * std::polar(sign, -2.0 * kPi * m / n);
    }
    const Vector out_odd = fft::inverse(block_transform(cq));
    for (int row = 1; row < n; row += 2)
      out(row) = std::polar(1.0, kPi * row / n) * out_odd(row);
  }
  return StateVector(std::move(out), BasisKind::position, state.sector);
}

double commutator_defect(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("commutator_defect: dimension mismatch");
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

std::vector<double> eigenphases(const Matrix& m) {
  const double defect = unitary_defect(m);
  if (defect >= 1e-8)
    throw NonUnitaryError("eigenphases: input not unitary, defect=" + std::to_string(defect),
                          defect);

  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenphases: eigensolver failed");

  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const int n = static_cast<int>(vals.size());

  std::vector<double> phase(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(std::abs(vals(i)) - 1.0) > 1e-8)
      throw NonUnitaryError("eigenphases: eigenvalue modulus deviates from 1",
                            std::abs(std::abs(vals(i)) - 1.0));
    double a = std::arg(vals(i));
    if (a < 0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a = 0.0;
    phase[i] = a;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (phase[i] != phase[j]) return phase[i] < phase[j];
    for (int k = 0; k < n; ++k) {
      const Complex a = vecs(k, i), b = vecs(k, j);
      if (a.real() != b.real()) return a.real() < b.real();
      if (a.imag() != b.imag()) return a.imag() < b.imag();
    }
    return false;
  });

  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = phase[order[i]];
  return out;
}

}  // namespace qbaker
