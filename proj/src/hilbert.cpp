#include "qbaker/hilbert.hpp"

#include <cmath>

#include "qbaker/fft.hpp"

namespace qbaker {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

HilbertConfig::HilbertConfig(int n) : N(n) {
  if (n <= 0 || n % 2 != 0)
    throw std::invalid_argument("HilbertConfig: N must be a positive even integer");
}

double HilbertConfig::hbar() const { return 1.0 / (2.0 * kPi * N); }

const char* to_string(BasisKind b) {
  return b == BasisKind::position ? "position" : "momentum";
}

const char* to_string(SectorTag s) {
  return s == SectorTag::theta_00 ? "theta_00" : "theta_0half";
}

BasisKind basis_from_string(const std::string& s) {
  if (s == "position") return BasisKind::position;
  if (s == "momentum") return BasisKind::momentum;
  throw std::invalid_argument("unknown basis tag: " + s);
}

SectorTag sector_from_string(const std::string& s) {
  if (s == "theta_00") return SectorTag::theta_00;
  if (s == "theta_0half") return SectorTag::theta_0half;
  throw std::invalid_argument("unknown sector tag: " + s);
}

double unitary_defect(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("unitary_defect: matrix not square");
  Matrix g = m.adjoint() * m;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

Matrix dft_matrix(int n) {
  if (n <= 0) throw std::invalid_argument("dft_matrix: N must be positive");
  Matrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k <= m; ++k) {
      // reduce the index product mod N before forming the angle
      const long long prod = static_cast<long long>(m) * k % n;
      const Complex w = std::polar(scale, -2.0 * kPi * static_cast<double>(prod) / n);
      f(m, k) = w;
      f(k, m) = w;
    }
  }
  return f;
}

StateVector to_momentum(const StateVector& s) {
  if (s.basis != BasisKind::position)
    throw std::invalid_argument("to_momentum: state already in momentum basis");
  return StateVector(fft::forward(s.coeffs), BasisKind::momentum, s.sector);
}

StateVector to_position(const StateVector& s) {
  if (s.basis != BasisKind::momentum)
    throw std::invalid_argument("to_position: state already in position basis");
  return StateVector(fft::inverse(s.coeffs), BasisKind::position, s.sector);
}

Matrix observable_U(const HilbertConfig& cfg) {
  Matrix u = Matrix::Zero(cfg.N, cfg.N);
  for (int m = 0; m < cfg.N; ++m) u(m, m) = std::polar(1.0, 2.0 * kPi * m / cfg.N);
  return u;
}

Matrix observable_V(const HilbertConfig& cfg) {
  Matrix v = Matrix::Zero(cfg.N, cfg.N);
  for (int m = 0; m < cfg.N; ++m) v((m - 1 + cfg.N) % cfg.N, m) = 1.0;
  return v;
}

Complex weyl_phase(const HilbertConfig& cfg) {
  // U V U^{-1} V^{-1} applied to the basis vector e_0, tracked exactly:
  // V^{-1} e_0 = e_1, U^{-1} picks up e^{-2 pi i/N}, V e_1 = e_0, U e_0 = e_0.
  Complex acc = 1.0;
  int idx = 0;
  idx = (idx + 1) % cfg.N;                                   // V^{-1}
  acc *= std::polar(1.0, -2.0 * kPi * idx / cfg.N);          // U^{-1}
  idx = (idx - 1 + cfg.N) % cfg.N;                           // V
  acc *= std::polar(1.0, 2.0 * kPi * idx / cfg.N);           // U
  return acc;
}

Matrix harmonic_operator(int a, int b, const HilbertConfig& cfg) {
  const int n = cfg.N;
  // only (a mod N, b mod N) matter; reduce first so that holds exactly
  const int am = ((a % n) + n) % n;
  const int bm = ((b % n) + n) % n;
  Matrix op = Matrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    const int row = (m - bm + n) % n;
    op(row, m) = std::polar(1.0, 2.0 * kPi * ((static_cast<long long>(am) * row) % n) / n);
  }
  return op;
}

Matrix parity_matrix(const HilbertConfig& cfg) {
  Matrix p = Matrix::Zero(cfg.N, cfg.N);
  for (int m = 0; m < cfg.N; ++m) p((cfg.N - m) % cfg.N, m) = 1.0;
  return p;
}

Matrix half_projector(HalfProjector kind, const HilbertConfig& cfg) {
  const int n = cfg.N;
  Eigen::VectorXd mask(n);
  for (int m = 0; m < n; ++m) mask(m) = (m < n / 2) ? 1.0 : 0.0;

  switch (kind) {
    case HalfProjector::position_low:
      return mask.cast<Complex>().asDiagonal();
    case HalfProjector::position_high:
      return (Eigen::VectorXd::Ones(n) - mask).cast<Complex>().asDiagonal();
    case HalfProjector::momentum_low:
    case HalfProjector::momentum_high: {
      const Matrix f = dft_matrix(n);
      Eigen::VectorXd m2 =
          (kind == HalfProjector::momentum_low) ? mask : Eigen::VectorXd(Eigen::VectorXd::Ones(n) - mask);
      return f.adjoint() * m2.cast<Complex>().asDiagonal() * f;
    }
  }
  throw std::logic_error("half_projector: unreachable");
}

}  // namespace qbaker
