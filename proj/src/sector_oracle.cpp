#include "qbaker/sector_oracle.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "qbaker/io.hpp"
#include "qbaker/propagator.hpp"

namespace qbaker {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

std::pair<SectorOperator, SectorOperator> build_Ex_Ox(const HilbertConfig& cfg) {
  const int n = cfg.N;
  Matrix ex = Matrix::Zero(2 * n, 2 * n);
  for (int m = 0; m < n; ++m) {
    const Complex ph = std::polar(1.0, -kPi * m / n);  // e^{-i pi m/N}
    ex(m, m) = 0.5;
    ex(n + m, m) = 0.5 * ph;
    ex(n + m, n + m) = 0.5;
    ex(m, n + m) = 0.5 * std::conj(ph);
  }
  Matrix ox = Matrix::Identity(2 * n, 2 * n) - ex;
  return {SectorOperator{SectorOpKind::e_x, std::move(ex)},
          SectorOperator{SectorOpKind::o_x, std::move(ox)}};
}

std::pair<SectorOperator, SectorOperator> build_B_T(const HilbertConfig& cfg) {
  const int n = cfg.N;
  const Matrix f = dft_matrix(n);
  // momentum mask: comb momenta (a + theta2)/N below 1/2, i.e. a < N/2 in
  // both sectors (for theta2 = 1/2 the momenta are (a + 1/2)/N)
  Eigen::VectorXcd mask = Eigen::VectorXcd::Zero(n);
  for (int a = 0; a < n / 2; ++a) mask(a) = 1.0;
  const Matrix b_one = f.adjoint() * mask.asDiagonal() * f;

  Matrix b = Matrix::Zero(2 * n, 2 * n);
  b.topLeftCorner(n, n) = b_one;
  b.bottomRightCorner(n, n) = b_one;
  Matrix t = Matrix::Identity(2 * n, 2 * n) - b;
  return {SectorOperator{SectorOpKind::b_half, std::move(b)},
          SectorOperator{SectorOpKind::t_half, std::move(t)}};
}

SectorOperator build_X_neg_half(const HilbertConfig& cfg) {
  const int n = cfg.N;
  Matrix x = Matrix::Zero(2 * n, 2 * n);
  for (int s = 0; s < 2; ++s)
    for (int m = 0; m < n; ++m)
      x(s * n + m, s * n + m) = (m % 2 == 0) ? 1.0 : -1.0;  // e^{-i pi m}
  return SectorOperator{SectorOpKind::x_neg_half, std::move(x)};
}

SectorOperator build_Y_inv(const HilbertConfig& cfg) {
  const int n = cfg.N;
  Matrix y = Matrix::Zero(2 * n, 2 * n);
  for (int m = 0; m < n; ++m) {
    y(m, m) = 1.0;           // Y eigenvalue e^{2 pi i theta2} = 1 on (0,0)
    y(n + m, n + m) = -1.0;  // ... = -1 on (0,1/2)
  }
  return SectorOperator{SectorOpKind::y_inv, std::move(y)};
}

SectorOperator build_S(const HilbertConfig& cfg) {
  const int n = cfg.N;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  for (int m = 0; m < n; ++m) {
    const int target = (2 * m) % n;
    s(target, m) = inv_sqrt2;
    s(n + target, m) = inv_sqrt2 * std::polar(1.0, -2.0 * kPi * m / n);
  }
  return SectorOperator{SectorOpKind::s_stretch, std::move(s)};
}

DoubledVector apply_S(const SectorOperator& s, const DoubledVector& in) {
  if (s.name != SectorOpKind::s_stretch)
    throw std::invalid_argument("apply_S: operator is not the stretching operator");
  if (in.c0h().norm() != 0.0)
    throw std::invalid_argument("apply_S: input has a nonzero (0,1/2) component");
  return DoubledVector(Vector(s.matrix * in.v));
}

Matrix assemble_F(const HilbertConfig& cfg) {
  const auto [ex, ox] = build_Ex_Ox(cfg);
  const auto [b, t] = build_B_T(cfg);
  const SectorOperator xnh = build_X_neg_half(cfg);
  const SectorOperator yinv = build_Y_inv(cfg);
  const SectorOperator s = build_S(cfg);
  return (ex.matrix + xnh.matrix * ox.matrix) *
         (b.matrix + yinv.matrix * t.matrix) * s.matrix;
}

double fixed_point_check(const HilbertConfig& cfg) {
  const Matrix f = assemble_F(cfg);
  const int n = cfg.N;
  // norm of the (0,1/2) component of F Phi_m^{(0,0)}, maximized over m
  double leak = 0.0;
  for (int m = 0; m < n; ++m)
    leak = std::max(leak, f.block(n, 0, n, n).col(m).norm());
  return leak;
}

Matrix oracle_block_raw(const HilbertConfig& cfg) {
  return assemble_F(cfg).topLeftCorner(cfg.N, cfg.N);
}

void write_leakage_report(std::ostream& os, const HilbertConfig& cfg) {
  os << "leakage=" << format_g17(fixed_point_check(cfg)) << '\n';
}

Matrix oracle_matrix(const HilbertConfig& cfg) {
  const Matrix f = assemble_F(cfg);
  const int n = cfg.N;

  double leak = 0.0;
  for (int m = 0; m < n; ++m)
    leak = std::max(leak, f.block(n, 0, n, n).col(m).norm());
  if (leak >= 1e-12) {
    std::ostringstream msg;
    msg << "oracle_matrix: sector leakage " << leak << " at N=" << n;
    throw SectorLeakageError(msg.str(), leak);
  }

  const Matrix block = f.topLeftCorner(n, n);
  const Matrix reference = corrected_matrix(cfg).matrix;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      if (std::abs(block(row, col) - reference(row, col)) > 1e-10) {
        std::ostringstream msg;
        msg << "oracle_matrix: mismatch at (" << row << "," << col << "): oracle="
            << block(row, col) << " corrected=" << reference(row, col);
        throw OracleMismatchError(msg.str(), row, col, block(row, col),
                                  reference(row, col));
      }
    }
  }
  return block;
}

}  // namespace qbaker
