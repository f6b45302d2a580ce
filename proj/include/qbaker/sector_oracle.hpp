#ifndef QBAKER_SECTOR_ORACLE_HPP
#define QBAKER_SECTOR_ORACLE_HPP

#include <iosfwd>
#include <utility>

#include "qbaker/hilbert.hpp"

namespace qbaker {

// Coefficients over the doubled sector space, ordered basis
// (Phi_0^{(0,0)}, ..., Phi_{N-1}^{(0,0)}, Phi_0^{(0,1/2)}, ..., Phi_{N-1}^{(0,1/2)}).
struct DoubledVector {
  Vector v;  // size 2N

  explicit DoubledVector(int n) : v(Vector::Zero(2 * n)) {}
  explicit DoubledVector(Vector w) : v(std::move(w)) {}

  int sector_dim() const { return static_cast<int>(v.size()) / 2; }
  auto c00() { return v.head(sector_dim()); }
  auto c0h() { return v.tail(sector_dim()); }
  auto c00() const { return v.head(sector_dim()); }
  auto c0h() const { return v.tail(sector_dim()); }
};

enum class SectorOpKind { e_x, o_x, b_half, t_half, x_neg_half, y_inv, s_stretch };

struct SectorOperator {
  SectorOpKind name;
  Matrix matrix;  // 2N x 2N
};

// E_x, O_x: even/odd-cell position projectors. On the combs,
//   E_x Phi_m^{(0,0)}   = (Phi_m^{(0,0)}  + e^{-i pi m/N} Phi_m^{(0,1/2)}) / 2
//   E_x Phi_m^{(0,1/2)} = (Phi_m^{(0,1/2)} + e^{+i pi m/N} Phi_m^{(0,0)}) / 2
// and O_x = I - E_x.
std::pair<SectorOperator, SectorOperator> build_Ex_Ox(const HilbertConfig& cfg);

// B, T: lower/upper momentum half-line projectors, block diagonal across the
// sectors; within each sector F^{-1} diag(a < N/2) F (momenta (a+theta2)/N).
std::pair<SectorOperator, SectorOperator> build_B_T(const HilbertConfig& cfg);

// X^{-1/2} = diag((-1)^m) on both sectors (combs sit at x = m/N + k, N even).
SectorOperator build_X_neg_half(const HilbertConfig& cfg);

// Y^{-1}: +1 on the (0,0) sector, -1 on the (0,1/2) sector.
SectorOperator build_Y_inv(const HilbertConfig& cfg);

// Stretching operator restricted to the (0,0) sector:
//   S Phi_m^{(0,0)} = (Phi_{2m mod N}^{(0,0)} + e^{-2 pi i m/N} Phi_{2m mod N}^{(0,1/2)}) / sqrt(2)
// (zero columns on the (0,1/2) side; apply only to (0,0)-sector input).
SectorOperator build_S(const HilbertConfig& cfg);

// Applies S to a doubled vector; rejects input with a (0,1/2) component.
DoubledVector apply_S(const SectorOperator& s, const DoubledVector& in);

// (E_x + X^{-1/2} O_x)(B + Y^{-1} T) S on the doubled space.
Matrix assemble_F(const HilbertConfig& cfg);

// max_m || (0,1/2) component of F Phi_m^{(0,0)} ||  -- 0 when theta=(0,0)
// is a fixed point of the dynamics. Contract: < 1e-12.
double fixed_point_check(const HilbertConfig& cfg);

class SectorLeakageError : public std::runtime_error {
 public:
  SectorLeakageError(const std::string& what, double leakage)
      : std::runtime_error(what), leakage(leakage) {}
  double leakage;
};

class OracleMismatchError : public std::runtime_error {
 public:
  OracleMismatchError(const std::string& what, int n, int m, Complex oracle,
                      Complex corrected)
      : std::runtime_error(what), n(n), m(m), oracle(oracle), corrected(corrected) {}
  int n, m;
  Complex oracle, corrected;
};

// The (0,0)->(0,0) block of the assembled operator, certified against the
// closed-form propagator: throws SectorLeakageError if the fixed-point check
// fails, OracleMismatchError (with the first offending entry) if any entry
// differs from corrected_matrix by more than 1e-10.
Matrix oracle_matrix(const HilbertConfig& cfg);

// Same block with no certification, for callers that do their own reporting.
Matrix oracle_block_raw(const HilbertConfig& cfg);

// One-line text report "leakage=<value>" for the fixed-point check.
void write_leakage_report(std::ostream& os, const HilbertConfig& cfg);

}  // namespace qbaker

#endif
