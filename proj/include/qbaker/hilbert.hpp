#ifndef QBAKER_HILBERT_HPP
#define QBAKER_HILBERT_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qbaker {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Finite sector dimension N (even) with Planck's constant h = 1/N,
// i.e. hbar = 1/(2 pi N).
struct HilbertConfig {
  int N;

  explicit HilbertConfig(int n);
  double hbar() const;
};

enum class BasisKind { position, momentum };
enum class SectorTag { theta_00, theta_0half };

const char* to_string(BasisKind b);
const char* to_string(SectorTag s);
BasisKind basis_from_string(const std::string& s);
SectorTag sector_from_string(const std::string& s);

// Length-N coefficient vector over the delta-comb basis of one sector.
// Index arithmetic is mod N throughout.
struct StateVector {
  Vector coeffs;
  BasisKind basis = BasisKind::position;
  SectorTag sector = SectorTag::theta_00;

  StateVector() = default;
  StateVector(Vector c, BasisKind b, SectorTag s)
      : coeffs(std::move(c)), basis(b), sector(s) {}

  int dim() const { return static_cast<int>(coeffs.size()); }
  double norm() const { return coeffs.norm(); }
};

// max |(M^dagger M - I)_{ij}|
double unitary_defect(const Matrix& m);

// F^N_{mn} = exp(-2 pi i m n / N) / sqrt(N); unitary and symmetric.
Matrix dft_matrix(int n);

// Basis change fixed by Phi_m = sum_n F_{mn} PhiTilde_n: momentum
// coefficients are d = F c. Implemented with an FFT; norm preserved.
StateVector to_momentum(const StateVector& s);
StateVector to_position(const StateVector& s);

// U = diag(e^{2 pi i m/N}), V: index shift m -> m-1 (mod N), both in the
// position basis. Recorded convention (asserted throughout the tests):
//   F V F^{-1} = diag(e^{+2 pi i n/N}),   U V U^{-1} V^{-1} = e^{-2 pi i/N} I.
Matrix observable_U(const HilbertConfig& cfg);
Matrix observable_V(const HilbertConfig& cfg);

// The recorded Weyl phase omega = e^{-2 pi i/N}.
Complex weyl_phase(const HilbertConfig& cfg);

// U^a V^b; depends on (a mod N, b mod N) only.
Matrix harmonic_operator(int a, int b, const HilbertConfig& cfg);

// Permutation m -> (N-m) mod N, the finite image of |x> -> |1-x>.
Matrix parity_matrix(const HilbertConfig& cfg);

enum class HalfProjector { position_low, position_high, momentum_low, momentum_high };

// Indicator of the lower/upper half line in position (diagonal mask) or
// momentum (mask conjugated by the DFT). Complementary pairs sum to I.
Matrix half_projector(HalfProjector kind, const HilbertConfig& cfg);

}  // namespace qbaker

#endif
