#ifndef QBAKER_PROPAGATOR_HPP
#define QBAKER_PROPAGATOR_HPP

#include <string>
#include <vector>

#include "qbaker/hilbert.hpp"

namespace qbaker {

enum class PropagatorVariant { balazs_voros, parity_corrected };

const char* to_string(PropagatorVariant v);
PropagatorVariant variant_from_string(const std::string& s);

struct PropagatorMatrix {
  HilbertConfig cfg;
  PropagatorVariant variant;
  Matrix matrix;
};

// Balazs-Voros propagator F_N^{-1} . blockdiag(F_{N/2}, F_{N/2}).
PropagatorMatrix bv_matrix(const HilbertConfig& cfg);

// Unit phase multiplying the Balazs-Voros entry (n,m):
//   n even: 1
//   n odd : e^{i pi (n-2m)/N}        for m <  N/2
//           e^{i pi (n-(2m-N))/N}    for m >= N/2
// Equals 1 exactly on the classical trajectories n=2m and n=2m-N.
Complex phase_correction(int n, int m, const HilbertConfig& cfg);

// Parity-conserving propagator: the phase mask applied elementwise to the
// Balazs-Voros matrix (same intermediates, so even rows are bit-identical).
PropagatorMatrix corrected_matrix(const HilbertConfig& cfg);

// O(N log N) application of either variant to a position-basis state,
// via FFTs of sizes N/2, N/2, N plus diagonal phase masks for the odd rows.
StateVector apply_fast(const StateVector& state, PropagatorVariant variant,
                       const HilbertConfig& cfg);

// max |(AB - BA)_{ij}|
double commutator_defect(const Matrix& a, const Matrix& b);

class NonUnitaryError : public std::runtime_error {
 public:
  NonUnitaryError(const std::string& what, double defect)
      : std::runtime_error(what), defect(defect) {}
  double defect;
};

// Eigenvalue arguments in [0, 2pi), ascending; ties broken by lexicographic
// comparison of the eigenvector columns so output is reproducible.
// Requires unitary input (defect < 1e-8).
std::vector<double> eigenphases(const Matrix& m);

}  // namespace qbaker

#endif
