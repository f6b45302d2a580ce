#ifndef QBAKER_FFT_HPP
#define QBAKER_FFT_HPP

#include <Eigen/Dense>

namespace qbaker {
namespace fft {

// Unitary DFT, out_n = (1/sqrt(N)) sum_m e^{-2 pi i n m / N} in_m,
// and its inverse. Plans are cached per size; safe for concurrent calls.
Eigen::VectorXcd forward(const Eigen::VectorXcd& in);
Eigen::VectorXcd inverse(const Eigen::VectorXcd& in);

}  // namespace fft
}  // namespace qbaker

#endif
