#include "qbaker/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qbaker {
namespace fft {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex plan_mutex;

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // out-of-place plans to match the out-of-place execution below
  fftw_complex* src = fftw_alloc_complex(static_cast<size_t>(n));
  fftw_complex* dst = fftw_alloc_complex(static_cast<size_t>(n));
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(n, src, dst, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(n, src, dst, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(src);
  fftw_free(dst);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
  return cache.emplace(n, p).first->second;
}

Eigen::VectorXcd run(const Eigen::VectorXcd& in, bool forward_dir) {
  const int n = static_cast<int>(in.size());
  if (n == 0) throw std::invalid_argument("fft: empty input");
  Eigen::VectorXcd out(n);
  PlanPair& p = plans_for(n);
  auto* src = const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(forward_dir ? p.fwd : p.bwd, src, dst);
  out /= std::sqrt(static_cast<double>(n));
  return out;
}

}  // namespace

Eigen::VectorXcd forward(const Eigen::VectorXcd& in) { return run(in, true); }
Eigen::VectorXcd inverse(const Eigen::VectorXcd& in) { return run(in, false); }

}  // namespace fft
}  // namespace qbaker
