#ifndef QBAKER_IO_HPP
#define QBAKER_IO_HPP

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "qbaker/hilbert.hpp"

namespace qbaker {

// "%.17g" with the C locale; byte-reproducible.
std::string format_g17(double v);

// "re,im"
std::string format_complex(Complex z);

// qbaker-matrix v1:
//   qbaker-matrix v1 dim=<N>
//   N rows of N "re,im" entries separated by single spaces
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

// qbaker-state v1:
//   qbaker-state v1 dim=<N> basis=<position|momentum> sector=<theta_00|theta_0half>
//   N lines "re,im"
void write_state(std::ostream& os, const StateVector& s);
StateVector read_state(std::istream& is);

// Writes through a temp file in the same directory, then renames.
void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer);

}  // namespace qbaker

#endif
