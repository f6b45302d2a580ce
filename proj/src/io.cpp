#include "qbaker/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

namespace qbaker {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(Complex z) {
  return format_g17(z.real()) + "," + format_g17(z.imag());
}

namespace {

Complex parse_complex(const std::string& token) {
  const auto comma = token.find(',');
  if (comma == std::string::npos)
    throw std::runtime_error("bad complex entry: " + token);
  size_t used_re = 0, used_im = 0;
  const std::string re_s = token.substr(0, comma), im_s = token.substr(comma + 1);
  const double re = std::stod(re_s, &used_re);
  const double im = std::stod(im_s, &used_im);
  if (used_re != re_s.size() || used_im != im_s.size())
    throw std::runtime_error("bad complex entry: " + token);
  return Complex(re, im);
}

// "key=value" fields from a header line after the format name
std::string header_field(const std::string& line, const std::string& key) {
  const std::string needle = key + "=";
  const auto pos = line.find(needle);
  if (pos == std::string::npos)
    throw std::runtime_error("missing header field '" + key + "' in: " + line);
  const auto start = pos + needle.size();
  const auto end = line.find(' ', start);
  return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

void write_matrix(std::ostream& os, const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("write_matrix: matrix not square");
  os << "qbaker-matrix v1 dim=" << m.rows() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << format_complex(m(r, c));
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("qbaker-matrix v1 ", 0) != 0)
    throw std::runtime_error("read_matrix: not a qbaker-matrix v1 file");
  const int dim = std::stoi(header_field(line, "dim"));
  if (dim <= 0) throw std::runtime_error("read_matrix: bad dimension");

  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!std::getline(is, line)) throw std::runtime_error("read_matrix: truncated file");
    std::istringstream row(line);
    std::string token;
    for (int c = 0; c < dim; ++c) {
      if (!(row >> token)) throw std::runtime_error("read_matrix: short row");
      m(r, c) = parse_complex(token);
    }
    if (row >> token) throw std::runtime_error("read_matrix: extra entries in row");
  }
  return m;
}

void write_state(std::ostream& os, const StateVector& s) {
  os << "qbaker-state v1 dim=" << s.dim() << " basis=" << to_string(s.basis)
     << " sector=" << to_string(s.sector) << '\n';
  for (int i = 0; i < s.dim(); ++i) os << format_complex(s.coeffs(i)) << '\n';
}

StateVector read_state(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("qbaker-state v1 ", 0) != 0)
    throw std::runtime_error("read_state: not a qbaker-state v1 file");
  const int dim = std::stoi(header_field(line, "dim"));
  if (dim <= 0) throw std::runtime_error("read_state: bad dimension");
  const BasisKind basis = basis_from_string(header_field(line, "basis"));
  const SectorTag sector = sector_from_string(header_field(line, "sector"));

  Vector c(dim);
  for (int i = 0; i < dim; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("read_state: truncated file");
    c(i) = parse_complex(line);
  }
  return StateVector(std::move(c), basis, sector);
}

void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  static std::mt19937_64 rng(std::random_device{}());
  const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  const fs::path tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rng()));

  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
    writer(os);
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::ios_base::failure("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::ios_base::failure("rename to " + path.string() + " failed: " + ec.message());
  }
}

}  // namespace qbaker
