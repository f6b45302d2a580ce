// qbaker: constructs the parity-conserving quantization of the baker's map,
// verifies its structural properties, evolves states, and runs the
// classical-limit experiment. All outputs are deterministic text files.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qbaker/classical.hpp"
#include "qbaker/hilbert.hpp"
#include "qbaker/io.hpp"
#include "qbaker/propagator.hpp"
#include "qbaker/sector_oracle.hpp"
#include "qbaker/semiclassics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

using qbaker::Complex;
using qbaker::Matrix;
using qbaker::Vector;

// "-" or empty writes to stdout; anything else is written atomically.
void write_output(const std::string& out,
                  const std::function<void(std::ostream&)>& writer) {
  if (out.empty() || out == "-") {
    writer(std::cout);
    std::cout.flush();
    if (!std::cout) throw std::ios_base::failure("stdout write failed");
  } else {
    qbaker::atomic_write(out, writer);
  }
}

Matrix variant_matrix(const qbaker::HilbertConfig& cfg, const std::string& variant) {
  return qbaker::variant_from_string(variant) == qbaker::PropagatorVariant::balazs_voros
             ? qbaker::bv_matrix(cfg).matrix
             : qbaker::corrected_matrix(cfg).matrix;
}

int cmd_matrix(int n, const std::string& variant, const std::string& out) {
  const qbaker::HilbertConfig cfg(n);
  const Matrix m = variant_matrix(cfg, variant);
  write_output(out, [&](std::ostream& os) { qbaker::write_matrix(os, m); });
  return kExitOk;
}

int cmd_spectrum(std::optional<int> n, const std::string& variant,
                 const std::string& in_file, bool identity, const std::string& out) {
  Matrix m;
  if (!in_file.empty()) {
    std::ifstream is(in_file);
    if (!is) throw std::ios_base::failure("cannot open " + in_file);
    m = qbaker::read_matrix(is);
  } else if (identity) {
    if (!n) throw CLI::ValidationError("--identity requires --n");
    m = Matrix::Identity(*n, *n);
  } else {
    if (!n) throw CLI::ValidationError("spectrum requires --n or --in");
    m = variant_matrix(qbaker::HilbertConfig(*n), variant);
  }
  const std::vector<double> phases = qbaker::eigenphases(m);
  write_output(out, [&](std::ostream& os) {
    os << "index,phase\n";
    for (size_t i = 0; i < phases.size(); ++i)
      os << i << ',' << qbaker::format_g17(phases[i]) << '\n';
  });
  return kExitOk;
}

int cmd_evolve(int n, const std::string& variant, int steps,
               std::optional<int> basis_index, std::optional<double> x0,
               std::optional<double> p0, const std::string& out) {
  const qbaker::HilbertConfig cfg(n);
  if (steps < 0) throw CLI::ValidationError("--steps must be >= 0");

  qbaker::StateVector state;
  if (basis_index) {
    if (x0 || p0) throw CLI::ValidationError("give either --basis-index or --x0/--p0");
    if (*basis_index < 0 || *basis_index >= n)
      throw CLI::ValidationError("--basis-index out of range");
    Vector c = Vector::Zero(n);
    c(*basis_index) = 1.0;
    state = qbaker::StateVector(std::move(c), qbaker::BasisKind::position,
                                qbaker::SectorTag::theta_00);
  } else if (x0 && p0) {
    state = qbaker::project_to_sector(qbaker::CoherentParams::for_sector(*x0, *p0, cfg), cfg);
  } else {
    throw CLI::ValidationError("initial state required: --basis-index or --x0 and --p0");
  }

  const auto var = qbaker::variant_from_string(variant);
  double drift = 0.0;
  for (int s = 0; s < steps; ++s) {
    state = qbaker::apply_fast(state, var, cfg);
    drift = std::max(drift, std::abs(state.norm() - 1.0));
  }
  write_output(out, [&](std::ostream& os) { qbaker::write_state(os, state); });
  std::cerr << "norm_drift=" << qbaker::format_g17(drift) << '\n';
  if (drift > steps * 1e-12) {
    std::cerr << "norm drift exceeds " << steps << "*1e-12\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_verify(int n, const std::string& variant, const std::string& out) {
  const qbaker::HilbertConfig cfg(n);
  const Matrix m = variant_matrix(cfg, variant);
  const Matrix corrected = qbaker::corrected_matrix(cfg).matrix;

  struct Check {
    const char* name;
    double value;
    double threshold;
  };
  std::vector<Check> checks;
  checks.push_back({"unitarity", qbaker::unitary_defect(m), 1e-10});
  checks.push_back(
      {"parity_commutator", qbaker::commutator_defect(qbaker::parity_matrix(cfg), m), 1e-12});
  checks.push_back({"oracle_equivalence",
                    (qbaker::oracle_block_raw(cfg) - corrected).cwiseAbs().maxCoeff(), 1e-10});
  checks.push_back({"sector_leakage", qbaker::fixed_point_check(cfg), 1e-12});

  bool all_pass = true;
  write_output(out, [&](std::ostream& os) {
    os << "check,value,threshold,pass\n";
    for (const auto& c : checks) {
      const bool pass = c.value < c.threshold;
      all_pass = all_pass && pass;
      os << c.name << ',' << qbaker::format_g17(c.value) << ','
         << qbaker::format_g17(c.threshold) << ',' << (pass ? "true" : "false") << '\n';
    }
  });
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_classical_limit(int a, int b, double x0, double p0, std::vector<int> n_list,
                        const std::string& variant, const std::string& out) {
  const auto report = qbaker::weak_limit_experiment(
      a, b, x0, p0, n_list, qbaker::variant_from_string(variant));
  write_output(out, [&](std::ostream& os) { qbaker::write_limit_csv(os, report); });
  return kExitOk;
}

int cmd_phase_portrait(std::optional<int> n, std::optional<int> basis_index,
                       std::optional<double> x0, std::optional<double> p0,
                       const std::string& state_file, int grid, const std::string& out) {
  if (grid < 1) throw CLI::ValidationError("--grid must be >= 1");

  qbaker::StateVector psi;
  if (!state_file.empty()) {
    std::ifstream is(state_file);
    if (!is) throw std::ios_base::failure("cannot open " + state_file);
    psi = qbaker::read_state(is);
    if (psi.basis == qbaker::BasisKind::momentum) psi = qbaker::to_position(psi);
    if (n && *n != psi.dim()) throw CLI::ValidationError("--n disagrees with state file");
  } else {
    if (!n) throw CLI::ValidationError("phase-portrait requires --n or --state");
    const qbaker::HilbertConfig cfg(*n);
    if (basis_index) {
      if (*basis_index < 0 || *basis_index >= *n)
        throw CLI::ValidationError("--basis-index out of range");
      Vector c = Vector::Zero(*n);
      c(*basis_index) = 1.0;
      psi = qbaker::StateVector(std::move(c), qbaker::BasisKind::position,
                                qbaker::SectorTag::theta_00);
    } else if (x0 && p0) {
      psi = qbaker::project_to_sector(qbaker::CoherentParams::for_sector(*x0, *p0, cfg), cfg);
    } else {
      throw CLI::ValidationError("state required: --basis-index, --x0/--p0, or --state");
    }
  }

  const qbaker::HilbertConfig cfg(psi.dim());
  write_output(out, [&](std::ostream& os) {
    os << "x0,p0,overlap\n";
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const double gx = static_cast<double>(i) / grid;
        const double gp = static_cast<double>(j) / grid;
        const Vector c =
            qbaker::project_to_sector(qbaker::CoherentParams::for_sector(gx, gp, cfg), cfg)
                .coeffs;
        const double overlap = std::norm(c.dot(psi.coeffs));
        os << qbaker::format_g17(gx) << ',' << qbaker::format_g17(gp) << ','
           << qbaker::format_g17(overlap) << '\n';
      }
    }
  });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum baker's map toolkit"};
  app.require_subcommand(1);

  int n = 0;
  std::string variant = "parity";
  std::string out = "-";
  int steps = 0;
  std::optional<int> basis_index;
  std::optional<double> x0, p0;
  std::string in_file, state_file;
  bool identity = false;
  int a = 1, b = 1;
  std::vector<int> n_list;
  int grid = 32;

  auto* matrix = app.add_subcommand("matrix", "write the propagator matrix");
  matrix->add_option("--n", n, "sector dimension (even)")->required();
  matrix->add_option("--variant", variant, "bv or parity")->check(CLI::IsMember({"bv", "parity"}));
  matrix->add_option("--out", out, "output path, - for stdout");

  auto* spectrum = app.add_subcommand("spectrum", "eigenphases of the propagator");
  spectrum->add_option("--n", n, "sector dimension (even)");
  spectrum->add_option("--variant", variant, "bv or parity")->check(CLI::IsMember({"bv", "parity"}));
  spectrum->add_option("--in", in_file, "read a qbaker-matrix v1 file instead");
  spectrum->add_flag("--identity", identity, "debug: use the identity matrix");
  spectrum->add_option("--out", out, "output path, - for stdout");

  auto* evolve = app.add_subcommand("evolve", "apply the propagator repeatedly");
  evolve->add_option("--n", n, "sector dimension (even)")->required();
  evolve->add_option("--variant", variant, "bv or parity")->check(CLI::IsMember({"bv", "parity"}));
  evolve->add_option("--steps", steps, "number of applications");
  evolve->add_option("--basis-index", basis_index, "start from a position basis comb");
  evolve->add_option("--x0", x0, "coherent packet center x");
  evolve->add_option("--p0", p0, "coherent packet center p");
  evolve->add_option("--out", out, "output path, - for stdout");

  auto* verify = app.add_subcommand("verify", "run the structural checks");
  verify->add_option("--n", n, "sector dimension (even)")->required();
  verify->add_option("--variant", variant, "bv or parity")->check(CLI::IsMember({"bv", "parity"}));
  verify->add_option("--out", out, "report path, - for stdout");

  auto* climit = app.add_subcommand("classical-limit", "weak classical limit experiment");
  climit->add_option("--a", a, "harmonic exponent a");
  climit->add_option("--b", b, "harmonic exponent b");
  climit->add_option("--x0", x0, "packet center x")->required();
  climit->add_option("--p0", p0, "packet center p")->required();
  climit->add_option("--n-list", n_list, "ascending even dimensions")->required()->delimiter(',');
  climit->add_option("--variant", variant, "bv or parity")->check(CLI::IsMember({"bv", "parity"}));
  climit->add_option("--out", out, "output path, - for stdout");

  auto* portrait = app.add_subcommand("phase-portrait", "coherent-state overlap grid");
  portrait->add_option("--n", n, "sector dimension (even)");
  portrait->add_option("--basis-index", basis_index, "position basis comb state");
  portrait->add_option("--x0", x0, "coherent packet center x");
  portrait->add_option("--p0", p0, "coherent packet center p");
  portrait->add_option("--state", state_file, "read a qbaker-state v1 file");
  portrait->add_option("--grid", grid, "grid points per axis");
  portrait->add_option("--out", out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (matrix->parsed()) return cmd_matrix(n, variant, out);
    if (spectrum->parsed())
      return cmd_spectrum(spectrum->count("--n") ? std::optional<int>(n) : std::nullopt,
                          variant, in_file, identity, out);
    if (evolve->parsed()) return cmd_evolve(n, variant, steps, basis_index, x0, p0, out);
    if (verify->parsed()) return cmd_verify(n, variant, out);
    if (climit->parsed()) return cmd_classical_limit(a, b, *x0, *p0, n_list, variant, out);
    if (portrait->parsed())
      return cmd_phase_portrait(portrait->count("--n") ? std::optional<int>(n) : std::nullopt,
                                basis_index, x0, p0, state_file, grid, out);
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
