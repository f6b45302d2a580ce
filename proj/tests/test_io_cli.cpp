#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "qbaker/io.hpp"
#include "qbaker/propagator.hpp"

using namespace qbaker;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QBAKER_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qbaker_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("g17 formatting round trips") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, int(rng() % 40) - 20);
    CHECK(std::strtod(format_g17(v).c_str(), nullptr) == v);
  }
  CHECK(format_g17(0.5) == "0.5");
  CHECK(format_g17(1.0) == "1");
}

TEST_CASE("matrix format round trip") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  Matrix m(5, 5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) m(r, c) = Complex(g(rng), g(rng));

  std::ostringstream os;
  write_matrix(os, m);
  std::istringstream is(os.str());
  const Matrix back = read_matrix(is);
  REQUIRE(back.rows() == 5);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);  // g17 is exact

  std::istringstream bad1("qbaker-matrix v2 dim=2\n");
  CHECK_THROWS_AS(read_matrix(bad1), std::runtime_error);
  std::istringstream bad2("qbaker-matrix v1 dim=2\n1,0 0,0\n");
  CHECK_THROWS_AS(read_matrix(bad2), std::runtime_error);
  std::istringstream bad3("qbaker-matrix v1 dim=2\n1,0 0,0 0,0\n1,0 0,0\n");
  CHECK_THROWS_AS(read_matrix(bad3), std::runtime_error);
}

TEST_CASE("state format round trip") {
  Vector c(3);
  c << Complex(0.1, -0.2), Complex(0.0, 1.0), Complex(-3.5, 0.25);
  const StateVector s(c, BasisKind::momentum, SectorTag::theta_0half);

  std::ostringstream os;
  write_state(os, s);
  CHECK(os.str().rfind("qbaker-state v1 dim=3 basis=momentum sector=theta_0half\n", 0) == 0);

  std::istringstream is(os.str());
  const StateVector back = read_state(is);
  CHECK(back.basis == BasisKind::momentum);
  CHECK(back.sector == SectorTag::theta_0half);
  CHECK((back.coeffs - c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("atomic write") {
  TempDir tmp;
  const fs::path target = tmp.path / "out.txt";
  atomic_write(target, [](std::ostream& os) { os << "payload\n"; });
  CHECK(read_file(target) == "payload\n");
  // no stray temp files
  int entries = 0;
  for (auto& e : fs::directory_iterator(tmp.path)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("cli matrix command") {
  TempDir tmp;
  const fs::path out = tmp.path / "m2.qm";
  CHECK(run_cli("matrix --n 2 --variant parity --out " + out.string()) == 0);

  std::ifstream is(out);
  const Matrix m = read_matrix(is);
  const Matrix want = corrected_matrix(HilbertConfig(2)).matrix;
  CHECK((m - want).cwiseAbs().maxCoeff() == 0.0);

  CHECK(run_cli("matrix --n 3 --out " + (tmp.path / "x.qm").string() + " 2>/dev/null") == 2);

  // determinism: identical invocations produce byte-identical files
  const fs::path out2 = tmp.path / "m2_again.qm";
  CHECK(run_cli("matrix --n 2 --variant parity --out " + out2.string()) == 0);
  CHECK(read_file(out) == read_file(out2));
}

TEST_CASE("cli even rows agree between variants") {
  TempDir tmp;
  const fs::path bv = tmp.path / "bv.qm";
  const fs::path parity = tmp.path / "parity.qm";
  CHECK(run_cli("matrix --n 8 --variant bv --out " + bv.string()) == 0);
  CHECK(run_cli("matrix --n 8 --variant parity --out " + parity.string()) == 0);

  std::istringstream bs(read_file(bv)), ps(read_file(parity));
  std::string bline, pline;
  std::getline(bs, bline);
  std::getline(ps, pline);  // headers
  for (int row = 0; row < 8; ++row) {
    REQUIRE(std::getline(bs, bline).good());
    REQUIRE(std::getline(ps, pline).good());
    if (row % 2 == 0) CHECK(bline == pline);  // byte identical
  }
}

TEST_CASE("cli verify command") {
  TempDir tmp;
  const fs::path rep = tmp.path / "report.csv";
  CHECK(run_cli("verify --n 16 --out " + rep.string()) == 0);
  const std::string report = read_file(rep);
  CHECK(report.find("check,value,threshold,pass") == 0);
  CHECK(report.find("false") == std::string::npos);

  const fs::path rep_bv = tmp.path / "report_bv.csv";
  CHECK(run_cli("verify --n 16 --variant bv --out " + rep_bv.string()) == 1);
  const std::string report_bv = read_file(rep_bv);
  CHECK(report_bv.find("parity_commutator") != std::string::npos);
  CHECK(report_bv.find("false") != std::string::npos);
  // unitarity still passes for bv
  std::istringstream rs(report_bv);
  std::string line;
  std::getline(rs, line);
  std::getline(rs, line);
  CHECK(line.find("unitarity") == 0);
  CHECK(line.find("true") != std::string::npos);

  // smallest dimension: oracle equivalence value below its threshold
  const fs::path rep2 = tmp.path / "report2.csv";
  CHECK(run_cli("verify --n 2 --out " + rep2.string()) == 0);
  std::istringstream r2(read_file(rep2));
  while (std::getline(r2, line)) {
    if (line.find("oracle_equivalence") == 0) {
      const double value = std::strtod(line.substr(line.find(',') + 1).c_str(), nullptr);
      CHECK(value < 1e-10);
    }
  }
}

TEST_CASE("cli evolve command") {
  TempDir tmp;
  const fs::path out = tmp.path / "state.qs";
  CHECK(run_cli("evolve --n 2 --basis-index 0 --steps 1 --variant parity --out " + out.string() +
                " 2>/dev/null") == 0);
  std::ifstream is(out);
  const StateVector s = read_state(is);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.coeffs(0) - r) <= 1e-12);
  CHECK(std::abs(s.coeffs(1) - Complex(0.0, r)) <= 1e-12);

  // steps=0 echoes the initial state
  const fs::path echo = tmp.path / "echo.qs";
  CHECK(run_cli("evolve --n 4 --basis-index 2 --steps 0 --out " + echo.string() +
                " 2>/dev/null") == 0);
  std::ifstream is2(echo);
  const StateVector s2 = read_state(is2);
  CHECK(std::abs(s2.coeffs(2) - 1.0) == 0.0);
  CHECK(s2.norm() == 1.0);

  CHECK(run_cli("evolve --n 4 --basis-index 9 --out " + echo.string() + " 2>/dev/null") == 2);
}

TEST_CASE("cli evolve long run keeps the norm") {
  TempDir tmp;
  const fs::path out = tmp.path / "long.qs";
  const fs::path err = tmp.path / "stderr.txt";
  CHECK(run_cli("evolve --n 1024 --basis-index 17 --steps 1000 --out " + out.string() + " 2> " +
                err.string()) == 0);
  const std::string log = read_file(err);
  const auto pos = log.find("norm_drift=");
  REQUIRE(pos != std::string::npos);
  const double drift = std::strtod(log.c_str() + pos + 11, nullptr);
  CHECK(drift < 1e-9);

  std::ifstream is(out);
  const StateVector s = read_state(is);
  CHECK(s.dim() == 1024);
  CHECK(std::abs(s.norm() - 1.0) < 1e-9);
}

TEST_CASE("cli spectrum command") {
  TempDir tmp;
  const fs::path ident = tmp.path / "ident.csv";
  CHECK(run_cli("spectrum --identity --n 3 --out " + ident.string()) == 0);
  CHECK(read_file(ident) == "index,phase\n0,0\n1,0\n2,0\n");

  // round trip: spectrum of a matrix file equals the in-process spectrum
  const fs::path mfile = tmp.path / "m16.qm";
  const fs::path s1 = tmp.path / "s1.csv";
  const fs::path s2 = tmp.path / "s2.csv";
  CHECK(run_cli("matrix --n 16 --variant parity --out " + mfile.string()) == 0);
  CHECK(run_cli("spectrum --in " + mfile.string() + " --out " + s1.string()) == 0);
  CHECK(run_cli("spectrum --n 16 --variant parity --out " + s2.string()) == 0);

  std::istringstream a(read_file(s1)), b(read_file(s2));
  std::string la, lb;
  std::getline(a, la);
  std::getline(b, lb);
  for (int i = 0; i < 16; ++i) {
    REQUIRE(std::getline(a, la).good());
    REQUIRE(std::getline(b, lb).good());
    const double pa = std::strtod(la.substr(la.find(',') + 1).c_str(), nullptr);
    const double pb = std::strtod(lb.substr(lb.find(',') + 1).c_str(), nullptr);
    CHECK(std::abs(pa - pb) <= 1e-12);
  }
}

TEST_CASE("cli classical-limit command") {
  TempDir tmp;
  const fs::path out = tmp.path / "limit.csv";
  CHECK(run_cli("classical-limit --a 1 --b 1 --x0 0.3 --p0 0.7 --n-list 8,16 --out " +
                out.string()) == 0);
  std::istringstream is(read_file(out));
  std::string line;
  std::getline(is, line);
  CHECK(line == "N,re_q,im_q,re_c,im_c,error");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 2);

  CHECK(run_cli("classical-limit --a 1 --b 1 --x0 0.5 --p0 0.7 --n-list 8 --out " +
                (tmp.path / "bad.csv").string() + " 2>/dev/null") == 2);
}

TEST_CASE("cli phase portrait") {
  TempDir tmp;
  const fs::path out = tmp.path / "portrait.csv";
  CHECK(run_cli("phase-portrait --n 16 --basis-index 3 --grid 8 --out " + out.string()) == 0);

  std::istringstream is(read_file(out));
  std::string line;
  std::getline(is, line);
  CHECK(line == "x0,p0,overlap");

  // a position comb state gives overlaps independent of p0
  double col[8][8];
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      REQUIRE(std::getline(is, line).good());
      const auto last = line.rfind(',');
      col[i][j] = std::strtod(line.substr(last + 1).c_str(), nullptr);
    }
  }
  for (int i = 0; i < 8; ++i) {
    double lo = col[i][0], hi = col[i][0];
    for (int j = 1; j < 8; ++j) {
      lo = std::min(lo, col[i][j]);
      hi = std::max(hi, col[i][j]);
    }
    CHECK(hi - lo <= 1e-4);
  }
}
