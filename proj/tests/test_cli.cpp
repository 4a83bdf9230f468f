#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "qcorr/cli.hpp"
#include "qcorr/dqc1.hpp"
#include "qcorr/state_io.hpp"

using namespace qcorr;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qcorr");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qcorr_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column_count(const char* header) { return parse_csv(header).front().size(); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("no subcommand is an input error") {
    CHECK(run_cli({}).code == cli::exit_code::kInvalidInput);
    CHECK(run_cli({"bogus"}).code == cli::exit_code::kInvalidInput);
  }

  TEST_CASE("conservation: passing run, CSV shape, summary row") {
    const auto r = run_cli({"conservation", "--samples", "4", "--seed", "9"});
    CHECK(r.code == cli::exit_code::kOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1 + 4 * 3 + 1);
    CHECK(r.out.rfind(cli::kConservationHeader, 0) == 0);
    for (const auto& row : rows) CHECK(row.size() == column_count(cli::kConservationHeader));
    CHECK(rows[1][1] == "9");
    CHECK(rows[3][1] == "9");
    CHECK(rows[4][1] == "10");
    CHECK(rows.back()[0] == "max_abs");
  }

  TEST_CASE("conservation: impossible tolerance exits 1 and names the worst case") {
    const auto r = run_cli({"conservation", "--samples", "2", "--tol", "1e-15"});
    CHECK(r.code == cli::exit_code::kToleranceFailure);
    CHECK(r.err.find("seed") != std::string::npos);
  }

  TEST_CASE("conservation: bad arguments exit 2") {
    CHECK(run_cli({"conservation", "--samples", "0"}).code == cli::exit_code::kInvalidInput);
    CHECK(run_cli({"conservation", "--opt-tol", "0.1"}).code == cli::exit_code::kInvalidInput);
    CHECK(run_cli({"conservation", "--format", "xml"}).code == cli::exit_code::kInvalidInput);
  }

  TEST_CASE("outputs are bit-identical for a fixed seed") {
    const auto a = run_cli({"conservation", "--samples", "3", "--seed", "5"});
    const auto b = run_cli({"conservation", "--samples", "3", "--seed", "5"});
    CHECK(a.out == b.out);
    const auto c = run_cli({"ssa-sweep", "--alpha-steps", "5"});
    const auto d = run_cli({"ssa-sweep", "--alpha-steps", "5"});
    CHECK(c.out == d.out);
  }

  TEST_CASE("dqc1 with a unitary file") {
    CMatrix u = CMatrix::Zero(2, 2);
    u(0, 0) = 1.0;
    u(1, 1) = cplx(0.0, 1.0);
    const auto path = scratch("phase.json");
    io::write_json_file(path, io::to_json(UnitaryMatrix(u)));
    const auto r = run_cli({"dqc1", "--n", "1", "--unitary", path.string(), "--format", "json"});
    CHECK(r.code == cli::exit_code::kOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["estimate_re"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(doc["estimate_im"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(doc["D_BA"].get<double>() >= 0.1);
    CHECK(doc["negativity_AB"].get<double>() <= 1e-10);
  }

  TEST_CASE("dqc1 random unitary, CSV, n = 1 and 3") {
    const auto r = run_cli({"dqc1", "--n", "1", "--seed", "3"});
    CHECK(r.code == cli::exit_code::kOk);
    for (const auto& row : parse_csv(r.out)) CHECK(row.size() == column_count(cli::kDqc1Header));
    const auto big = run_cli({"dqc1", "--n", "3"});
    CHECK(big.code == cli::exit_code::kOk);
    CHECK(big.out.find("E_E(AB)") != std::string::npos);
    CHECK(run_cli({"dqc1", "--n", "4"}).code == cli::exit_code::kInvalidInput);
  }

  TEST_CASE("dqc1 rejects a unitary whose size disagrees with --n") {
    const auto path = scratch("z.json");
    io::write_json_file(path, io::to_json(UnitaryMatrix(pauli::z())));
    CHECK(run_cli({"dqc1", "--n", "2", "--unitary", path.string()}).code == cli::exit_code::kInvalidInput);
  }

  TEST_CASE("ssa-sweep: CSV shape and both signs of Delta") {
    const auto r = run_cli({"ssa-sweep", "--alpha-steps", "21"});
    CHECK(r.code == cli::exit_code::kOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 22);
    double lo = 1e9, hi = -1e9;
    for (std::size_t k = 1; k < rows.size(); ++k) {
      REQUIRE(rows[k].size() == column_count(cli::kSweepHeader));
      const double delta = std::stod(rows[k][10]);
      lo = std::min(lo, delta);
      hi = std::max(hi, delta);
    }
    CHECK(hi > 1e-3);
    CHECK(lo < -1e-3);
    CHECK(run_cli({"ssa-sweep", "--lambda", "1.5"}).code == cli::exit_code::kInvalidInput);
    CHECK(run_cli({"ssa-sweep", "--arrow", "left"}).code == cli::exit_code::kInvalidInput);
  }

  TEST_CASE("state-info on a Bell pair with a spectator") {
    const auto path = scratch("bell0.json");
    io::write_json_file(path, io::to_json(fixtures::bell_times_zero()));
    const auto r = run_cli({"state-info", path.string()});
    REQUIRE(r.code == cli::exit_code::kOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["kind"] == "pure");
    CHECK(doc["measures"]["E_AB"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(doc["measures"]["D_AE"].get<double>()) <= 1e-6);
    CHECK(std::abs(doc["ssa"]["Delta"].get<double>()) <= 1e-4);
    CHECK(std::abs(doc["residuals"]["r5"].get<double>()) <= 1e-4);
  }

  TEST_CASE("state-info agrees with the sweep row for the same family state") {
    const auto path = scratch("family.json");
    io::write_json_file(path, io::to_json(example_family_state(0.2, 0.9)));
    const auto info = run_cli({"state-info", path.string()});
    REQUIRE(info.code == cli::exit_code::kOk);
    const double delta = nlohmann::json::parse(info.out)["ssa"]["Delta"].get<double>();
    const auto sweep = parse_csv(run_cli({"ssa-sweep", "--alpha-steps", "11"}).out);
    REQUIRE(sweep[3][0] == "0.2");
    CHECK(std::stod(sweep[3][10]) == doctest::Approx(delta).epsilon(1e-6));
  }

  TEST_CASE("state-info rejects an unnormalized state") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 0.49;
    m(3, 3) = 0.49;
    nlohmann::json doc = {{"kind", "density"}, {"dims", {2, 2}}, {"labels", {"A", "B"}}};
    doc["entries"] = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) doc["entries"].push_back({m(i, j).real(), m(i, j).imag()});
    }
    const auto path = scratch("bad_trace.json");
    io::write_json_file(path, doc);
    const auto r = run_cli({"state-info", path.string()});
    CHECK(r.code == cli::exit_code::kInvalidInput);
    CHECK(r.err.find("trace") != std::string::npos);
    CHECK(run_cli({"state-info", scratch("missing.json").string()}).code == cli::exit_code::kInvalidInput);
  }

  TEST_CASE("unwritable output path exits 2") {
    const auto r = run_cli({"conservation", "--samples", "1", "--out", "/nonexistent_dir/x/out.csv"});
    CHECK(r.code == cli::exit_code::kInvalidInput);
    CHECK(r.err.find("cannot write") != std::string::npos);
  }

  TEST_CASE("output file matches stdout output") {
    const auto path = scratch("cons.csv");
    CHECK(run_cli({"conservation", "--samples", "2", "--out", path.string()}).code == cli::exit_code::kOk);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run_cli({"conservation", "--samples", "2"}).out);
  }

  TEST_CASE("number formatting") {
    CHECK(cli::format_number(0.2) == "0.2");
    CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(cli::format_number(-0.0) == "0");
  }
}
