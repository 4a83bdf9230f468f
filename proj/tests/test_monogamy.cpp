#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/monogamy.hpp"
#include "qcorr/random.hpp"

using namespace qcorr;

namespace {

const SubsystemLayout kABE = SubsystemLayout::uniform(2, {"A", "B", "E"});

// Wootters concurrence from the non-Hermitian product rho * rho~.
double oracle_eof(const oracle::Mat& rho) {
  oracle::Mat yy = oracle::Mat::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const oracle::Mat tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<oracle::Mat> es(rho * tilde);
  std::vector<double> l;
  for (Eigen::Index k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k).real())));
  std::sort(l.rbegin(), l.rend());
  const double c = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
  return oracle::binary_entropy((1 + std::sqrt(1 - c * c)) / 2);
}

}  // namespace

TEST_SUITE("koashi-winter") {
  TEST_CASE("reference states") {
    CHECK(std::abs(koashi_winter_residual(fixtures::bell_times_zero(), "A", "B", "E")) <= 1e-6);
    CHECK(std::abs(koashi_winter_residual(fixtures::ghz(), "A", "B", "E")) <= 1e-6);
    CHECK(std::abs(koashi_winter_residual(fixtures::w_state(), "A", "B", "E")) <= 1e-6);
  }

  TEST_CASE("labels are validated") {
    CHECK_THROWS_AS(koashi_winter_residual(fixtures::ghz(), "A", "A", "E"), LabelError);
    CHECK_THROWS_AS(koashi_winter_residual(fixtures::ghz(), "A", "B", "Z"), LabelError);
  }
}

TEST_SUITE("discord ledger") {
  TEST_CASE("product state is all zero") {
    const auto psi = PureState::basis(kABE, {0, 0, 0});
    const auto L = discord_ledger(psi);
    CHECK(L.s_a == 0.0);
    CHECK(std::abs(L.e_ab) <= 1e-12);
    CHECK(std::abs(L.discord_ab) <= 1e-9);
    CHECK(std::abs(L.discord_ae) <= 1e-9);
    CHECK(L.max_abs_residual() <= 1e-6);
  }

  TEST_CASE("W state: symmetric pairs, residuals vanish, discords match the grid oracle") {
    const auto w = fixtures::w_state();
    const auto L = discord_ledger(w);
    CHECK(L.e_ab == doctest::Approx(0.5500477595827576).epsilon(1e-8));
    CHECK(L.e_ae == doctest::Approx(L.e_ab).epsilon(1e-10));
    CHECK(L.max_abs_residual() <= 1e-4);
    const auto full = DensityMatrix(w).entries();
    const auto ab = oracle::qubit_discord(oracle::reduce(full, {2, 2, 2}, {0, 1}), 2);
    const auto ae = oracle::qubit_discord(oracle::reduce(full, {2, 2, 2}, {0, 2}), 2);
    CHECK(std::abs(L.discord_ab - ab.discord) <= 1e-6);
    CHECK(std::abs(L.discord_ae - ae.discord) <= 1e-6);
    CHECK(std::abs(L.j_ae - ae.j) <= 1e-6);
  }

  TEST_CASE("Bell pair with a spectator") {
    const auto L = discord_ledger(fixtures::bell_times_zero());
    CHECK(L.e_ab == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(L.e_ae) <= 1e-12);
    CHECK(L.discord_ab == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(L.discord_ae) <= 1e-6);
    CHECK(L.max_abs_residual() <= 1e-6);
  }

  TEST_CASE("random states: residuals within 1e-4 and bipartition EOFs equal marginal entropies") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto psi = random_pure_state(kABE, 1000 + seed);
      const auto L = discord_ledger(psi);
      CHECK(L.max_abs_residual() <= 1e-4);
      CHECK(L.e_a_be == doctest::Approx(L.s_a).epsilon(1e-12));
      CHECK(L.s_ab == doctest::Approx(L.s_e).epsilon(1e-8));
      CHECK(L.s_a == doctest::Approx(oracle::entropy(oracle::reduce(DensityMatrix(psi).entries(), {2, 2, 2}, {0})))
                         .epsilon(1e-10));
    }
  }

  TEST_CASE("roles follow layout order") {
    const auto psi = random_pure_state(kABE, 7);
    const auto swapped = permute(psi, {"B", "A", "E"});
    const auto L = discord_ledger(psi);
    const auto M = discord_ledger(swapped);
    CHECK(M.labels[0] == "B");
    CHECK(std::abs(M.e_ab - L.e_ab) <= 1e-7);
    CHECK(M.s_a == doctest::Approx(L.s_b).epsilon(1e-10));
  }

  TEST_CASE("non-qubit layouts are rejected") {
    const auto psi = random_pure_state(SubsystemLayout({2, 3, 2}, {"A", "B", "E"}), 1);
    CHECK_THROWS_AS(discord_ledger(psi), UnsupportedDimensionError);
  }
}

TEST_SUITE("conservation") {
  TEST_CASE("every focus balances on random states") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto psi = random_pure_state(kABE, 2000 + seed);
      for (const char* focus : {"A", "B", "E"}) CHECK(std::abs(conservation_residual(psi, focus)) <= 1e-4);
    }
  }
}

TEST_SUITE("delta balance") {
  TEST_CASE("pure states give delta = 0") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DensityMatrix rho(random_pure_state(kABE, 3000 + seed));
      const auto r = delta_balance(rho, "A", "B", "E");
      CHECK(std::abs(r.delta) <= 1e-4);
      CHECK(r.ss_holds);
      CHECK(r.strengthened_holds);
    }
  }

  TEST_CASE("classical diagonal state has no entanglement or discord") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
    const double p[8] = {0.3, 0.1, 0.05, 0.15, 0.1, 0.1, 0.05, 0.15};
    for (int k = 0; k < 8; ++k) m(k, k) = p[k];
    const auto r = delta_balance(DensityMatrix(m, kABE), "A", "B", "E");
    CHECK(std::abs(r.delta) <= 1e-9);
    CHECK(r.i1 >= -1e-12);
    CHECK(r.i2 == doctest::Approx(r.i1).epsilon(1e-9));
  }

  TEST_CASE("family point alpha = 0.2, lambda = 0.9 against independent oracles") {
    const auto rho = example_family_state(0.2, 0.9);
    const auto r = delta_balance(rho, "A", "B", "E");
    const auto full = rho.entries();
    const auto ab = oracle::reduce(full, {2, 2, 2}, {0, 1});
    const auto ae = oracle::reduce(full, {2, 2, 2}, {0, 2});
    const double delta = oracle_eof(ab) + oracle_eof(ae) - oracle::qubit_discord(ab, 2).discord -
                         oracle::qubit_discord(ae, 2).discord;
    CHECK(r.delta == doctest::Approx(delta).epsilon(1e-6));
    CHECK(r.delta < -1e-3);
    CHECK(r.delta_tilde == 0.0);
  }

  TEST_CASE("arrow convention changes the discords") {
    const auto rho = example_family_state(0.4, 0.9);
    const auto second = delta_balance(rho, "A", "B", "E", {}, ArrowConvention::kMeasureSecond);
    const auto first = delta_balance(rho, "A", "B", "E", {}, ArrowConvention::kMeasureFirst);
    const auto ab = oracle::swap_factors(oracle::reduce(rho.entries(), {2, 2, 2}, {0, 1}), 2, 2);
    CHECK(first.discord_ab == doctest::Approx(oracle::qubit_discord(ab, 2).discord).epsilon(1e-6));
    CHECK(second.e_ab == first.e_ab);
  }
}

TEST_SUITE("example family") {
  TEST_CASE("corners") {
    const auto zero = example_family_state(1.0, 1.0);
    CHECK(std::abs(zero.entries()(0, 0) - 1.0) <= 1e-12);
    const auto mixed = example_family_state(0.3, 0.0);
    CHECK(max_abs_diff(mixed.entries(), Eigen::MatrixXcd::Identity(8, 8) / 8.0) <= 1e-15);
    // alpha = 0: (|101> + |011>)/sqrt2, so E is |1> and A B share a Bell-like pair.
    const auto pure = example_family_state(0.0, 1.0);
    CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(von_neumann_entropy(pure, {"A"}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(von_neumann_entropy(pure, {"E"}) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(example_family_state(1.2, 0.5), InvariantError);
    CHECK_THROWS_AS(example_family_state(0.5, -0.1), InvariantError);
  }

  TEST_CASE("uniform grid") {
    const auto g = uniform_grid(201);
    REQUIRE(g.size() == 201);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(g[40] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(uniform_grid(1) == std::vector<double>{0.0});
    CHECK_THROWS_AS(uniform_grid(0), InvariantError);
  }
}

TEST_SUITE("ssa sweep") {
  TEST_CASE("three-point sweep holds both inequalities") {
    const auto pts = ssa_sweep(0.9, {0.0, 0.5, 1.0});
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) {
      CHECK(p.ss_holds);
      CHECK(p.strengthened_holds);
      CHECK(p.i2 == doctest::Approx(p.i1 - p.delta).epsilon(1e-12));
    }
  }

  TEST_CASE("delta changes sign on the full grid") {
    const auto pts = ssa_sweep(0.9, uniform_grid(41));
    double lo = 1e9, hi = -1e9;
    for (const auto& p : pts) {
      lo = std::min(lo, p.delta);
      hi = std::max(hi, p.delta);
      CHECK(p.i1 >= -kEntropyInequalityTol);
    }
    CHECK(hi > 1e-3);
    CHECK(lo < -1e-3);
  }

  TEST_CASE("fully mixed family has delta = 0") {
    for (const auto& p : ssa_sweep(0.0, {0.0, 0.3, 0.7})) {
      CHECK(std::abs(p.delta) <= 1e-9);
      // 2 + 2 - 1 - 1 for I/8.
      CHECK(p.i1 == doctest::Approx(2.0).epsilon(1e-12));
    }
  }
}
