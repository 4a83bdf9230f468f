#include "qcorr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/dqc1.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state_io.hpp"

namespace qcorr::cli {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

// A cell of a report table. monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::vector<std::string> split_header(const char* header) {
  std::vector<std::string> out;
  std::stringstream ss(header);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.header.size(); ++k) os << (k ? "," : "") << t.header[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              os << format_number(v);
            } else if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::string>) {
              os << v;
            }
          },
          row[k]);
    }
    os << '\n';
  }
  return os.str();
}

json render_json_rows(const Table& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              obj[t.header[k]] = nullptr;
            } else {
              obj[t.header[k]] = v;
            }
          },
          row[k]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

std::string render(const Table& t, Format f) {
  if (f == Format::kCsv) return render_csv(t);
  return render_json_rows(t).dump(2) + "\n";
}

// Writes the report to cfg.output_path, or `out` when none is set.
bool emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.output_path.empty()) {
    out << text;
    return static_cast<bool>(out);
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) {
    err << "error: cannot write output file '" << cfg.output_path.string() << "'\n";
    return false;
  }
  f << text;
  if (!f) {
    err << "error: failed writing '" << cfg.output_path.string() << "'\n";
    return false;
  }
  return true;
}

OptimizerConfig optimizer_for(const RunConfig& cfg, std::uint64_t seed) {
  OptimizerConfig o = cfg.optimizer;
  o.seed = seed;
  return o;
}

std::vector<std::string> others(const std::vector<std::string>& labels, const std::string& focus) {
  std::vector<std::string> out;
  for (const auto& l : labels) {
    if (l != focus) out.push_back(l);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// conservation

int cmd_conservation(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.samples < 1) throw InvariantError("samples", "must be at least 1");
  if (!(cfg.tol > 0.0)) throw InvariantError("tol", "must be positive");
  const SubsystemLayout layout = SubsystemLayout::uniform(2, {"A", "B", "E"});

  Table t{split_header(kConservationHeader), {}};
  double worst = 0.0;
  std::uint64_t worst_seed = cfg.seed;
  std::string worst_focus = "A";
  double max_r[5] = {0, 0, 0, 0, 0};

  for (int i = 0; i < cfg.samples; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    const PureState psi = random_pure_state(layout, seed);
    for (const auto& focus : layout.labels()) {
      const auto rest = others(layout.labels(), focus);
      const PureState ordered = permute(psi, {focus, rest[0], rest[1]});
      const CorrelationLedger L = discord_ledger(ordered, optimizer_for(cfg, seed));
      const double r[5] = {L.r1, L.r2, L.r3, L.r4, L.r5};
      for (int k = 0; k < 5; ++k) max_r[k] = std::max(max_r[k], std::abs(r[k]));
      if (L.max_abs_residual() > worst) {
        worst = L.max_abs_residual();
        worst_seed = seed;
        worst_focus = focus;
      }
      t.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(seed), focus, rest[0],
                        rest[1], L.s_a, L.e_ab, L.e_ae, L.j_ae, L.discord_ab, L.discord_ae, L.r1, L.r2,
                        L.r3, L.r4, L.r5, L.spread_ab, L.spread_ae});
    }
  }
  std::vector<Cell> summary(t.header.size());
  summary[0] = std::string("max_abs");
  for (int k = 0; k < 5; ++k) summary[11 + static_cast<std::size_t>(k)] = max_r[k];
  t.rows.push_back(std::move(summary));

  if (!emit(cfg, render(t, cfg.format), out, err)) return exit_code::kInvalidInput;
  if (worst > cfg.tol) {
    err << "tolerance failure: max |residual| = " << format_number(worst) << " > tol "
        << format_number(cfg.tol) << " (worst sample seed " << worst_seed << ", focus " << worst_focus
        << ")\n";
    return exit_code::kToleranceFailure;
  }
  return exit_code::kOk;
}

// ---------------------------------------------------------------------------
// dqc1

int cmd_dqc1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const UnitaryMatrix u = cfg.unitary ? io::read_unitary_file(*cfg.unitary)
                                      : [&] {
                                          if (cfg.n < 1 || cfg.n > kMaxDqc1Qubits) {
                                            throw InvariantError("n", "must lie in [1, 3]");
                                          }
                                          return random_unitary(std::size_t{1} << cfg.n, cfg.seed);
                                        }();
  const Dqc1Instance inst = Dqc1Instance::standard(u);
  if (cfg.unitary && cfg.n_explicit && inst.n() != cfg.n) {
    throw InvariantError("n", "--n " + std::to_string(cfg.n) + " disagrees with the " + std::to_string(inst.n()) +
                                  "-qubit unitary file");
  }
  const DensityMatrix rho_ab = build_dqc1_state(inst);
  const PureState psi = build_dqc1_purification(inst);

  const cplx exact = u.entries().trace();
  const cplx normalized = normalized_trace_estimate(rho_ab);
  const cplx estimate = trace_estimate(rho_ab);
  const double scale = std::ldexp(1.0, inst.n() + 1);
  const double trace_error = std::abs(estimate - exact);
  const double neg = negativity(rho_ab, "A");
  const double purification_error = max_abs_diff(partial_trace(psi, {"A", "B"}).entries(), rho_ab.entries());

  Table t{split_header(kDqc1Header), {}};
  auto row = [&](const char* name, Cell v) { t.rows.push_back({std::string(name), std::move(v)}); };
  row("n", static_cast<std::int64_t>(inst.n()));
  row("exact_trace_re", exact.real());
  row("exact_trace_im", exact.imag());
  row("sigma_x", normalized.real());
  row("sigma_y", normalized.imag());
  row("estimate_re", estimate.real());
  row("estimate_im", estimate.imag());
  // Readout under a 2^{n+1} normalization of <sigma_x>, kept for comparison.
  row("estimate_2n1_re", scale * normalized.real());
  row("estimate_2n1_im", scale * normalized.imag());
  row("trace_error", trace_error);
  row("purification_error", purification_error);
  row("negativity_AB", neg);

  bool ok = trace_error <= 1e-9 && neg <= 1e-9;
  if (inst.n() <= kMaxDqc1LedgerQubits) {
    const Dqc1Ledger L = dqc1_ledger(inst, optimizer_for(cfg, cfg.seed));
    if (L.concurrence_ab) row("concurrence_AB", *L.concurrence_ab);
    row("E_AB", L.e_ab);
    row("E_AE", L.e_ae);
    row("E_BE", L.e_be);
    row("D_AB", L.discord_ab);
    row("D_BA", L.discord_ba);
    row("D_AE", L.discord_ae);
    row("D_BE", L.discord_be);
    row("E_A(BE)", L.e_a_be);
    row("E_B(AE)", L.e_b_ae);
    row("E_E(AB)", L.e_e_ab);
    row("r8", L.r8);
    row("r9", L.r9);
    row("r10", L.r10);
    row("spread_BA", L.spread_ba);
    row("spread_BE", L.spread_be);
    const double worst_r = std::max({std::abs(L.r8), std::abs(L.r9), std::abs(L.r10)});
    if (worst_r > kDiscordSlack) {
      err << "tolerance failure: max |r8,r9,r10| = " << format_number(worst_r) << "\n";
      ok = false;
    }
  } else {
    row("E_A(BE)", von_neumann_entropy(psi, {"A"}));
    row("E_B(AE)", von_neumann_entropy(psi, {"B"}));
    row("E_E(AB)", von_neumann_entropy(psi, {"E"}));
  }
  if (trace_error > 1e-9) err << "tolerance failure: |estimate - Tr U| = " << format_number(trace_error) << "\n";
  if (neg > 1e-9) err << "tolerance failure: negativity(A:B) = " << format_number(neg) << "\n";

  std::string text;
  if (cfg.format == Format::kCsv) {
    text = render_csv(t);
  } else {
    json obj = json::object();
    for (const auto& r : render_json_rows(t)) obj[r["quantity"].get<std::string>()] = r["value"];
    text = obj.dump(2) + "\n";
  }
  if (!emit(cfg, text, out, err)) return exit_code::kInvalidInput;
  return ok ? exit_code::kOk : exit_code::kToleranceFailure;
}

// ---------------------------------------------------------------------------
// ssa-sweep

int cmd_ssa_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) throw InvariantError("lambda", "must lie in [0, 1]");
  const auto grid = uniform_grid(cfg.alpha_steps);
  const auto reports = ssa_sweep(cfg.lambda, grid, optimizer_for(cfg, cfg.seed), cfg.arrow);

  Table t{split_header(kSweepHeader), {}};
  bool ok = true;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double alpha = grid[k];
    const double p = std::sqrt(std::max(0.0, (1.0 - alpha * alpha) / 2.0));
    const SsaReport& r = reports[k];
    if (!r.ss_holds || !r.strengthened_holds) {
      err << "inequality failure at alpha = " << format_number(alpha) << ": I1 = " << format_number(r.i1)
          << ", I1 - Delta_tilde = " << format_number(r.i1 - r.delta_tilde) << "\n";
      ok = false;
    }
    t.rows.push_back({alpha, p, r.s_ab, r.s_ae, r.s_b, r.s_e, r.e_ab, r.e_ae, r.discord_ab, r.discord_ae,
                      r.delta, r.delta_tilde, r.i1, r.i2, r.spread_ab, r.spread_ae});
  }
  if (!emit(cfg, render(t, cfg.format), out, err)) return exit_code::kInvalidInput;
  return ok ? exit_code::kOk : exit_code::kToleranceFailure;
}

// ---------------------------------------------------------------------------
// state-info

namespace {

DensityMatrix marginal(const QuantumState& s, const std::vector<std::string>& keep) {
  return std::visit([&](const auto& st) { return partial_trace(st, keep); }, s);
}

const SubsystemLayout& layout_of(const QuantumState& s) {
  return std::visit([](const auto& st) -> const SubsystemLayout& { return st.layout(); }, s);
}

}  // namespace

int cmd_state_info(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.state_file) throw ParseError("state-info: a state file argument is required");
  const QuantumState state = io::read_state_file(*cfg.state_file);
  const SubsystemLayout& layout = layout_of(state);
  const auto& labels = layout.labels();
  const bool pure = std::holds_alternative<PureState>(state);

  json report;
  report["valid"] = true;
  report["kind"] = pure ? "pure" : "density";
  report["dims"] = layout.dims();
  report["labels"] = labels;

  json entropies = json::object();
  for (const auto& l : labels) entropies["S_" + l] = von_neumann_entropy(marginal(state, {l}));
  if (!pure) {
    const auto& rho = std::get<DensityMatrix>(state);
    entropies["S_total"] = von_neumann_entropy(rho);
    report["purity"] = (rho.entries() * rho.entries()).trace().real();
    report["min_eigenvalue"] = eigvalsh(rho.entries()).minCoeff();
  } else {
    entropies["S_total"] = 0.0;
    report["purity"] = 1.0;
  }

  json measures = json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      const std::string& x = labels[i];
      const std::string& y = labels[j];
      const DensityMatrix pair = marginal(state, {x, y});
      entropies["S_" + x + y] = von_neumann_entropy(pair);
      measures["I_" + x + y] = mutual_information(pair, {x, y});
      measures["N_" + x + y] = negativity(pair, x);
      if (layout.dim_of(x) == 2 && layout.dim_of(y) == 2) measures["E_" + x + y] = eof_two_qubit(pair);
      if (layout.dim_of(y) <= kMaxMeasuredDim) {
        const auto d = quantum_discord(pair, x, y, optimizer_for(cfg, cfg.seed));
        measures["D_" + x + y] = d.value;
        measures["spread_D_" + x + y] = d.spread;
      }
      if (layout.dim_of(x) <= kMaxMeasuredDim) {
        const auto d = quantum_discord(pair, y, x, optimizer_for(cfg, cfg.seed));
        measures["D_" + y + x] = d.value;
        measures["spread_D_" + y + x] = d.spread;
      }
    }
  }
  report["entropies"] = std::move(entropies);
  report["measures"] = std::move(measures);

  const bool qubit_triple = labels.size() == 3 &&
                            std::all_of(layout.dims().begin(), layout.dims().end(), [](std::size_t d) { return d == 2; });
  if (qubit_triple) {
    const DensityMatrix rho = marginal(state, labels);
    const SsaReport r = delta_balance(rho, labels[0], labels[1], labels[2], optimizer_for(cfg, cfg.seed), cfg.arrow);
    report["ssa"] = {{"Delta", r.delta},       {"Delta_tilde", r.delta_tilde},
                     {"I1", r.i1},             {"I2", r.i2},
                     {"ss_holds", r.ss_holds}, {"strengthened_holds", r.strengthened_holds}};
    if (pure) {
      const CorrelationLedger L = discord_ledger(std::get<PureState>(state), optimizer_for(cfg, cfg.seed));
      report["residuals"] = {{"r1", L.r1}, {"r2", L.r2}, {"r3", L.r3}, {"r4", L.r4}, {"r5", L.r5}};
    }
  }

  if (!emit(cfg, report.dump(2) + "\n", out, err)) return exit_code::kInvalidInput;
  return exit_code::kOk;
}

// ---------------------------------------------------------------------------
// Entry point

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum correlation measures and monogamy checks on small multi-qubit systems", "qcorr"};
  app.require_subcommand(1);

  RunConfig cfg;
  int restarts = 0;
  std::string format = "csv";
  std::string arrow = "second";
  std::string out_path;
  std::string unitary_path;
  std::string state_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed; sample i uses seed + i")->capture_default_str();
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--restarts", restarts, "Optimizer restarts (default: by measured dimension)");
    sub->add_option("--opt-tol", cfg.optimizer.tol, "Optimizer stopping tolerance (bits)")->capture_default_str();
    sub->add_option("--max-iters", cfg.optimizer.max_iters, "Optimizer iteration cap per restart")->capture_default_str();
  };

  auto* conservation = app.add_subcommand("conservation", "Verify the EOF/discord identities on Haar-random 3-qubit states");
  add_common(conservation);
  conservation->add_option("--samples", cfg.samples, "Number of random states")->capture_default_str();
  conservation->add_option("--tol", cfg.tol, "Residual tolerance (bits)")->capture_default_str();

  auto* dqc1 = app.add_subcommand("dqc1", "Analyze the one-clean-qubit protocol for one unitary");
  add_common(dqc1);
  dqc1->add_option("--n", cfg.n, "Number of register qubits (1-3)")->capture_default_str();
  dqc1->add_option("--unitary", unitary_path, "Unitary JSON file (default: Haar-random from --seed)");

  auto* sweep = app.add_subcommand("ssa-sweep", "Delta, I1, I2 along the example state family");
  add_common(sweep);
  sweep->add_option("--lambda", cfg.lambda, "Mixing weight lambda in [0, 1]")->capture_default_str();
  sweep->add_option("--alpha-steps", cfg.alpha_steps, "Number of alpha grid points on [0, 1]")->capture_default_str();
  sweep->add_option("--arrow", arrow, "Discord measurement side inside Delta: second or first")
      ->check(CLI::IsMember({"second", "first"}))
      ->capture_default_str();

  auto* info = app.add_subcommand("state-info", "Entropies and pairwise measures of a state file");
  add_common(info);
  info->add_option("state", state_path, "State JSON file")->required();
  info->add_option("--arrow", arrow, "Discord measurement side inside Delta: second or first")
      ->check(CLI::IsMember({"second", "first"}));

  try {
    if (args.size() <= 1) throw CLI::CallForHelp();
    // CLI11 consumes the argument vector from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return args.size() <= 1 ? exit_code::kInvalidInput : exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInvalidInput;
  }

  if (conservation->parsed()) cfg.command = Command::kConservation;
  if (dqc1->parsed()) cfg.command = Command::kDqc1;
  if (sweep->parsed()) cfg.command = Command::kSsaSweep;
  if (info->parsed()) cfg.command = Command::kStateInfo;
  cfg.format = format == "json" ? Format::kJson : Format::kCsv;
  cfg.arrow = arrow == "first" ? ArrowConvention::kMeasureFirst : ArrowConvention::kMeasureSecond;
  if (restarts != 0) cfg.optimizer.restarts = restarts;
  cfg.n_explicit = dqc1->count("--n") > 0;
  if (!out_path.empty()) cfg.output_path = out_path;
  if (!unitary_path.empty()) cfg.unitary = unitary_path;
  if (!state_path.empty()) cfg.state_file = state_path;

  try {
    cfg.optimizer.validate();
    switch (cfg.command) {
      case Command::kConservation: return cmd_conservation(cfg, out, err);
      case Command::kDqc1: return cmd_dqc1(cfg, out, err);
      case Command::kSsaSweep: return cmd_ssa_sweep(cfg, out, err);
      case Command::kStateInfo: return cmd_state_info(cfg, out, err);
    }
  } catch (const InvariantError& e) {
    err << "invalid input: " << e.what() << "\n";
    return exit_code::kInvalidInput;
  } catch (const InternalConsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return exit_code::kInternalInconsistency;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInvalidInput;
  }
  return exit_code::kInvalidInput;
}

}  // namespace qcorr::cli
