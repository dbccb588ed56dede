#include "bcast/cli.hpp"

#include "bcast/analysis.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

namespace bcast::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr double kStateNormTolerance = 1e-6;

enum class Format { csv, json, table };

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Column {
  std::string name;
  int decimals = -1;  // -1: six significant digits
};

using Cell = std::variant<std::monostate, double, bool, std::string>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  json result;
  Table table;
};

struct Settings {
  Format format = Format::table;
  int grid = 10001;
  double tolerance = kDefaultSeparabilityThreshold;
  std::string tolerance_source = "default";
};

std::string format_number(double v, int decimals) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // no "-0"
  if (decimals < 0)
    std::snprintf(buf, sizeof buf, "%.6g", v);
  else
    std::snprintf(buf, sizeof buf, "%.*f", decimals, round_half_up(v, decimals));
  return buf;
}

std::string render_cell(const Cell& c, int decimals, bool csv) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return csv ? "" : "-";
        else if constexpr (std::is_same_v<T, double>)
          return format_number(v, csv ? -1 : decimals);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return v;
      },
      c);
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i].name;
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render_cell(row[i], -1, true);
    out << '\n';
  }
}

void write_table(std::ostream& out, const Table& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].name.size();
  for (const auto& row : t.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(render_cell(row[i], t.columns[i].decimals, false));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << t.columns[i].name;
  out << '\n';
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i)
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << line[i];
    out << '\n';
  }
}

json interval_json(const Interval& i) {
  if (i.empty) return json{{"lo", nullptr}, {"hi", nullptr}, {"empty", true}};
  return json{{"lo", i.lo}, {"hi", i.hi}, {"empty", false}};
}

Cell lo_cell(const Interval& i) { return i.empty ? Cell{} : Cell{i.lo}; }
Cell hi_cell(const Interval& i) { return i.empty ? Cell{} : Cell{i.hi}; }

json verdict_json(const SeparabilityVerdict& v) {
  return json{{"verdict", std::string(to_string(v.verdict))},
              {"min_pt_eigenvalue", v.min_pt_eigenvalue},
              {"w2", v.w.w2},
              {"w3", v.w.w3},
              {"w4", v.w.w4},
              {"determinant_rule_inseparable", determinant_rule_inseparable(v.w)},
              {"input_valid", v.input_valid},
              {"boundary", v.boundary}};
}

json matrix_json(const Density& rho) {
  json entries = json::array();
  for (Index r = 0; r < rho.dim(); ++r)
    for (Index c = 0; c < rho.dim(); ++c) entries.push_back(json::array({rho(r, c).real(), rho(r, c).imag()}));
  return json{{"entries", std::move(entries)},
              {"trace", rho.trace()},
              {"min_eigenvalue", rho.min_eigenvalue()},
              {"positive", rho.is_positive()}};
}

// ---------------------------------------------------------------- commands

Output cmd_table1() {
  Output o;
  o.table.columns = {{"x"},          {"lambda_alpha_reading"}, {"lambda_alpha_reading_rounded", 3},
                     {"printed_lambda", 3}, {"lambda_alpha2_reading"}, {"alpha2_reading_matches_printed"},
                     {"d_a"},        {"d_a_rounded_lambda", 6}, {"printed_d_a", 6},
                     {"universal_lambda"}, {"universal_d_a", 6}};
  json rows = json::array();
  for (const auto& r : table1()) {
    const bool a2_match = std::abs(r.lambda_alpha2_reading - r.printed_lambda) <= 5e-4;
    rows.push_back(json{{"x", r.x},
                        {"lambda_alpha_reading", r.lambda_alpha_reading},
                        {"lambda_alpha_reading_rounded", r.lambda_rounded},
                        {"printed_lambda", r.printed_lambda},
                        {"lambda_alpha2_reading", r.lambda_alpha2_reading},
                        {"alpha2_reading_matches_printed", a2_match},
                        {"d_a", r.d_a},
                        {"d_a_rounded_lambda", r.d_a_rounded_lambda},
                        {"printed_d_a", r.printed_d_a},
                        {"universal_lambda", r.universal_lambda},
                        {"universal_d_a", r.universal_d_a}});
    o.table.rows.push_back({r.x, r.lambda_alpha_reading, r.lambda_rounded, r.printed_lambda,
                            r.lambda_alpha2_reading, a2_match, r.d_a, r.d_a_rounded_lambda, r.printed_d_a,
                            r.universal_lambda, r.universal_d_a});
  }
  o.result = json{{"note",
                   "first column read as alpha reproduces the printed lambda column; read as alpha^2 it does not. "
                   "printed D_a equals 2*lambda^2 of the three-decimal lambda"},
                  {"rows", std::move(rows)}};
  return o;
}

Output cmd_table2() {
  Output o;
  o.table.columns = {{"lambda", 3},    {"i1_lo", 5},    {"i1_hi", 5},  {"i2_lo", 5},
                     {"i2_hi", 5},     {"common_lo", 5}, {"common_hi", 5}, {"feasible"},
                     {"min_gram_eigenvalue"}};
  json rows = json::array();
  for (const auto& r : table2()) {
    rows.push_back(json{{"lambda", r.lambda},
                        {"nonlocal_inseparable", interval_json(r.nonlocal_inseparable)},
                        {"local_separable", interval_json(r.local_separable)},
                        {"broadcastable", interval_json(r.broadcastable)},
                        {"feasible", r.feasible},
                        {"min_gram_eigenvalue", r.min_gram_eigenvalue}});
    o.table.rows.push_back({r.lambda, lo_cell(r.nonlocal_inseparable), hi_cell(r.nonlocal_inseparable),
                            lo_cell(r.local_separable), hi_cell(r.local_separable), lo_cell(r.broadcastable),
                            hi_cell(r.broadcastable), r.feasible, r.min_gram_eigenvalue});
  }
  o.result = json{{"rows", std::move(rows)}};
  return o;
}

std::array<double, 4> parse_state(const std::string& text) {
  std::array<double, 4> v{};
  std::stringstream ss(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 4) throw UsageError("--state takes exactly four comma-separated numbers");
    std::size_t used = 0;
    try {
      v[n] = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--state: cannot parse '" + item + "' as a number");
    }
    if (used != item.size()) throw UsageError("--state: cannot parse '" + item + "' as a number");
    ++n;
  }
  if (n != 4) throw UsageError("--state takes exactly four comma-separated numbers");
  return v;
}

Output cmd_broadcast(const std::string& state_text, double lambda, bool use_oracle, const Settings& s) {
  const auto amps = parse_state(state_text);
  double norm = 0.0;
  for (double a : amps) norm += a * a;
  if (std::abs(norm - 1.0) > kStateNormTolerance)
    throw std::domain_error("state is not normalized: sum of squares = " + std::to_string(norm));
  const double scale = 1.0 / std::sqrt(norm);
  const PureTwoQubit chi(amps[0] * scale, Complex(amps[1] * scale, 0.0), amps[2] * scale, amps[3] * scale);
  const MachineParams p = make_machine(lambda);

  // Schmidt states use their dedicated closed forms; the general K-coefficient
  // forms do not reduce to them (they keep μαβ/2 coherences).
  const bool schmidt = chi.is_schmidt();
  const Density nonlocal_cf = schmidt ? nonlocal_output_schmidt(chi.a00(), chi.a11(), p)
                                      : nonlocal_output_general(chi, p);
  const LocalOutputs local_cf = schmidt ? LocalOutputs{local_output_schmidt(chi.a00(), chi.a11(), p),
                                                       local_output_schmidt(chi.a00(), chi.a11(), p)}
                                        : local_outputs_general(chi, p);

  Output o;
  json result{{"state", json::array({chi.a00(), chi.a11().real(), chi.a10(), chi.a01()})},
              {"lambda", lambda},
              {"source", use_oracle ? "oracle" : "closed_form"},
              {"closed_form_family", schmidt ? "schmidt" : "general"},
              {"min_gram_eigenvalue", gram_feasibility(p)}};

  std::optional<BroadcastReport> report;
  json extra = json::object();
  if (use_oracle) {
    const OracleOutputs oracle = broadcast_oracle(chi, p);
    report = assess_broadcast(oracle.ab_prime, oracle.aa_prime, oracle.bb_prime, s.tolerance);
    const OracleComparison cmp = compare_with_oracle(nonlocal_cf, local_cf, oracle);
    auto cmp_json = [](const MatrixComparison& c) {
      return json{{"max_abs_difference", c.max_abs_difference}, {"agrees", c.agrees}};
    };
    result["closed_form_comparison"] = json{{"rho_AB'", cmp_json(cmp.nonlocal)},
                                            {"rho_AA'", cmp_json(cmp.local_a)},
                                            {"rho_BB'", cmp_json(cmp.local_b)},
                                            {"rho_AB'_vs_rho_A'B", cmp_json(cmp.nonlocal_pair_symmetry)}};
    extra["rho_AB"] = matrix_json(oracle.ab);
    extra["rho_AB"]["separability"] = verdict_json(separability_test(oracle.ab, s.tolerance));
    extra["rho_A'B'"] = matrix_json(oracle.a_prime_b_prime);
    extra["rho_A'B'"]["separability"] = verdict_json(separability_test(oracle.a_prime_b_prime, s.tolerance));
  } else {
    for (const Density* d : {&local_cf.aa, &local_cf.bb})
      if (std::abs(d->trace() - 1.0) > 1e-8)
        throw std::domain_error("closed-form local output has trace " + std::to_string(d->trace()) +
                                " (the K-coefficient formulas are not trace preserving for this state); "
                                "rerun with --oracle");
    report = assess_broadcast(nonlocal_cf, local_cf.aa, local_cf.bb, s.tolerance);
  }

  json matrices{{"rho_AB'", matrix_json(report->rho_nonlocal)},
                {"rho_AA'", matrix_json(report->rho_local_a)},
                {"rho_BB'", matrix_json(report->rho_local_b)}};
  matrices["rho_AB'"]["separability"] = verdict_json(report->nonlocal_verdict);
  matrices["rho_AA'"]["separability"] = verdict_json(report->local_a_verdict);
  matrices["rho_BB'"]["separability"] = verdict_json(report->local_b_verdict);
  for (auto& [k, v] : extra.items()) matrices[k] = v;
  result["matrices"] = std::move(matrices);
  result["broadcast_success"] = report->broadcast_success;

  o.table.columns = {{"matrix"}, {"trace"}, {"min_eigenvalue"}, {"min_pt_eigenvalue"}, {"w2"}, {"w3"}, {"w4"},
                     {"verdict"}, {"input_valid"}, {"broadcast_success"}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const std::string rc = std::to_string(r) + "_" + std::to_string(c);
      o.table.columns.push_back({"re_" + rc});
      o.table.columns.push_back({"im_" + rc});
    }
  for (const auto& [name, m] : result["matrices"].items()) {
    const auto& sep = m["separability"];
    std::vector<Cell> row{name,
                          m["trace"].get<double>(),
                          m["min_eigenvalue"].get<double>(),
                          sep["min_pt_eigenvalue"].get<double>(),
                          sep["w2"].get<double>(),
                          sep["w3"].get<double>(),
                          sep["w4"].get<double>(),
                          sep["verdict"].get<std::string>(),
                          sep["input_valid"].get<bool>(),
                          report->broadcast_success};
    for (const auto& e : m["entries"]) {
      row.emplace_back(e[0].get<double>());
      row.emplace_back(e[1].get<double>());
    }
    o.table.rows.push_back(std::move(row));
  }
  o.result = std::move(result);
  return o;
}

Output cmd_intervals(double lambda) {
  const IntervalReport r = broadcast_interval(lambda);
  const WidthComparison cmp = compare_with_universal(lambda);
  const Interval universal = nonlocal_interval(1.0 / 6.0);
  Output o;
  o.result = json{{"lambda", lambda},
                  {"nonlocal_inseparable", interval_json(r.nonlocal_inseparable)},
                  {"local_separable", interval_json(r.local_separable)},
                  {"broadcastable", interval_json(r.broadcastable)},
                  {"feasible", r.feasible},
                  {"min_gram_eigenvalue", r.min_gram_eigenvalue},
                  {"universal_interval", interval_json(universal)},
                  {"width_vs_universal", std::string(to_string(cmp))}};
  o.table.columns = {{"lambda"}, {"i1_lo", 5}, {"i1_hi", 5}, {"i2_lo", 5}, {"i2_hi", 5}, {"common_lo", 5},
                     {"common_hi", 5}, {"feasible"}, {"width_vs_universal"}};
  o.table.rows.push_back({lambda, lo_cell(r.nonlocal_inseparable), hi_cell(r.nonlocal_inseparable),
                          lo_cell(r.local_separable), hi_cell(r.local_separable), lo_cell(r.broadcastable),
                          hi_cell(r.broadcastable), r.feasible, std::string(to_string(cmp))});
  return o;
}

Output cmd_fidelity(double lambda, std::optional<double> alpha2) {
  make_machine(lambda);
  if (alpha2 && !(*alpha2 >= 0.0 && *alpha2 <= 1.0)) throw std::out_of_range("--alpha2 must lie in [0, 1]");
  const double avg = average_fidelity(lambda);
  const double universal = universal_average_fidelity();
  Output o;
  o.result = json{{"lambda", lambda},
                  {"average_fidelity", avg},
                  {"universal_average_fidelity", universal},
                  {"exceeds_universal", avg > universal}};
  o.table.columns = {{"lambda"}, {"alpha2"}, {"fidelity"}, {"average_fidelity"}, {"universal_average_fidelity"},
                     {"exceeds_universal"}};
  Cell a2_cell, f_cell;
  if (alpha2) {
    const double f = fidelity(*alpha2, lambda);
    o.result["alpha2"] = *alpha2;
    o.result["fidelity"] = f;
    a2_cell = *alpha2;
    f_cell = f;
  }
  o.table.rows.push_back({lambda, a2_cell, f_cell, avg, universal, avg > universal});
  return o;
}

Output cmd_scan(double lambda, const Settings& s) {
  const Interval scanned = scan_interval(lambda, s.grid, s.tolerance);
  const Interval closed = broadcast_interval(lambda).broadcastable;
  const double step = 1.0 / (s.grid - 1);
  Output o;
  o.result = json{{"lambda", lambda},
                  {"grid", s.grid},
                  {"grid_step", step},
                  {"scanned", interval_json(scanned)},
                  {"closed_form", interval_json(closed)}};
  if (!scanned.empty && !closed.empty)
    o.result["max_endpoint_error"] = std::max(std::abs(scanned.lo - closed.lo), std::abs(scanned.hi - closed.hi));
  o.table.columns = {{"lambda"}, {"grid"}, {"scan_lo", 6}, {"scan_hi", 6}, {"closed_lo", 6}, {"closed_hi", 6}};
  o.table.rows.push_back({lambda, static_cast<double>(s.grid), lo_cell(scanned), hi_cell(scanned), lo_cell(closed),
                          hi_cell(closed)});
  return o;
}

Output cmd_feasibility(double lambda) {
  const MachineParams p = make_machine(lambda);
  const double g = gram_feasibility(p);
  const bool feasible = g >= -1e-12;
  Output o;
  o.result = json{{"lambda", lambda},
                  {"mu", p.mu()},
                  {"universal", p.is_universal()},
                  {"min_gram_eigenvalue", g},
                  {"block_determinant", gram_block_determinant(lambda)},
                  {"feasible", feasible}};
  o.table.columns = {{"lambda"}, {"mu"}, {"min_gram_eigenvalue"}, {"block_determinant"}, {"feasible"}};
  o.table.rows.push_back({lambda, p.mu(), g, gram_block_determinant(lambda), feasible});
  return o;
}

Output cmd_dominance() {
  const DominanceRange d = dominance_range();
  const auto crossings = equal_width_crossovers();
  Output o;
  o.result = json{{"average_fidelity_exceeds_universal", interval_json(d.lambda_range)},
                  {"rejected_root", d.rejected_root},
                  {"equal_width_crossovers", crossings}};
  o.table.columns = {{"fidelity_lambda_hi"}, {"rejected_root"}, {"equal_width_crossover"}};
  o.table.rows.push_back({d.lambda_range.hi, d.rejected_root, crossings.empty() ? Cell{} : Cell{crossings.front()}});
  return o;
}

void emit(std::ostream& out, const std::string& command, const Output& o, const Settings& s) {
  switch (s.format) {
    case Format::json: {
      json doc{{"schema_version", kSchemaVersion},
               {"command", command},
               {"metadata", json{{"tolerance", s.tolerance}, {"tolerance_source", s.tolerance_source}}},
               {"result", o.result}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      if (s.tolerance_source != "default")
        out << "# tolerance=" << format_number(s.tolerance, -1) << " source=" << s.tolerance_source << '\n';
      write_csv(out, o.table);
      break;
    case Format::table:
      out << "# " << command << "  tolerance=" << format_number(s.tolerance, -1) << " (" << s.tolerance_source
          << ")\n";
      write_table(out, o.table);
      break;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local cloning, entanglement broadcasting and Peres-Horodecki analysis", "bcast"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  std::string format = "table";
  std::optional<double> tolerance_flag;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  app.add_option("--grid", s.grid, "Grid points for scan")->check(CLI::Range(101, 100000001))->capture_default_str();
  app.add_option("--tolerance", tolerance_flag,
                 std::string("Separability threshold on the minimum partial-transpose eigenvalue (default 1e-10; "
                             "environment override ") +
                     kToleranceEnv + ")")
      ->check(CLI::PositiveNumber);

  double lambda = 0.0;
  std::optional<double> alpha2;
  std::string state;
  bool use_oracle = false;

  auto* table1_cmd = app.add_subcommand("table1", "Cloning quality per input state, both column readings");
  auto* table2_cmd = app.add_subcommand("table2", "Broadcasting intervals for the tabulated machine parameters");
  auto* broadcast_cmd = app.add_subcommand("broadcast", "Outputs and verdicts for one shared state");
  broadcast_cmd->add_option("--state", state, "alpha1,beta1,gamma1,delta1 (coefficients of |00>,|11>,|10>,|01>)")
      ->required();
  broadcast_cmd->add_option("--lambda", lambda, "Machine parameter in (0, 1/2)")->required();
  broadcast_cmd->add_flag("--oracle", use_oracle, "Simulate both cloners on the full joint space (lambda >= 1/6)");
  auto* intervals_cmd = app.add_subcommand("intervals", "Closed-form intervals at one machine parameter");
  intervals_cmd->add_option("--lambda", lambda, "Machine parameter in (0, 1/2)")->required();
  auto* fidelity_cmd = app.add_subcommand("fidelity", "Broadcast fidelity and its average over alpha1^2");
  fidelity_cmd->add_option("--lambda", lambda, "Machine parameter in (0, 1/2)")->required();
  fidelity_cmd->add_option("--alpha2", alpha2, "alpha1^2 in [0, 1]");
  auto* scan_cmd = app.add_subcommand("scan", "Numeric sweep of alpha1^2 (uses --grid, default 10001)");
  scan_cmd->add_option("--lambda", lambda, "Machine parameter in (0, 1/2)")->required();
  auto* feasibility_cmd = app.add_subcommand("feasibility", "Whether the machine states exist as vectors");
  feasibility_cmd->add_option("--lambda", lambda, "Machine parameter in (0, 1/2)")->required();
  auto* dominance_cmd =
      app.add_subcommand("dominance", "Machine parameters beating the universal cloner on average fidelity");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  s.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::table;
  if (tolerance_flag) {
    s.tolerance = *tolerance_flag;
    s.tolerance_source = "flag";
  } else if (const char* env = std::getenv(kToleranceEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      err << kToleranceEnv << " must be a positive number, got '" << env << "'\n";
      return kExitUsage;
    }
    s.tolerance = v;
    s.tolerance_source = std::string("env:") + kToleranceEnv;
  }

  try {
    std::string name;
    Output o;
    if (table1_cmd->parsed()) {
      name = "table1";
      o = cmd_table1();
    } else if (table2_cmd->parsed()) {
      name = "table2";
      o = cmd_table2();
    } else if (broadcast_cmd->parsed()) {
      name = "broadcast";
      o = cmd_broadcast(state, lambda, use_oracle, s);
    } else if (intervals_cmd->parsed()) {
      name = "intervals";
      o = cmd_intervals(lambda);
    } else if (fidelity_cmd->parsed()) {
      name = "fidelity";
      o = cmd_fidelity(lambda, alpha2);
    } else if (scan_cmd->parsed()) {
      name = "scan";
      o = cmd_scan(lambda, s);
    } else if (feasibility_cmd->parsed()) {
      name = "feasibility";
      o = cmd_feasibility(lambda);
    } else if (dominance_cmd->parsed()) {
      name = "dominance";
      o = cmd_dominance();
    }
    emit(out, name, o, s);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const InfeasibleMachine& e) {
    err << "error: " << e.what() << "\nmin_gram_eigenvalue=" << std::setprecision(17) << e.min_eigenvalue()
        << '\n';
    return kExitDomain;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace bcast::cli
