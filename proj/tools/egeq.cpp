#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "egeq/bounds.hpp"
#include "egeq/chains.hpp"
#include "egeq/congruence.hpp"
#include "egeq/crt.hpp"
#include "egeq/enumerate.hpp"
#include "egeq/exact_arith.hpp"
#include "egeq/greedy.hpp"

namespace {

using json = nlohmann::ordered_json;
using egeq::BigInt;

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kBudget = 3,
  kVerification = 4,
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  json parameters = json::object();
  json rows = json::array();
  json summary = json::object();
  std::optional<json> prune_counters;
  Table csv;
  int exit_code = kOk;
};

std::string join(const std::vector<std::uint64_t>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

json big(const BigInt& value) { return egeq::to_string(value); }

json solution_json(const egeq::Solution& s) {
  json terms = json::array();
  for (const auto& a : s.terms) terms.push_back(a.get_ui());
  return json{{"n", s.n.get_ui()}, {"k", s.k()}, {"a", terms}};
}

void emit(const Report& report, const std::string& format, double seconds, bool timing) {
  if (format == "csv") {
    auto line = [](const std::vector<std::string>& cells) {
      std::string out;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      return out;
    };
    std::cout << line(report.csv.header) << '\n';
    for (const auto& row : report.csv.rows) std::cout << line(row) << '\n';
    return;
  }
  json out;
  out["command"] = report.command;
  out["parameters"] = report.parameters;
  out["rows"] = report.rows;
  out["summary"] = report.summary;
  if (report.prune_counters) out["prune_counters"] = *report.prune_counters;
  if (timing) out["timing"] = json{{"wall_seconds", seconds}};
  std::cout << out.dump(2) << '\n';
}

// --- enumerate -------------------------------------------------------------

struct EnumerateArgs {
  std::uint64_t k = 0;
  int jobs = 0;
  std::string rule = "theorem";
  std::string checkpoint;
  bool resume = false;
  double checkpoint_seconds = 30;
  bool progress = false;
};

Report run_enumerate(const EnumerateArgs& args) {
  if (args.k < 2) throw CLI::ValidationError("k", "k must be at least 2");
  if (args.k > 61) throw UnsupportedRange("k > 61 is outside the supported range");
  egeq::EnumerateOptions options;
  options.jobs = args.jobs;
  options.rule = egeq::parse_ceiling_rule(args.rule);
  if (!args.checkpoint.empty()) options.checkpoint = args.checkpoint;
  options.resume = args.resume;
  options.checkpoint_interval = std::chrono::milliseconds(static_cast<long>(args.checkpoint_seconds * 1000));
  if (args.progress) {
    options.progress = [](std::size_t done, std::size_t total) {
      std::cerr << "\rsubtrees " << done << "/" << total << std::flush;
      if (done == total) std::cerr << '\n';
    };
  }
  const auto result = egeq::enumerate_solutions(args.k, options);

  Report report;
  report.command = "enumerate";
  report.parameters = json{{"k", args.k}, {"rule", args.rule}};
  report.csv.header = {"n", "k", "terms"};
  for (const auto& s : result.solutions) {
    if (!egeq::verify_solution(s)) throw VerificationFailure("solution failed verification: " + s.to_string());
    report.rows.push_back(solution_json(s));
    std::vector<std::uint64_t> terms;
    for (const auto& a : s.terms) terms.push_back(a.get_ui());
    report.csv.rows.push_back({egeq::to_string(s.n), std::to_string(s.k()), join(terms, ' ')});
  }
  report.summary = json{{"count", result.solutions.size()}, {"subtrees", result.frontier_size}};
  json counters = json::object();
  for (const auto& [name, value] : result.counters.items()) counters[name] = value;
  report.prune_counters = counters;
  return report;
}

// --- greedy ----------------------------------------------------------------

struct GreedyArgs {
  std::optional<std::uint64_t> n;
  std::string x;
  std::uint64_t max_k = egeq::kDefaultMaxK;
};

Report run_greedy(const GreedyArgs& args) {
  Report report;
  report.command = "greedy";
  std::optional<std::vector<std::uint64_t>> terms;
  egeq::Rational x;
  if (args.n) {
    if (*args.n < 2) throw CLI::ValidationError("--n", "n must be at least 2");
    x = egeq::term_value(*args.n).to_rational();
    report.parameters["n"] = *args.n;
    terms = egeq::greedy_terms_for_n(*args.n, args.max_k);
  } else {
    try {
      x = egeq::parse_rational(args.x);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--x", e.what());
    }
    if (x <= 0 || x >= 2) throw CLI::ValidationError("--x", "x must satisfy 0 < x < 2");
    report.parameters["x"] = egeq::to_string(x);
    terms = egeq::greedy_representation(x, args.max_k);
  }
  report.parameters["max_k"] = args.max_k;
  report.csv.header = {"i", "a_i"};
  if (!terms) {
    report.summary = json{{"status", "budget-exhausted"}, {"terminated", false}};
    report.exit_code = kBudget;
    return report;
  }
  if (!egeq::representation_equals(*terms, x)) throw VerificationFailure("greedy terms do not sum to x");
  for (std::size_t i = 0; i < terms->size(); ++i) {
    report.rows.push_back((*terms)[i]);
    report.csv.rows.push_back({std::to_string(i + 1), std::to_string((*terms)[i])});
  }
  report.summary = json{{"status", "ok"},
                        {"terminated", true},
                        {"k", terms->size()},
                        {"first_term", terms->front()},
                        {"last_term", terms->back()}};
  return report;
}

// --- sweep / conjecture ----------------------------------------------------

struct SweepArgs {
  std::uint64_t n_min = 2;
  std::uint64_t n_max = 2;
  std::uint64_t max_k = egeq::kDefaultMaxK;
  int jobs = 0;
  bool figures = false;
};

Report run_sweep(const SweepArgs& args, bool conjecture) {
  if (args.n_min < 2 || args.n_max < args.n_min) {
    throw CLI::ValidationError("range", "need 2 <= n_min <= n_max");
  }
  const auto rows = egeq::sweep(args.n_min, args.n_max, args.max_k, args.jobs);

  Report report;
  report.command = conjecture ? "conjecture" : "sweep";
  report.parameters = json{{"n_min", args.n_min}, {"n_max", args.n_max}, {"max_k", args.max_k}};
  report.csv.header = {"n", "k", "a_k", "terminated"};
  if (args.figures) {
    report.csv.header.push_back("a_k_over_2_k_plus_n");
    report.csv.header.push_back("k_over_n");
  }
  std::uint64_t unterminated = 0;
  json violations = json::array();
  std::uint64_t k_peak = 0;
  json peaks = json::array();
  for (const auto& row : rows) {
    if (!row.terminated) ++unterminated;
    if (row.terminated && !row.in_window()) violations.push_back(row.n);
    if (row.terminated && row.k > k_peak) {
      peaks.push_back(json{{"n", row.n}, {"k", row.k}, {"a_k", row.a_k}, {"previous_max_k", k_peak}});
      k_peak = row.k;
    }
    if (!conjecture || !row.in_window()) {
      json r{{"n", row.n}, {"k", row.k}, {"a_k", row.a_k}, {"terminated", row.terminated}};
      if (args.figures && row.terminated) {
        r["a_k_over_2_k_plus_n"] = row.ak_ratio();
        r["k_over_n"] = row.k_over_n();
      }
      report.rows.push_back(std::move(r));
    }
    std::vector<std::string> cells{std::to_string(row.n), std::to_string(row.k), std::to_string(row.a_k),
                                   row.terminated ? "true" : "false"};
    if (args.figures) {
      std::ostringstream ratio;
      std::ostringstream kn;
      ratio.precision(10);
      kn.precision(10);
      if (row.terminated) {
        ratio << row.ak_ratio();
        kn << row.k_over_n();
      }
      cells.push_back(ratio.str());
      cells.push_back(kn.str());
    }
    if (!conjecture || !row.in_window()) report.csv.rows.push_back(std::move(cells));
  }
  report.summary = json{{"rows", rows.size()},
                        {"terminated", rows.size() - unterminated},
                        {"unterminated", unterminated},
                        {"window_violations", violations},
                        {"k_peaks", peaks}};
  if (conjecture) {
    report.summary["window_holds"] = violations.empty() && unterminated == 0;
    if (!violations.empty()) report.exit_code = kVerification;
  }
  if (unterminated > 0 && report.exit_code == kOk) report.exit_code = kBudget;
  return report;
}

// --- table1 ----------------------------------------------------------------

Report run_table1(unsigned u_max, int jobs) {
  Report report;
  report.command = "table1";
  report.parameters = json{{"u_max", u_max}};
  report.csv.header = {"u", "k0", "r", "status"};
  std::uint64_t solvable = 0;
  json unsupported = json::array();
  for (const auto& entry : egeq::table1(u_max, jobs)) {
    const std::string status = egeq::to_string(entry.status);
    if (entry.row) {
      if (!egeq::verify_row(*entry.row)) {
        throw VerificationFailure("row u = " + std::to_string(entry.u) + " failed verification");
      }
      ++solvable;
      report.rows.push_back(json{{"u", entry.u}, {"k0", big(entry.row->k0)}, {"r", big(entry.row->r)},
                                 {"status", status}});
      report.csv.rows.push_back(
          {std::to_string(entry.u), egeq::to_string(entry.row->k0), egeq::to_string(entry.row->r), status});
    } else {
      unsupported.push_back(entry.u);
      report.rows.push_back(json{{"u", entry.u}, {"k0", nullptr}, {"r", nullptr}, {"status", status}});
      report.csv.rows.push_back({std::to_string(entry.u), "", "", status});
    }
  }
  report.summary = json{{"solvable", solvable}, {"unsupported_u", unsupported}};
  return report;
}

// --- multiplicity ----------------------------------------------------------

Report run_multiplicity(unsigned m, unsigned u_min, int jobs) {
  std::vector<egeq::ProgressionRow> rows;
  for (auto& row : egeq::table1_rows()) {
    if (row.u >= u_min) rows.push_back(std::move(row));
  }
  if (m < 1 || m > rows.size()) {
    throw CLI::ValidationError("--subset-size", "subset size must be in 1.." + std::to_string(rows.size()));
  }
  Report report;
  report.command = "multiplicity";
  report.parameters = json{{"subset_size", m}, {"u_min", u_min}, {"rows", rows.size()}};
  report.csv.header = {"u_set", "residue", "modulus", "k", "certified_solutions"};
  for (const auto& match : egeq::scan_subsets(rows, m, jobs)) {
    std::vector<egeq::ProgressionRow> chosen;
    for (auto u : match.u_values) {
      for (const auto& row : rows) {
        if (row.u == u) chosen.push_back(row);
      }
    }
    std::uint64_t certified = 0;
    try {
      certified = egeq::certify_multiplicity(match.cls, chosen);
    } catch (const egeq::CertificationError& e) {
      throw VerificationFailure(e.what());
    }
    const BigInt k = match.cls.least_at_least(2);
    json us = json::array();
    std::vector<std::uint64_t> u64s;
    for (auto u : match.u_values) {
      us.push_back(u);
      u64s.push_back(u);
    }
    report.rows.push_back(json{{"u", us},
                               {"residue", big(match.cls.residue)},
                               {"modulus", big(match.cls.modulus)},
                               {"k", big(k)},
                               {"certified_solutions", certified}});
    report.csv.rows.push_back({join(u64s, ' '), egeq::to_string(match.cls.residue),
                               egeq::to_string(match.cls.modulus), egeq::to_string(k), std::to_string(certified)});
  }
  report.summary = json{{"subsets_checked", egeq::binomial(rows.size(), m)}, {"compatible", report.rows.size()}};
  return report;
}

// --- chain -----------------------------------------------------------------

struct ChainArgs {
  std::uint64_t a_start = 8;
  std::uint64_t depth = 1;
  std::uint64_t max_k = std::uint64_t{1} << 22;
  std::string terms_out;
};

Report run_chain(const ChainArgs& args) {
  if (args.a_start < 3) throw CLI::ValidationError("a_start", "a_start must be at least 3");
  if (args.depth < 1) throw CLI::ValidationError("depth", "depth must be at least 1");
  egeq::ChainOptions options;
  options.max_k = args.max_k;
  std::ofstream sink;
  if (!args.terms_out.empty()) {
    sink.open(args.terms_out);
    if (!sink) throw std::runtime_error("cannot open " + args.terms_out);
    options.on_terms = [&](const egeq::ChainStep& step, std::span<const std::uint64_t> terms) {
      sink << step.index;
      for (auto a : terms) sink << ' ' << a;
      sink << '\n';
    };
  }
  const auto chain = egeq::expand_chain(args.a_start, args.depth, options);

  Report report;
  report.command = "chain";
  report.parameters = json{{"a_start", args.a_start}, {"depth", args.depth}, {"max_k", args.max_k}};
  report.csv.header = {"i", "k_i", "last_term"};
  for (const auto& step : chain.steps) {
    std::ostringstream digest;
    digest << std::hex << step.digest;
    report.rows.push_back(json{{"i", step.index},
                               {"k_i", step.k},
                               {"last_term", step.last_term},
                               {"first_term", step.first_term},
                               {"digest", digest.str()},
                               {"verified", step.verified}});
    report.csv.rows.push_back({std::to_string(step.index), std::to_string(step.k), std::to_string(step.last_term)});
  }
  std::uint64_t certificate = 0;
  try {
    certificate = egeq::representation_count_certificate(chain);
  } catch (const egeq::ChainCertificationError& e) {
    throw VerificationFailure(e.what());
  }
  report.summary = json{{"depth_reached", chain.steps.size()},
                        {"exhausted", chain.exhausted},
                        {"representations", certificate}};
  if (chain.exhausted) report.exit_code = kBudget;
  return report;
}

// --- verify ----------------------------------------------------------------

egeq::Solution parse_solution(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw CLI::ValidationError("solution", "expected 'n;a1,a2,...'");
  egeq::Solution s;
  try {
    s.n = BigInt(text.substr(0, semi));
    std::stringstream rest(text.substr(semi + 1));
    std::string item;
    while (std::getline(rest, item, ',')) s.terms.emplace_back(item);
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("solution", "non-numeric entry in '" + text + "'");
  }
  return s;
}

Report run_verify(const std::string& text) {
  const egeq::Solution s = parse_solution(text);
  Report report;
  report.command = "verify";
  report.parameters = json{{"solution", text}};
  const bool ok = egeq::verify_solution(s);
  bool product = false;
  bool corollary = false;
  if (ok) {
    product = egeq::product_bound_holds(s);
    corollary = egeq::corollary_bound_holds(s);
  }
  report.summary = json{{"valid", ok}, {"product_bound", product}, {"corollary_bound", corollary}};
  report.csv.header = {"valid", "product_bound", "corollary_bound"};
  report.csv.rows.push_back({ok ? "true" : "false", product ? "true" : "false", corollary ? "true" : "false"});
  if (!ok) report.exit_code = kVerification;
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations with n/2^n = sum a_i/2^{a_i}"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  bool no_timing = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-timing", no_timing, "Omit the timing field from JSON");

  EnumerateArgs enum_args;
  auto* enumerate = app.add_subcommand("enumerate", "All solutions for a fixed number of terms k");
  enumerate->add_option("k", enum_args.k, "Number of terms")->required();
  enumerate->add_option("--jobs", enum_args.jobs, "Worker threads (0 = all)");
  enumerate->add_option("--rule", enum_args.rule, "Search ceiling")->check(CLI::IsMember({"theorem", "corollary"}));
  enumerate->add_option("--checkpoint", enum_args.checkpoint, "Checkpoint file");
  enumerate->add_flag("--resume", enum_args.resume, "Resume from --checkpoint");
  enumerate->add_option("--checkpoint-seconds", enum_args.checkpoint_seconds, "Seconds between checkpoints");
  enumerate->add_flag("--progress", enum_args.progress, "Progress on stderr");

  GreedyArgs greedy_args;
  std::uint64_t greedy_n = 0;
  auto* greedy = app.add_subcommand("greedy", "Greedy representation of x or n/2^n");
  auto* n_opt = greedy->add_option("--n", greedy_n, "Expand n/2^n");
  auto* x_opt = greedy->add_option("--x", greedy_args.x, "Expand the fraction p/q");
  n_opt->excludes(x_opt);
  greedy->add_option("--max-k", greedy_args.max_k, "Term budget");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Greedy statistics for every n in a range");
  auto* conjecture = app.add_subcommand("conjecture", "Check k+n <= a_k <= 2(k+n) over a range");
  for (auto* cmd : {sweep, conjecture}) {
    cmd->add_option("n_min", sweep_args.n_min)->required();
    cmd->add_option("n_max", sweep_args.n_max)->required();
    cmd->add_option("--max-k", sweep_args.max_k, "Term budget per n");
    cmd->add_option("--jobs", sweep_args.jobs, "Worker threads (0 = all)");
  }
  sweep->add_flag("--figures", sweep_args.figures, "Add a_k/(2(k+n)) and k/n columns");

  unsigned u_max = 120;
  int table_jobs = 0;
  auto* table1 = app.add_subcommand("table1", "Solvable congruences 3*2^{k-1}+3u+1 == 0 mod 2^{u+3}-3");
  table1->add_option("--u-max", u_max, "Largest u");
  table1->add_option("--jobs", table_jobs, "Worker threads (0 = all)");

  unsigned subset_size = 4;
  unsigned u_min = 0;
  int mult_jobs = 0;
  auto* multiplicity = app.add_subcommand("multiplicity", "Compatible subsets of the congruence rows");
  multiplicity->add_option("--subset-size", subset_size, "Rows per subset")->required();
  multiplicity->add_option("--u-min", u_min, "Only rows with u >= u_min");
  multiplicity->add_option("--jobs", mult_jobs, "Worker threads (0 = all)");

  ChainArgs chain_args;
  auto* chain = app.add_subcommand("chain", "Greedy chain of expansions of a/2^a");
  chain->add_option("a_start", chain_args.a_start)->required();
  chain->add_option("depth", chain_args.depth)->required();
  chain->add_option("--max-k", chain_args.max_k, "Term budget per step");
  chain->add_option("--terms-out", chain_args.terms_out, "Write every expansion to this file");

  std::string solution_text;
  auto* verify = app.add_subcommand("verify", "Exact check of a claimed solution 'n;a1,...,ak'");
  verify->add_option("solution", solution_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    if (*enumerate) report = run_enumerate(enum_args);
    if (*greedy) {
      if (n_opt->count() == 0 && x_opt->count() == 0) throw CLI::ValidationError("greedy", "give --n or --x");
      if (n_opt->count()) greedy_args.n = greedy_n;
      report = run_greedy(greedy_args);
    }
    if (*sweep) report = run_sweep(sweep_args, false);
    if (*conjecture) report = run_sweep(sweep_args, true);
    if (*table1) report = run_table1(u_max, table_jobs);
    if (*multiplicity) report = run_multiplicity(subset_size, u_min, mult_jobs);
    if (*chain) report = run_chain(chain_args);
    if (*verify) report = run_verify(solution_text);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kVerification;
  } catch (const egeq::FeasibilityViolation& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return kVerification;
  } catch (const egeq::UnsupportedModulus& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kBudget;
  } catch (const UnsupportedRange& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(report, format, seconds, !no_timing);
  return report.exit_code;
}
