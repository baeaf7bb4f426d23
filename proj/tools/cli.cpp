#include "cli.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "alpha_text.hpp"
#include "bucklab/buck.hpp"
#include "bucklab/constructions.hpp"
#include "bucklab/errors.hpp"
#include "bucklab/estimators.hpp"
#include "bucklab/expansion.hpp"
#include "bucklab/set_text.hpp"
#include "bucklab/sweeps.hpp"

namespace bucklab::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised for bad flag values that CLI11 cannot see (a > b, unknown names...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::string item;
  std::stringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    if (!std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw UsageError("expected a comma-separated list of naturals, got '" + text + "'");
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw UsageError("empty list '" + text + "'");
  return out;
}

std::string decimal_note(const Rational& r) { return r.to_decimal() + " (approximate)"; }

struct Common {
  std::string format = "text";
};

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "records"}));
}

// ---- construct ---------------------------------------------------------------

struct ConstructArgs {
  std::string construction = "kfold";
  std::string theorem;
  std::string alpha;
  std::uint64_t n = 1;
  std::vector<std::uint64_t> k;
  std::size_t depth = 4;
  std::string b = "0,1";
  std::uint64_t sieve = 10000;
};

std::vector<Report> run_construct(const ConstructArgs& a) {
  std::string which = a.construction;
  if (!a.theorem.empty()) {
    static const std::map<std::string, std::string> aliases = {
        {"3.1", "kfold"}, {"3.2", "translate"}, {"3.3", "basis"}};
    const auto it = aliases.find(a.theorem);
    if (it == aliases.end()) throw UsageError("unknown --theorem value '" + a.theorem + "'");
    which = it->second;
  }
  const Alpha alpha = parse_alpha(a.alpha);
  std::vector<Report> out;

  if (which == "kfold") {
    if (a.n == 0) throw UsageError("--n must be positive");
    std::vector<std::uint64_t> ks = a.k;
    if (ks.empty()) {
      for (std::uint64_t k = 1; k <= a.n; ++k) ks.push_back(k);
    }
    for (std::uint64_t k : ks) {
      if (k == 0 || k > a.n) throw UsageError("--k values must lie in [1, n]");
    }
    if (const auto* q = std::get_if<Rational>(&alpha)) {
      if (*q < Rational(0) || *q > Rational(1)) throw UsageError("alpha must lie in [0, 1]");
      const auto num = to_u64(q->numerator());
      const auto den = to_u64(q->denominator());
      for (std::uint64_t k : ks) {
        Report r = check_rational(num, den, a.n, k);
        if (const std::string* b = r.find_value("buck(kA)")) r.value("buck", *b);
        out.push_back(std::move(r));
      }
    } else {
      const IrrationalConstruction c = construct_irrational(std::get<IntervalReal>(alpha), a.n, a.depth);
      for (std::uint64_t k : ks) out.push_back(check_irrational(c, k, a.depth));
    }
  } else if (which == "translate") {
    out.push_back(construct_translate(alpha, parse_list(a.b), a.depth).report);
  } else if (which == "basis") {
    BasisOptions options;
    options.sieve_limit = a.sieve;
    options.depth = a.depth;
    out.push_back(construct_basis(alpha, options));
  } else {
    throw UsageError("unknown construction '" + which + "'");
  }
  return out;
}

// ---- expand ------------------------------------------------------------------

struct ExpandArgs {
  std::string alpha;
  std::uint64_t n = 1;
  std::size_t depth = 5;
};

std::vector<Report> run_expand(const ExpandArgs& a) {
  const Alpha alpha = parse_alpha(a.alpha);
  const auto* x = std::get_if<IntervalReal>(&alpha);
  if (x == nullptr) throw UsageError("expand needs an irrational alpha");
  if (a.n == 0) throw UsageError("--n must be positive");
  const Expansion e = expand(*x, a.n, a.depth);
  Report table;
  table.title = "expansion of " + x->description() + " with n = " + std::to_string(a.n);
  for (const ExpansionStep& s : e.steps) {
    const std::string i = std::to_string(s.index);
    table.value("q_" + i, s.q.get_str());
    table.value("beta_" + i, s.beta.get_str());
    table.value("S_" + i, partial_sum(e, s.index).to_string());
    table.value("alpha_" + i + " in", "[" + s.remainder.lo.to_decimal(15) + ", " + s.remainder.hi.to_decimal(15) + "]");
  }
  if (e.budget_reached) table.value("stop", e.stop_reason);
  Report checks = check_expansion(e);
  return {table, checks};
}

// ---- sumset ------------------------------------------------------------------

struct SumsetArgs {
  std::string set;
  std::string with;
  std::uint64_t k = 2;
};

std::vector<Report> run_sumset(const SumsetArgs& a) {
  const EventuallyPeriodicSet s = parse_set(a.set);
  Report r;
  EventuallyPeriodicSet result;
  if (!a.with.empty()) {
    const EventuallyPeriodicSet t = parse_set(a.with);
    result = sumset(s, t);
    r.title = "sumset";
    r.value("A", s.to_string());
    r.value("B", t.to_string());
    r.value("A + B", result.to_string());
  } else {
    if (a.k == 0) throw UsageError("--k must be positive");
    result = k_fold_sumset(s, a.k);
    r.title = std::to_string(a.k) + "-fold sumset";
    r.value("A", s.to_string());
    r.value("kA", result.to_string());
  }
  r.value("buck", buck(result).to_string());
  r.value("buck ~", decimal_note(buck(result)));
  r.check("buck_lower = buck_upper", buck_lower(result) == buck_upper(result));
  return {r};
}

// ---- density -----------------------------------------------------------------

struct DensityArgs {
  std::string set;
  std::string construction;
  std::string alpha;
  std::uint64_t n = 2;
  std::size_t stage = 4;
  std::string estimator = "buck";
  std::uint64_t big_n = 10000;
  std::uint64_t length = 0;
  std::string slack = "1/100";
  std::string sieve;
  std::uint64_t modulus = 8;
};

std::vector<Report> run_density(const DensityArgs& a) {
  Report r;
  if (!a.sieve.empty()) {
    if (a.sieve != "two-squares") throw UsageError("unknown sieve '" + a.sieve + "'");
    if (a.modulus == 0) throw UsageError("--modulus must be positive");
    const Rational bound = modulus_cover_bound(sums_of_two_squares_residues(), a.modulus);
    r.title = "modulus cover bound for sums of two squares";
    r.value("modulus", std::to_string(a.modulus));
    r.value("bound", bound.to_string());
    r.value("bound ~", decimal_note(bound));
    return {r};
  }
  if (!a.construction.empty()) {
    if (a.construction != "kfold") throw UsageError("density supports --construction kfold");
    const Alpha alpha = parse_alpha(a.alpha);
    const auto* x = std::get_if<IntervalReal>(&alpha);
    if (x == nullptr) throw UsageError("staged densities need an irrational alpha");
    const IrrationalConstruction c = construct_irrational(*x, a.n, a.stage);
    if (c.staged.stage_count() < a.stage) throw StageBudgetReached(c.expansion.stop_reason);
    const std::string name = a.estimator == "buck" ? "prefix" : a.estimator;
    return {sandwich_check(c.staged, estimator_named(name), a.stage, a.big_n, Rational::parse(a.slack))};
  }
  if (a.set.empty()) throw UsageError("density needs --set, --construction or --sieve");
  const EventuallyPeriodicSet s = parse_set(a.set);
  r.title = "density of " + s.to_string();
  if (a.estimator == "buck") {
    r.value("buck_upper", buck_upper(s).to_string());
    r.value("buck_lower", buck_lower(s).to_string());
    r.value("buck ~", decimal_note(buck(s)));
    return {r};
  }
  if (a.big_n == 0) throw UsageError("--N must be positive");
  const MembershipOracle o = oracle_of(s);
  r.value("N", std::to_string(a.big_n));
  if (a.estimator == "window") {
    const std::uint64_t length = a.length == 0 ? std::min<std::uint64_t>(a.big_n, 100) : a.length;
    if (length > a.big_n) throw UsageError("--L must not exceed --N");
    const auto [lo, hi] = window_extrema(o, a.big_n, length);
    r.value("L", std::to_string(length));
    r.value("window min (estimate)", lo.to_string());
    r.value("window max (estimate)", hi.to_string());
    r.value("window min ~", decimal_note(lo));
    r.value("window max ~", decimal_note(hi));
    return {r};
  }
  const Estimator e = estimator_named(a.estimator);
  const Rational v = e.evaluate(o, a.big_n);
  r.value(e.name + " (estimate)", v.to_string());
  r.value(e.name + " ~", decimal_note(v));
  r.value("buck", buck(s).to_string());
  return {r};
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> suites = {"all"};
  std::uint64_t seed = 1;
  std::size_t count = 0;
};

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"grid",      "progressions", "additivity", "sumset-bound",
                                                 "expansion", "sandwich",     "translate",  "basis",
                                                 "counterexample", "factorial"};
  return names;
}

std::vector<Report> run_verify(const VerifyArgs& a) {
  std::vector<std::string> suites;
  for (const auto& s : a.suites) {
    if (s == "all") {
      suites.insert(suites.end(), suite_names().begin(), suite_names().end());
    } else if (std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end()) {
      suites.push_back(s);
    } else {
      throw UsageError("unknown suite '" + s + "'");
    }
  }
  auto count = [&](std::size_t fallback) { return a.count == 0 ? fallback : a.count; };
  std::vector<Report> out;
  for (const auto& s : suites) {
    if (s == "grid") out.push_back(sweep_rational_grid());
    if (s == "progressions") out.push_back(sweep_progression_density(count(500), a.seed));
    if (s == "additivity") out.push_back(sweep_additivity(count(200), a.seed));
    if (s == "sumset-bound") out.push_back(sweep_sumset_bound(count(200), a.seed));
    if (s == "expansion") out.push_back(sweep_expansions({1, 2, 3}, 8));
    if (s == "sandwich") out.push_back(sweep_irrational(2, 5, {1, 2}));
    if (s == "translate") {
      out.push_back(construct_translate(Rational(Integer(1), Integer(3)), {0, 1}).report);
      out.push_back(construct_translate(IntervalReal::golden_conjugate(), {0, 1}).report);
    }
    if (s == "basis") out.push_back(construct_basis(Rational(Integer(1), Integer(2))));
    if (s == "counterexample") out.push_back(counterexample_report(20));
    if (s == "factorial") out.push_back(dstar_counterexample(3).report);
  }
  return out;
}

// ---- counterexample ----------------------------------------------------------

struct CounterArgs {
  std::uint64_t kmax = 20;
  std::uint64_t m = 1000000000000ULL;
  std::uint64_t k = 0;
  std::uint64_t h = 0;
};

std::vector<Report> run_counterexample(const CounterArgs& a) {
  if (a.k != 0) {
    if (a.h >= a.k) throw UsageError("--residue must lie in [0, k-1]");
    return {counterexample_witness(a.k, a.h)};
  }
  if (a.kmax == 0 || a.m == 0) throw UsageError("--kmax and --m must be positive");
  return {counterexample_report(a.kmax, a.m)};
}

}  // namespace

void write_reports(std::ostream& out, Format format, const std::string& command, const std::vector<Report>& reports) {
  const bool passed = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
  if (format == Format::text) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i > 0) out << "\n";
      out << format_text(reports[i]);
    }
    return;
  }
  out << json{{"schema", kRecordSchema}, {"command", command}}.dump() << "\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const Report& r = reports[i];
    const std::string index = std::to_string(i);
    out << json{{"type", "report"}, {"report", index}, {"title", r.title}}.dump() << "\n";
    for (const auto& [k, v] : r.values) {
      out << json{{"type", "value"}, {"report", index}, {"key", k}, {"value", v}}.dump() << "\n";
    }
    for (const auto& c : r.checks) {
      out << json{{"type", "check"}, {"report", index}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}}
                 .dump()
          << "\n";
    }
  }
  out << json{{"type", "summary"}, {"reports", std::to_string(reports.size())}, {"passed", passed}}.dump() << "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Buck densities of eventually periodic sets and sumset constructions", "bucklab"};
  app.require_subcommand(1);
  Common common;

  ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "Build a set with prescribed sumset density and verify it");
  c->add_option("--construction", construct.construction, "kfold, translate or basis")
      ->check(CLI::IsMember({"kfold", "translate", "basis"}));
  c->add_option("--theorem", construct.theorem)->group("");
  c->add_option("--alpha", construct.alpha, "Target density: p/q, sqrt(r), golden-conjugate, digits:<path>")
      ->required();
  c->add_option("--n", construct.n, "Number of summands the density scales over");
  c->add_option("--k", construct.k, "k-fold sumsets to report (default 1..n)");
  c->add_option("--depth,--stage", construct.depth, "Stages for irrational alpha");
  c->add_option("--B", construct.b, "Finite set for translate, comma-separated");
  c->add_option("--N", construct.sieve, "Sieve limit for the basis check");
  add_format(c, common);

  ExpandArgs expand_args;
  auto* e = app.add_subcommand("expand", "Positional expansion of an irrational alpha");
  e->add_option("--alpha", expand_args.alpha, "Irrational in (0, 1)")->required();
  e->add_option("--n", expand_args.n, "Factorial base n");
  e->add_option("--depth", expand_args.depth, "Number of terms");
  add_format(e, common);

  SumsetArgs sum_args;
  auto* s = app.add_subcommand("sumset", "Exact sumset of eventually periodic sets");
  s->add_option("--set", sum_args.set, "First operand in set notation")->required();
  s->add_option("--with", sum_args.with, "Second operand (default: k-fold of --set)");
  s->add_option("--k", sum_args.k, "Fold count when --with is absent");
  add_format(s, common);

  DensityArgs dens;
  auto* d = app.add_subcommand("density", "Buck density, finite estimators and sandwich checks");
  d->add_option("--set", dens.set, "Set in set notation");
  d->add_option("--construction", dens.construction, "Staged construction (kfold)");
  d->add_option("--alpha", dens.alpha, "Alpha for --construction");
  d->add_option("--n", dens.n, "n for --construction");
  d->add_option("--stage", dens.stage, "Stage for --construction");
  d->add_option("--estimator", dens.estimator, "buck, prefix, log or window")
      ->check(CLI::IsMember({"buck", "prefix", "log", "window"}));
  d->add_option("--N", dens.big_n, "Truncation point");
  d->add_option("--L", dens.length, "Window length for the window estimator");
  d->add_option("--slack", dens.slack, "Sandwich slack as p/q");
  d->add_option("--sieve", dens.sieve, "Residue-determined sieve (two-squares)");
  d->add_option("--modulus", dens.modulus, "Modulus for the sieve cover bound");
  add_format(d, common);

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run verification suites");
  v->add_option("--suite", ver.suites, "all or any of: grid, progressions, additivity, sumset-bound, expansion, "
                                       "sandwich, translate, basis, counterexample, factorial");
  v->add_option("--seed", ver.seed, "Seed for randomized suites");
  v->add_option("--count", ver.count, "Instances per randomized suite");
  add_format(v, common);

  CounterArgs ce;
  auto* x = app.add_subcommand("counterexample", "Doubling leaves the Buck domain: witnesses and sparsity");
  x->add_option("--kmax", ce.kmax, "Check every class k N + h with k <= kmax");
  x->add_option("--m", ce.m, "Scale for the sparsity bound");
  x->add_option("--k", ce.k, "Single witness: modulus");
  x->add_option("--residue", ce.h, "Single witness: residue");
  add_format(x, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    std::vector<Report> reports;
    if (command == "construct") reports = run_construct(construct);
    if (command == "expand") reports = run_expand(expand_args);
    if (command == "sumset") reports = run_sumset(sum_args);
    if (command == "density") reports = run_density(dens);
    if (command == "verify") reports = run_verify(ver);
    if (command == "counterexample") reports = run_counterexample(ce);
    write_reports(out, common.format == "records" ? Format::records : Format::text, command, reports);
    const bool passed = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
    return passed ? kExitPass : kExitFail;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace bucklab::cli
