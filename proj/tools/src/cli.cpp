#include "ncft_cli/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncft/error.hpp"
#include "ncft/fourier.hpp"
#include "ncft/group.hpp"
#include "ncft/io.hpp"
#include "ncft/repr.hpp"
#include "ncft/verify.hpp"
#include "ncft/version.hpp"
#include "ncft_cli/suite.hpp"

namespace ncft::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

json report(const std::string& command, json config, json results, Clock::time_point start) {
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return {{"tool", "ncft"},
          {"version", std::string(version())},
          {"command", command},
          {"config", std::move(config)},
          {"results", std::move(results)},
          {"timing", {{"seconds", seconds}}}};
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    io::write_json_file(path, j);
  }
}

void emit_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  require(static_cast<bool>(f), ErrorCode::IoError, "cannot write '" + path + "'");
  f << text;
}

IrrepTable load_or_build_table(const std::string& table_path, const FiniteGroup& g, std::uint64_t seed) {
  if (table_path.empty()) return irreps_for(g, seed);
  IrrepTable t = io::irrep_table_from_json(io::read_json_file(table_path));
  require(t.group.spec() == g.spec(), ErrorCode::GroupMismatch,
          "table is for " + t.group.spec().to_string() + ", input is on " + g.spec().to_string());
  return t;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    if (end > start) out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

struct Options {
  // group show
  std::string spec;
  // irreps
  std::string group;
  std::string method = "catalog";
  std::uint64_t seed = 0;
  double tol = kDefaultClusterTol;
  std::string in;
  std::string out;
  // fourier
  std::string table;
  // verify / estimate
  std::string suite = "plancherel,hy,invhy";
  std::string p = "2";
  std::string p2 = "inf";
  std::string space = "scalar";
  int trials = 100;
  int n1 = 2;
  int n2 = 2;
  int level = 2;
  int budget = 200;
  std::string csv;
  std::string config;
};

int group_show(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const FiniteGroup g = build_group(o.spec);
  json classes = json::array();
  for (const auto& c : g.classes()) classes.push_back(c);
  const json results = {{"spec", g.spec().to_string()}, {"order", g.order()},
                        {"abelian", g.is_abelian()},    {"labels", g.labels()},
                        {"classes", classes},           {"inverses", g.inverses()},
                        {"mul", g.table()}};
  emit(report("group show", {{"spec", o.spec}}, results, start), o.out, out);
  return kExitOk;
}

int irreps_compute(const Options& o, std::ostream& out) {
  const FiniteGroup g = build_group(o.group);
  IrrepTable t = o.method == "numeric" ? irreps_numeric(g, o.seed, o.tol) : irreps_catalog(g);
  emit(io::to_json(t), o.out, out);
  return kExitOk;
}

int irreps_validate(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const IrrepTable t = io::irrep_table_from_json(io::read_json_file(o.in));
  const IrrepValidation v = validate_irreps(t);
  json results = io::to_json(v);
  results["group"] = t.group.spec().to_string();
  emit(report("irreps validate", {{"in", o.in}}, results, start), o.out, out);
  return v.pass() ? kExitOk : kExitFinding;
}

int fourier_forward(const Options& o, std::ostream& out) {
  const GroupFunction f = io::group_function_from_json(io::read_json_file(o.in));
  const IrrepTable t = load_or_build_table(o.table, f.group, o.seed);
  emit(io::to_json(forward(f, t)), o.out, out);
  return kExitOk;
}

int fourier_inverse(const Options& o, std::ostream& out) {
  require(!o.table.empty() || !o.group.empty(), ErrorCode::PreconditionFailed,
          "inverse needs --table (or --group to use catalog irreps)");
  const SpectralArray a = io::spectral_array_from_json(io::read_json_file(o.in));
  IrrepTable t = o.table.empty() ? irreps_for(build_group(o.group), o.seed)
                                 : io::irrep_table_from_json(io::read_json_file(o.table));
  emit(io::to_json(inverse(a, t)), o.out, out);
  return kExitOk;
}

int verify_cmd(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const FiniteGroup g = build_group(o.group);
  const IrrepTable t = irreps_for(g, o.seed);
  const Exponent p = parse_exponent(o.p);
  const OperatorSpaceDesc e = parse_space(o.space);
  CheckOptions opts;
  opts.trials = o.trials;
  opts.seed = o.seed;

  const std::vector<std::string> names = split_list(o.suite);
  static const std::vector<std::string> known = {"plancherel", "hy", "invhy", "linf-l1", "holder", "minkowski"};
  for (const auto& n : names)
    require(std::find(known.begin(), known.end(), n) != known.end(), ErrorCode::PreconditionFailed,
            "unknown check '" + n + "' (known: plancherel, hy, invhy, linf-l1, holder, minkowski)");

  json results = json::array();
  int violated = 0;
  for (const auto& n : names) {
    CheckResult r;
    if (n == "plancherel") r = check_plancherel(t, e, opts);
    if (n == "hy") r = check_hausdorff_young(t, p, e, opts);
    if (n == "invhy") r = check_inverse_hy(t, p, e, opts);
    if (n == "linf-l1") r = check_linf_l1(t, e, opts);
    if (n == "holder") r = check_holder_lemma(o.n1, o.n2, p, opts);
    if (n == "minkowski") r = check_minkowski(p, parse_exponent(o.p2), o.n1, o.n2, opts);
    violated += r.violated;
    results.push_back(io::to_json(r));
  }
  const json config = {{"group", g.spec().to_string()}, {"suite", names},  {"p", p.to_string()},
                       {"p2", o.p2},                    {"E", e.to_string()}, {"trials", o.trials},
                       {"seed", o.seed},                {"n1", o.n1},     {"n2", o.n2}};
  emit(report("verify", config, results, start), o.out, out);
  return violated > 0 ? kExitFinding : kExitOk;
}

int estimate_cmd(ConstantEstimate::Kind kind, const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const FiniteGroup g = build_group(o.group);
  const IrrepTable t = irreps_for(g, o.seed);
  const Exponent p = parse_exponent(o.p);
  const OperatorSpaceDesc e = parse_space(o.space);
  const ConstantEstimate est = kind == ConstantEstimate::Kind::Type
                                   ? estimate_type_constant(t, p, e, o.level, o.budget, o.seed)
                                   : estimate_cotype_constant(t, p, e, o.level, o.budget, o.seed);
  const BoundReport bounds = check_theorem_bounds({est});
  const json config = {{"kind", to_string(kind)}, {"group", g.spec().to_string()}, {"p", p.to_string()},
                       {"E", e.to_string()},      {"level", o.level},              {"budget", o.budget},
                       {"seed", o.seed}};
  emit(report("estimate", config, {{"estimate", io::to_json(est)}, {"bounds", io::to_json(bounds)}}, start), o.out,
       out);
  if (!o.csv.empty()) emit_text(estimates_csv({est}), o.csv, out);
  return bounds.any_flagged() ? kExitFinding : kExitOk;
}

int suite_cmd(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const SuiteConfig config =
      o.config.empty() ? default_suite_config() : suite_config_from_json(io::read_json_file(o.config));
  const SuiteReport r = suite_all(config);
  json estimates = json::array();
  for (const auto& e : r.estimates) estimates.push_back(io::to_json(e));
  const json results = {{"checks", r.results},
                        {"violated", r.violated},
                        {"estimates", estimates},
                        {"bounds", io::to_json(r.bounds)}};
  emit(report("suite", to_json(config), results, start), o.out, out);
  if (!o.csv.empty()) emit_text(estimates_csv(r.estimates), o.csv, out);
  return r.ok() ? kExitOk : kExitFinding;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-commutative Fourier analysis on finite groups", "ncft"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  Options o;

  auto* group = app.add_subcommand("group", "Inspect a group");
  group->require_subcommand(1);
  auto* show = group->add_subcommand("show", "Print order, labels, classes and table");
  show->add_option("--spec", o.spec, "Group spec, e.g. Z4, D4, Q8, S3, Z2xZ2, table:path")->required();
  show->add_option("--out", o.out, "Report path (default stdout)");

  auto* irreps = app.add_subcommand("irreps", "Compute or validate irreducible representations");
  irreps->require_subcommand(1);
  auto* compute = irreps->add_subcommand("compute", "Compute an irrep table");
  compute->add_option("--group", o.group, "Group spec")->required();
  compute->add_option("--method", o.method, "catalog or numeric")->check(CLI::IsMember({"catalog", "numeric"}));
  compute->add_option("--seed", o.seed, "Seed for the numeric method");
  compute->add_option("--tol", o.tol, "Eigenvalue clustering tolerance");
  compute->add_option("--out", o.out, "Output path (default stdout)");
  auto* validate = irreps->add_subcommand("validate", "Print residuals of an irrep table");
  validate->add_option("--in", o.in, "Irrep table JSON")->required();
  validate->add_option("--out", o.out, "Report path (default stdout)");

  auto* fourier = app.add_subcommand("fourier", "Fourier transform and its inverse");
  fourier->require_subcommand(1);
  auto* fwd = fourier->add_subcommand("forward", "GroupFunction -> SpectralArray");
  auto* inv = fourier->add_subcommand("inverse", "SpectralArray -> GroupFunction");
  for (auto* sub : {fwd, inv}) {
    sub->add_option("--in", o.in, "Input JSON")->required();
    sub->add_option("--table", o.table, "Irrep table JSON (default: built-in irreps)");
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--seed", o.seed, "Seed when irreps are computed numerically");
  }
  inv->add_option("--group", o.group, "Group spec, used when --table is absent");

  auto* verify = app.add_subcommand("verify", "Randomized inequality checks");
  verify->add_option("--group", o.group, "Group spec")->required();
  verify->add_option("--suite", o.suite, "Comma list: plancherel,hy,invhy,linf-l1,holder,minkowski");
  verify->add_option("--p", o.p, "Exponent (Minkowski: p1)");
  verify->add_option("--p2", o.p2, "Second Minkowski exponent");
  verify->add_option("--E", o.space, "Value space: scalar, schatten:m:q, diaglp:n:p");
  verify->add_option("--trials", o.trials, "Random instances per check")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", o.seed, "Seed");
  verify->add_option("--n1", o.n1, "Hölder n1 / Minkowski k1")->check(CLI::Range(1, 3));
  verify->add_option("--n2", o.n2, "Hölder n2 / Minkowski k2")->check(CLI::Range(1, 3));
  verify->add_option("--out", o.out, "Report path (default stdout)");

  auto* estimate = app.add_subcommand("estimate", "Lower bounds on Fourier type/cotype constants");
  estimate->require_subcommand(1);
  auto* type = estimate->add_subcommand("type", "C_p^1(E,G)");
  auto* cotype = estimate->add_subcommand("cotype", "C_{p'}^2(E,G)");
  for (auto* sub : {type, cotype}) {
    sub->add_option("--group", o.group, "Group spec")->required();
    sub->add_option("--E", o.space, "Value space");
    sub->add_option("--p", o.p, "Exponent in [1,2]");
    sub->add_option("--level", o.level, "Amplification level")->check(CLI::Range(1, kMaxAmplificationLevel));
    sub->add_option("--budget", o.budget, "Ratio evaluations per level")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed");
    sub->add_option("--out", o.out, "Report path (default stdout)");
    sub->add_option("--csv", o.csv, "Also write a CSV row");
  }

  auto* suite = app.add_subcommand("suite", "Run every check over a grid");
  suite->add_option("--config", o.config, "Grid JSON (default: Z4, S3, D4, Q8)");
  suite->add_option("--out", o.out, "Report path (default stdout)");
  suite->add_option("--csv", o.csv, "CSV of constant estimates");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*show) return group_show(o, out);
    if (*compute) return irreps_compute(o, out);
    if (*validate) return irreps_validate(o, out);
    if (*fwd) return fourier_forward(o, out);
    if (*inv) return fourier_inverse(o, out);
    if (*verify) return verify_cmd(o, out);
    if (*type) return estimate_cmd(ConstantEstimate::Kind::Type, o, out);
    if (*cotype) return estimate_cmd(ConstantEstimate::Kind::Cotype, o, out);
    if (*suite) return suite_cmd(o, out);
  } catch (const Error& e) {
    err << "ncft: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ncft: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace ncft::cli
