#include "ncft_cli/suite.hpp"

#include <map>
#include <memory>
#include <sstream>

#include "ncft/error.hpp"
#include "ncft/io.hpp"

namespace ncft::cli {

namespace {

using nlohmann::json;

json exponent_json(Exponent p) { return p.to_string(); }

Exponent exponent_from(const json& j) {
  if (j.is_string()) return parse_exponent(j.get<std::string>());
  return Exponent(j.get<double>());
}

std::vector<Exponent> exponents_from(const json& j) {
  std::vector<Exponent> out;
  for (const auto& e : j) out.push_back(exponent_from(e));
  return out;
}

std::vector<OperatorSpaceDesc> spaces_from(const json& j) {
  std::vector<OperatorSpaceDesc> out;
  for (const auto& e : j) out.push_back(parse_space(e.get<std::string>()));
  return out;
}

json spaces_json(const std::vector<OperatorSpaceDesc>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(e.to_string());
  return out;
}

json exponents_json(const std::vector<Exponent>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(exponent_json(e));
  return out;
}

void require_hy_exponent(Exponent p, const std::string& what) {
  require(p.value() >= 1.0 && p.value() <= 2.0, ErrorCode::PreconditionFailed,
          what + ": p must lie in [1,2], got " + p.to_string());
}

json check_entry(const std::string& group, const std::string& e, const std::string& p, const CheckResult& r) {
  json j = io::to_json(r);
  j["group"] = group;
  j["E"] = e;
  j["p"] = p;
  return j;
}

}  // namespace

SuiteConfig default_suite_config() {
  SuiteConfig c;
  c.groups = {"Z4", "S3", "D4", "Q8"};
  const auto scalar = OperatorSpaceDesc::scalar();
  const auto s22 = OperatorSpaceDesc::schatten(2, Exponent(2.0));
  c.plancherel_spaces = {scalar, s22};
  c.hy_exponents = {Exponent(1.0), Exponent(4.0 / 3.0), Exponent(2.0)};
  c.hy_spaces = {scalar, s22};
  c.linf_spaces = {scalar, OperatorSpaceDesc::schatten(2, Exponent::infinity())};
  c.holder_exponents = {Exponent(1.0), Exponent(2.0)};
  c.minkowski = {{Exponent(1.0), Exponent(2.0)},
                 {Exponent(1.0), Exponent::infinity()},
                 {Exponent(2.0), Exponent::infinity()},
                 {Exponent(2.0), Exponent(2.0)}};
  using K = ConstantEstimate::Kind;
  for (const K kind : {K::Type, K::Cotype})
    for (const double p : {1.0, 2.0})
      for (const auto& e : {scalar, s22}) c.estimates.push_back({kind, Exponent(p), e});
  c.estimates.push_back({K::Type, Exponent(2.0), OperatorSpaceDesc::diag_lp(2, Exponent(1.0))});
  c.estimates.push_back({K::Cotype, Exponent(2.0), OperatorSpaceDesc::diag_lp(2, Exponent::infinity())});
  return c;
}

SuiteConfig suite_config_from_json(const json& j) {
  SuiteConfig c = default_suite_config();
  try {
    require(j.is_object(), ErrorCode::ParseError, "suite config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      static const char* known[] = {"groups", "trials", "seed", "plancherel_spaces", "hy_exponents", "hy_spaces",
                                    "linf_spaces", "holder_exponents", "minkowski", "estimates", "level", "budget"};
      require(std::find(std::begin(known), std::end(known), key) != std::end(known), ErrorCode::ParseError,
              "unknown suite config key '" + key + "'");
    }
    if (j.contains("groups")) c.groups = j["groups"].get<std::vector<std::string>>();
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("plancherel_spaces")) c.plancherel_spaces = spaces_from(j["plancherel_spaces"]);
    if (j.contains("hy_exponents")) c.hy_exponents = exponents_from(j["hy_exponents"]);
    if (j.contains("hy_spaces")) c.hy_spaces = spaces_from(j["hy_spaces"]);
    if (j.contains("linf_spaces")) c.linf_spaces = spaces_from(j["linf_spaces"]);
    if (j.contains("holder_exponents")) c.holder_exponents = exponents_from(j["holder_exponents"]);
    if (j.contains("minkowski")) {
      c.minkowski.clear();
      for (const auto& m : j["minkowski"]) c.minkowski.push_back({exponent_from(m.at(0)), exponent_from(m.at(1))});
    }
    if (j.contains("estimates")) {
      c.estimates.clear();
      for (const auto& e : j["estimates"])
        c.estimates.push_back({parse_constant_kind(e.at("kind").get<std::string>()), exponent_from(e.at("p")),
                               parse_space(e.at("E").get<std::string>())});
    }
    if (j.contains("level")) c.level = j["level"].get<int>();
    if (j.contains("budget")) c.budget = j["budget"].get<int>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed suite config: ") + e.what());
  }
  require(c.trials >= 0, ErrorCode::PreconditionFailed, "trials must be non-negative");
  for (const auto& p : c.hy_exponents) require_hy_exponent(p, "hy_exponents");
  for (const auto& e : c.estimates) require_hy_exponent(e.p, "estimates");
  for (const auto& m : c.minkowski)
    require(m.p1 <= m.p2, ErrorCode::PreconditionFailed, "minkowski pairs need p1 <= p2");
  for (const auto& e : c.linf_spaces)
    require(e.kind() == OperatorSpaceDesc::Kind::Scalar || e.exponent().is_infinite(), ErrorCode::PreconditionFailed,
            "linf_spaces need scalar E or exponent inf, got " + e.to_string());
  require(c.level >= 1 && c.level <= kMaxAmplificationLevel, ErrorCode::PreconditionFailed, "level must lie in 1..3");
  require(c.budget >= 1, ErrorCode::PreconditionFailed, "budget must be positive");
  for (const auto& g : c.groups) (void)parse_group_spec(g);
  return c;
}

json to_json(const SuiteConfig& c) {
  json minkowski = json::array();
  for (const auto& m : c.minkowski) minkowski.push_back({exponent_json(m.p1), exponent_json(m.p2)});
  json estimates = json::array();
  for (const auto& e : c.estimates)
    estimates.push_back({{"kind", to_string(e.kind)}, {"p", exponent_json(e.p)}, {"E", e.space.to_string()}});
  return {{"groups", c.groups},
          {"trials", c.trials},
          {"seed", c.seed},
          {"plancherel_spaces", spaces_json(c.plancherel_spaces)},
          {"hy_exponents", exponents_json(c.hy_exponents)},
          {"hy_spaces", spaces_json(c.hy_spaces)},
          {"linf_spaces", spaces_json(c.linf_spaces)},
          {"holder_exponents", exponents_json(c.holder_exponents)},
          {"minkowski", minkowski},
          {"estimates", estimates},
          {"level", c.level},
          {"budget", c.budget}};
}

SuiteReport suite_all(const SuiteConfig& c) {
  SuiteReport report;
  CheckOptions opts;
  opts.trials = c.trials;
  const auto record = [&](json entry, const CheckResult& r) {
    report.violated += r.violated;
    report.results.push_back(std::move(entry));
  };

  for (std::size_t gi = 0; gi < c.groups.size(); ++gi) {
    const FiniteGroup g = build_group(c.groups[gi]);
    const IrrepTable t = irreps_for(g, c.seed);
    const std::string name = g.spec().to_string();
    opts.seed = derive_seed(c.seed, {gi});
    for (const auto& e : c.plancherel_spaces) {
      const CheckResult r = check_plancherel(t, e, opts);
      record(check_entry(name, e.to_string(), "2", r), r);
    }
    for (const auto& p : c.hy_exponents)
      for (const auto& e : c.hy_spaces) {
        const CheckResult hy = check_hausdorff_young(t, p, e, opts);
        record(check_entry(name, e.to_string(), p.to_string(), hy), hy);
        const CheckResult inv = check_inverse_hy(t, p, e, opts);
        record(check_entry(name, e.to_string(), p.to_string(), inv), inv);
      }
    for (const auto& e : c.linf_spaces) {
      const CheckResult r = check_linf_l1(t, e, opts);
      record(check_entry(name, e.to_string(), "1", r), r);
    }
    for (std::size_t k = 0; k < c.estimates.size(); ++k) {
      const EstimateSpec& s = c.estimates[k];
      const std::uint64_t seed = derive_seed(c.seed, {gi, 0xE5, k});
      report.estimates.push_back(s.kind == ConstantEstimate::Kind::Type
                                     ? estimate_type_constant(t, s.p, s.space, c.level, c.budget, seed)
                                     : estimate_cotype_constant(t, s.p, s.space, c.level, c.budget, seed));
    }
  }
  if (!c.groups.empty()) {
    opts.seed = derive_seed(c.seed, {0x401D});
    for (const auto& p : c.holder_exponents) {
      const CheckResult r = check_holder_lemma(2, 2, p, opts);
      record(check_entry("", "scalar", p.to_string(), r), r);
    }
    for (const auto& m : c.minkowski) {
      const CheckResult r = check_minkowski(m.p1, m.p2, 2, 2, opts);
      record(check_entry("", "scalar", m.p1.to_string() + "," + m.p2.to_string(), r), r);
    }
  }
  report.bounds = check_theorem_bounds(report.estimates);
  return report;
}

std::string estimates_csv(const std::vector<ConstantEstimate>& estimates) {
  std::ostringstream out;
  out.precision(17);
  out << "group,kind,p,E,level,value,theorem_upper\n";
  for (const auto& e : estimates) {
    out << e.group << ',' << to_string(e.kind) << ',' << e.p.to_string() << ',' << e.space.to_string() << ','
        << e.level << ',' << e.value << ',';
    if (const auto u = theorem_upper_bound(e.kind, e.p, e.space)) out << u->value;
    out << '\n';
  }
  return out.str();
}

}  // namespace ncft::cli
