#include "ncft/io.hpp"

#include <fstream>

#include "ncft/error.hpp"

namespace ncft::io {

namespace {

template <typename F>
auto parse_guard(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed ") + what + ": " + e.what());
  }
}

json exponent_json(Exponent p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

Exponent exponent_from(const json& j) {
  if (j.is_string()) return parse_exponent(j.get<std::string>());
  return Exponent(j.get<double>());
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2, ErrorCode::ParseError, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  return parse_guard("matrix", [&] {
    require(j.is_array(), ErrorCode::ParseError, "matrix must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      require(static_cast<Eigen::Index>(j[i].size()) == cols, ErrorCode::ParseError, "ragged matrix rows");
      for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
  });
}

json to_json(const EValue& v) {
  switch (v.space().kind()) {
    case OperatorSpaceDesc::Kind::Scalar: return to_json(v.data()(0, 0));
    case OperatorSpaceDesc::Kind::DiagLp: {
      json d = json::array();
      for (Eigen::Index i = 0; i < v.data().rows(); ++i) d.push_back(to_json(v.data()(i, 0)));
      return d;
    }
    case OperatorSpaceDesc::Kind::Schatten: return to_json(v.data());
  }
  return {};
}

EValue evalue_from_json(const OperatorSpaceDesc& e, const json& j) {
  return parse_guard("value", [&] {
    switch (e.kind()) {
      case OperatorSpaceDesc::Kind::Scalar: return EValue::scalar(complex_from_json(j));
      case OperatorSpaceDesc::Kind::DiagLp: {
        require(j.is_array(), ErrorCode::ParseError, "diaglp value must be an array of [re, im]");
        Matrix d(static_cast<Eigen::Index>(j.size()), 1);
        for (std::size_t i = 0; i < j.size(); ++i) d(static_cast<Eigen::Index>(i), 0) = complex_from_json(j[i]);
        return EValue(e, std::move(d));
      }
      case OperatorSpaceDesc::Kind::Schatten: return EValue(e, matrix_from_json(j));
    }
    fail(ErrorCode::UnsupportedSpace, "unknown space");
  });
}

json to_json(const IrrepTable& t) {
  json irreps = json::array();
  for (const auto& r : t.irreps) {
    json mats = json::array();
    for (const auto& m : r.matrices) mats.push_back(to_json(m));
    irreps.push_back({{"degree", r.degree}, {"matrices", std::move(mats)}});
  }
  return {{"group", t.group.spec().to_string()}, {"irreps", std::move(irreps)}};
}

IrrepTable irrep_table_from_json(const json& j) {
  return parse_guard("irrep table", [&] {
    FiniteGroup g = build_group(j.at("group").get<std::string>());
    std::vector<Irrep> irreps;
    for (const auto& r : j.at("irreps")) {
      std::vector<Matrix> mats;
      for (const auto& m : r.at("matrices")) mats.push_back(matrix_from_json(m));
      require(static_cast<int>(mats.size()) == g.order(), ErrorCode::ShapeMismatch,
              "irrep needs one matrix per group element");
      Irrep irrep = Irrep::from_matrices(std::move(mats));
      require(irrep.degree == r.at("degree").get<int>(), ErrorCode::ShapeMismatch, "declared degree differs from matrices");
      irreps.push_back(std::move(irrep));
    }
    return IrrepTable{std::move(g), std::move(irreps)};
  });
}

json to_json(const GroupFunction& f) {
  json values = json::array();
  for (const auto& v : f.values) values.push_back(to_json(v));
  return {{"group", f.group.spec().to_string()}, {"E", f.space.to_string()}, {"values", std::move(values)}};
}

GroupFunction group_function_from_json(const json& j) {
  return parse_guard("group function", [&] {
    FiniteGroup g = build_group(j.at("group").get<std::string>());
    const OperatorSpaceDesc e = parse_space(j.at("E").get<std::string>());
    std::vector<EValue> values;
    for (const auto& v : j.at("values")) values.push_back(evalue_from_json(e, v));
    return GroupFunction(std::move(g), e, std::move(values));
  });
}

json to_json(const SpectralArray& a) {
  json blocks = json::array();
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    blocks.push_back({{"pi", k}, {"degree", a.blocks[k].outer()}, {"data", to_json(a.blocks[k].flat())}});
  return {{"E", a.space.to_string()}, {"blocks", std::move(blocks)}};
}

SpectralArray spectral_array_from_json(const json& j) {
  return parse_guard("spectral array", [&] {
    SpectralArray a{parse_space(j.at("E").get<std::string>()), {}};
    for (const auto& b : j.at("blocks")) {
      require(b.at("pi").get<std::size_t>() == a.blocks.size(), ErrorCode::ParseError, "blocks must be listed by pi");
      a.blocks.emplace_back(b.at("degree").get<int>(), a.space, matrix_from_json(b.at("data")));
    }
    return a;
  });
}

json to_json(const NormSandwich& s) {
  return {{"lower", s.lower},
          {"estimate", s.estimate},
          {"upper", s.upper},
          {"method", to_string(s.method)},
          {"restarts_used", s.restarts_used},
          {"budget_exhausted", s.budget_exhausted}};
}

NormSandwich sandwich_from_json(const json& j) {
  return parse_guard("sandwich", [&] {
    NormSandwich s;
    s.lower = j.at("lower").get<double>();
    s.estimate = j.at("estimate").get<double>();
    s.upper = j.at("upper").get<double>();
    s.method = parse_sandwich_method(j.at("method").get<std::string>());
    s.restarts_used = j.at("restarts_used").get<int>();
    s.budget_exhausted = j.value("budget_exhausted", false);
    return s;
  });
}

json to_json(const Verdict& v) {
  return {{"status", to_string(v.status)}, {"lhs", to_json(v.lhs)}, {"rhs", to_json(v.rhs)}, {"margin", v.margin}};
}

Verdict verdict_from_json(const json& j) {
  return parse_guard("verdict", [&] {
    Verdict v;
    v.status = parse_verdict_status(j.at("status").get<std::string>());
    v.lhs = sandwich_from_json(j.at("lhs"));
    v.rhs = sandwich_from_json(j.at("rhs"));
    v.margin = j.at("margin").get<double>();
    return v;
  });
}

json to_json(const CheckResult& r, bool with_verdicts) {
  json out = {{"check", r.name},
              {"trials", r.verdicts.size()},
              {"verified", r.verified},
              {"consistent", r.consistent},
              {"violated", r.violated},
              {"worst_margin", r.worst_margin},
              {"worst_trial", r.worst_trial},
              {"witness", r.witness}};
  if (with_verdicts) {
    json list = json::array();
    for (const auto& v : r.verdicts) list.push_back(to_json(v));
    out["verdicts"] = std::move(list);
  }
  return out;
}

json to_json(const IrrepValidation& v) {
  const auto residual = [](const IrrepValidation::Residual& r) {
    return json{{"worst", r.worst}, {"tolerance", r.tolerance}, {"irrep", r.irrep}, {"element", r.element},
                {"pass", r.pass()}};
  };
  return {{"order", v.order},
          {"degree_square_sum", v.degree_square_sum},
          {"complete", v.complete()},
          {"degrees_consistent", v.degrees_consistent},
          {"unitarity", residual(v.unitarity)},
          {"homomorphism", residual(v.homomorphism)},
          {"irreducibility", residual(v.irreducibility)},
          {"character_orthogonality", residual(v.character_orthogonality)},
          {"schur_orthogonality", residual(v.schur_orthogonality)},
          {"pass", v.pass()}};
}

json to_json(const ConstantEstimate& e) {
  return {{"kind", to_string(e.kind)},
          {"group", e.group},
          {"p", exponent_json(e.p)},
          {"E", e.space.to_string()},
          {"level", e.level},
          {"budget", e.budget},
          {"seed", e.seed},
          {"value", e.value},
          {"level_values", e.level_values},
          {"trials", e.trials},
          {"witness", e.witness}};
}

ConstantEstimate constant_estimate_from_json(const json& j) {
  return parse_guard("constant estimate", [&] {
    ConstantEstimate e;
    e.kind = parse_constant_kind(j.at("kind").get<std::string>());
    e.group = j.at("group").get<std::string>();
    e.p = exponent_from(j.at("p"));
    e.space = parse_space(j.at("E").get<std::string>());
    e.level = j.at("level").get<int>();
    e.budget = j.value("budget", 0);
    e.seed = j.value("seed", std::uint64_t{0});
    e.value = j.at("value").get<double>();
    e.level_values = j.value("level_values", std::vector<double>{});
    e.trials = j.value("trials", 0);
    e.witness = j.value("witness", json());
    return e;
  });
}

json to_json(const BoundReport& r) {
  json findings = json::array();
  for (const auto& f : r.findings) {
    json item = {{"index", f.index}, {"value", f.value}, {"below_one", f.below_one}, {"above_upper", f.above_upper},
                 {"flagged", f.flagged()}};
    if (f.upper) {
      item["theorem_upper"] = f.upper->value;
      item["source"] = f.upper->source;
    } else {
      item["theorem_upper"] = nullptr;
    }
    findings.push_back(std::move(item));
  }
  json duality = json::array();
  for (const auto& d : r.duality)
    duality.push_back({{"type_index", d.type_index},
                       {"cotype_index", d.cotype_index},
                       {"common_upper", std::isfinite(d.common_upper) ? json(d.common_upper) : json(nullptr)},
                       {"consistent", d.consistent}});
  return {{"findings", std::move(findings)}, {"duality", std::move(duality)}, {"flagged", r.any_flagged()}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  require(static_cast<bool>(out), ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace ncft::io
