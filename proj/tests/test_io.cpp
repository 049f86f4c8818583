#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ncft/error.hpp"
#include "ncft/io.hpp"

using namespace ncft;
using nlohmann::json;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ncft::Error");
  return ErrorCode::IoError;
}

json reparse(const json& j) { return json::parse(j.dump(2)); }

}  // namespace

TEST_CASE("complex numbers and matrices round-trip bit-exactly") {
  Rng rng = make_rng(50, {});
  const Matrix m = gaussian_matrix(3, 2, rng);
  const Matrix back = io::matrix_from_json(reparse(io::to_json(m)));
  CHECK(back == m);
  const cplx z(0.1, -1e-300);
  CHECK(io::complex_from_json(reparse(io::to_json(z))) == z);
  CHECK(io::to_json(cplx(1, 2)) == json::array({1.0, 2.0}));
}

TEST_CASE("values in every kind of space round-trip") {
  Rng rng = make_rng(51, {});
  for (const auto& e : {OperatorSpaceDesc::scalar(), OperatorSpaceDesc::schatten(2, Exponent(1.5)),
                        OperatorSpaceDesc::diag_lp(3, Exponent::infinity())}) {
    const EValue v = random_evalue(e, rng);
    CHECK(io::evalue_from_json(e, reparse(io::to_json(v))).data() == v.data());
  }
}

TEST_CASE("irrep tables round-trip") {
  const IrrepTable t = irreps_numeric(build_group("D4"), 3);
  const IrrepTable back = io::irrep_table_from_json(reparse(io::to_json(t)));
  CHECK(back.group.spec() == t.group.spec());
  REQUIRE(back.size() == t.size());
  for (std::size_t k = 0; k < t.size(); ++k)
    for (int g = 0; g < t.group.order(); ++g) CHECK(back[k].matrices[g] == t[k].matrices[g]);
  CHECK(io::to_json(back) == io::to_json(t));
}

TEST_CASE("group functions and spectra round-trip through files") {
  const IrrepTable t = irreps_catalog(build_group("S3"));
  Rng rng = make_rng(52, {});
  const auto e = OperatorSpaceDesc::schatten(2, Exponent(2.0));
  const GroupFunction f = GroupFunction::random(t.group, e, rng);
  const SpectralArray a = forward(f, t);

  const auto dir = std::filesystem::temp_directory_path();
  const std::string fpath = (dir / "ncft_io_f.json").string(), apath = (dir / "ncft_io_a.json").string();
  io::write_json_file(fpath, io::to_json(f));
  io::write_json_file(apath, io::to_json(a));

  const GroupFunction f2 = io::group_function_from_json(io::read_json_file(fpath));
  const SpectralArray a2 = io::spectral_array_from_json(io::read_json_file(apath));
  CHECK(max_abs_difference(f, f2) == 0.0);
  CHECK(max_abs_difference(a, a2) == 0.0);
  CHECK(f2.space == e);
  CHECK(a2.degrees() == a.degrees());
}

TEST_CASE("sandwiches, verdicts and estimates round-trip") {
  NormSandwich s{0.5, 0.75, 1.0 / 3.0 + 1.0, NormSandwich::Method::FactorizationDual, 7, true};
  const NormSandwich s2 = io::sandwich_from_json(reparse(io::to_json(s)));
  CHECK(s2.lower == s.lower);
  CHECK(s2.estimate == s.estimate);
  CHECK(s2.upper == s.upper);
  CHECK(s2.method == s.method);
  CHECK(s2.restarts_used == 7);
  CHECK(s2.budget_exhausted);

  const Verdict v = make_verdict(NormSandwich::exact(1.0), s);
  const Verdict v2 = io::verdict_from_json(reparse(io::to_json(v)));
  CHECK(v2.status == v.status);
  CHECK(v2.margin == v.margin);
  CHECK(v2.rhs.upper == v.rhs.upper);

  const IrrepTable t = irreps_catalog(build_group("Z3"));
  for (Exponent p : {Exponent(2.0), Exponent(1.0)}) {
    const ConstantEstimate c = estimate_type_constant(t, p, OperatorSpaceDesc::scalar(), 2, 8, 4);
    const ConstantEstimate c2 = io::constant_estimate_from_json(reparse(io::to_json(c)));
    CHECK(c2.value == c.value);
    CHECK(c2.level_values == c.level_values);
    CHECK(c2.p == c.p);
    CHECK(c2.space == c.space);
    CHECK(c2.kind == c.kind);
    CHECK(c2.group == c.group);
    CHECK(c2.witness == c.witness);
    CHECK(io::to_json(c2) == io::to_json(c));
  }
}

TEST_CASE("check results serialize counts and optionally verdicts") {
  CheckOptions o;
  o.trials = 5;
  const CheckResult r = check_plancherel(irreps_catalog(build_group("Z3")), OperatorSpaceDesc::scalar(), o);
  const json brief = io::to_json(r);
  CHECK(brief.at("verified") == 5);
  CHECK_FALSE(brief.contains("verdicts"));
  CHECK(io::to_json(r, true).at("verdicts").size() == 5);
}

TEST_CASE("malformed input is a ParseError") {
  CHECK(code_of([] { (void)io::complex_from_json(json::array({1.0})); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)io::matrix_from_json(json::parse("[[[1,0]],[[1,0],[2,0]]]")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)io::group_function_from_json(json::parse(R"({"group":"Z2"})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          (void)io::group_function_from_json(json::parse(R"({"group":"Z2","E":"scalar","values":[[1,0]]})"));
        }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([] { (void)io::sandwich_from_json(json::parse(R"({"lower":"x"})")); }) == ErrorCode::ParseError);

  const std::string path = (std::filesystem::temp_directory_path() / "ncft_io_bad.json").string();
  std::ofstream(path) << "{ not json";
  CHECK(code_of([&] { (void)io::read_json_file(path); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)io::read_json_file("/nonexistent/ncft.json"); }) == ErrorCode::IoError);
}
