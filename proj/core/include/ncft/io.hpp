#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ncft/fourier.hpp"
#include "ncft/repr.hpp"
#include "ncft/specnorm.hpp"
#include "ncft/verify.hpp"

namespace ncft::io {

using nlohmann::json;

/// Complex numbers are [re, im]; matrices are row-major nested arrays.
json to_json(cplx z);
cplx complex_from_json(const json& j);
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json to_json(const EValue& v);
EValue evalue_from_json(const OperatorSpaceDesc& e, const json& j);

/// {"group": spec, "irreps": [{"degree": d, "matrices": [...]}]}
json to_json(const IrrepTable& t);
/// Rebuilds the group from its spec; table(path) specs are reloaded from disk.
IrrepTable irrep_table_from_json(const json& j);

/// {"group": spec, "E": desc, "values": [...]}
json to_json(const GroupFunction& f);
GroupFunction group_function_from_json(const json& j);

/// {"E": desc, "blocks": [{"pi": k, "degree": d, "data": matrix}]}
json to_json(const SpectralArray& a);
SpectralArray spectral_array_from_json(const json& j);

json to_json(const NormSandwich& s);
NormSandwich sandwich_from_json(const json& j);

json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

/// Counts, worst margin and witness; `with_verdicts` adds the full list.
json to_json(const CheckResult& r, bool with_verdicts = false);

json to_json(const IrrepValidation& v);
json to_json(const ConstantEstimate& e);
ConstantEstimate constant_estimate_from_json(const json& j);
json to_json(const BoundReport& r);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace ncft::io
