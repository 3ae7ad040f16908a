#pragma once

#include <string>

#include "json.hpp"

#include "holoconv/criteria.hpp"
#include "holoconv/search.hpp"

namespace holoconv {

using json = nlohmann::json;

// Malformed or inconsistent input document; the message carries the field path.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complex scalars serialize as [re, im], vectors as arrays of pairs,
// matrices as arrays of rows.
json complex_to_json(cplx v);
cplx complex_from_json(const json& j, const std::string& path);

json vector_to_json(const CVector& v);
CVector vector_from_json(const json& j, const std::string& path);

json matrix_to_json(const CMatrix& m);

// Dense form {"k", "n", "coeffs": nested arrays} (symmetrized on load) or the
// rank-one shorthand {"a": [re,im], "u": vector, "k": int}.
json tensor_to_json(const SymTensor& A);
SymTensor tensor_from_json(const json& j, const std::string& path);

json diskfn_to_json(const DiskFunction& g);
DiskFunction diskfn_from_json(const json& j, const std::string& path);

json mapping_to_json(const Mapping& f);
Mapping mapping_from_json(const json& j, const std::string& path = "");

Mapping load_mapping_file(const std::string& file);

json witness_to_json(const Witness& w);
json certificate_to_json(const CertificateReport& rep);
json search_outcome_to_json(const SearchOutcome& out);
json starlike_outcome_to_json(const StarlikeSearchOutcome& out);
json growth_report_to_json(const GrowthReport& rep);

// Writes via a temp file + rename so readers never observe partial output.
void write_text_atomic(const std::string& text, const std::string& file);

}  // namespace holoconv
