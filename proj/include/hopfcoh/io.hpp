#pragma once

#include <string>

#include <json.hpp>

#include "hopfcoh/cohomology.hpp"
#include "hopfcoh/hopf.hpp"
#include "hopfcoh/rep.hpp"
#include "hopfcoh/schemes.hpp"

namespace hopfcoh {

using Json = nlohmann::ordered_json;

// Schema errors carry a JSON-pointer-like path ("/comul/1/0/2") to the offending node.

Json ring_to_json(const RingSpec& k);  // {"kind": "Z" | "Q" | "F" | "Z/n", "modulus": n}
RingSpec ring_from_json(const Json& j, const std::string& path = "");

std::string scalar_to_string(const mpq_class& x);
mpq_class scalar_from_json(const Json& j, const RingSpec& k, const std::string& path);

// Array of rows of strings.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const RingSpec& k, const std::string& path);
Json vector_to_json(std::span<const mpq_class> v);
std::vector<mpq_class> vector_from_json(const Json& j, const RingSpec& k, std::size_t n,
                                        const std::string& path);

// "hopf-v1": mul[i][j] holds e_i e_j, comul[c] is the d x d matrix of Delta(e_c),
// antipode[i][j] is the (i, j) entry, column j = S(e_j).
Json hopf_to_json(const HopfAlgebraData& h);
HopfAlgebraData hopf_from_json(const Json& j, const std::string& path = "");

// Group references: "builtin:<name>@<ring>", a hopf-v1 object, or a
// constructor object {"constructor": constant | group-algebra | mu | alpha |
// product | subgroup, "ring": ..., ...}. Strings not starting with "builtin:"
// are read as file paths.
GroupSchemeData group_from_ref(const std::string& ref);
GroupSchemeData group_from_json(const Json& j, const std::string& path = "");

// {"over": hopf-ref, "rank": m, "coaction": matrix}. The reference is kept as
// given when serializing; a null reference inlines the Hopf algebra.
Json comodule_to_json(const ComoduleData& v, const Json& over_ref = nullptr);
ComoduleData comodule_from_json(const Json& j, const std::string& path = "");
// "regular", "regular-left", "trivial", "trivial:m", "sign", optionally with a
// "builtin:" prefix and an "@<ring>" suffix that must match the group; anything
// else is a file path.
ComoduleData module_from_ref(const std::string& ref, const HopfAlgebraData& over);

Json presentation_to_json(const ModulePresentation& p);
Json report_to_json(const VerificationReport& r);

Json read_json_file(const std::string& path);

}  // namespace hopfcoh
