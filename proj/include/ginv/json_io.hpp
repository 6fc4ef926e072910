#pragma once

#include <string>

#include <json.hpp>

#include "ginv/verify.hpp"

namespace ginv {

/// Insertion-ordered JSON keeps every emitted document byte-deterministic.
using Json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "re": [...], "im": [...]} with row-major flat
/// arrays. "im" is always emitted.
Json matrix_to_json(const Matrix& m);

/// Parses the schema above. "im" may be omitted (zero imaginary part);
/// everything else is required. Throws ParseError on any violation.
Matrix matrix_from_json(const Json& j);

/// Reads and parses a matrix JSON file. Throws ParseError when the file is
/// missing, unreadable, not JSON, or not a valid matrix document.
Matrix read_matrix_file(const std::string& path);

/// Canonical dump: two-space indentation plus a trailing newline.
std::string dump_json(const Json& j);

/// Writes dump_json(j) to the path, throwing Error on I/O failure.
void write_json_file(const std::string& path, const Json& j);

Json to_json(const InnerInverse& x);
Json to_json(const CoreNilpotentDecomposition& dec);
Json to_json(const ClosedRangeDecomposition& crd);
Json to_json(const PreorderReport& rep);
Json to_json(const PoMembershipReport& rep);
Json to_json(const verify::TheoremCheckReport& rep);
Json to_json(const verify::FuzzReport& rep);

}  // namespace ginv
