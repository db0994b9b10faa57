#pragma once

#include <string>

#include <json.hpp>

#include "qaut/comodule.hpp"
#include "qaut/multimatrix.hpp"
#include "qaut/words.hpp"

namespace qaut {

// Insertion-ordered so every report serializes with a fixed key order; the
// byte-identical-output guarantee rests on this plus dump_json.
using Json = nlohmann::ordered_json;

// Canonical rendering used for every payload: two-space indent, trailing
// newline, no locale-dependent formatting.
std::string dump_json(const Json& j);

Json scalar_json(const Exact& v);
Json scalar_value_json(const ScalarValue& v);

// A matrix is an array of rows of scalar strings; integer literals are
// accepted on input. `where` prefixes error messages with the file and field.
Json mat_json(const Mat& m);
Mat mat_from_json(const Json& j, const std::string& where);

// {"blocks": [...]} with blocks emitted in the sorted order plus the
// ingestion permutation; the reader accepts blocks in any order.
Json multimatrix_json(const MultiMatrix& em);
MultiMatrix multimatrix_from_json(const Json& j, const std::string& where);

// {dim, e, delta, C, tau, omega, star?}. The derived tensor D is never
// serialized; verify_relations recomputes it from delta and C on load.
Json pairing_json(const PairingData& d);
PairingData pairing_from_json(const Json& j, const std::string& where);

// Cube-root exponent <-> "1" / "w" / "w^2".
std::string omega_string(int omega_pow);
int omega_pow_from(const std::string& text, const std::string& where);

// Reads and parses a file; syntax errors raise ParseError carrying the file,
// line, column, and the parser's token diagnostic.
Json parse_json_file(const std::string& path);
MultiMatrix load_multimatrix(const std::string& path);
PairingData load_pairing(const std::string& path);

// Line-oriented presentation tokens: X[i,j,b|k,l,m] lists the upper
// row, column, block, then the lower triple, all 1-based.
std::string gen_token(const GenIndex& g);
std::string monomial_string(const GenTable& table, const Monomial& m);
std::string poly_string(const GenTable& table, const NCPoly& p);

}  // namespace qaut
