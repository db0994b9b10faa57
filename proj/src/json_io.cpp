#include "qaut/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qaut/error.hpp"

namespace qaut {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(Errc::ParseError, where + ": " + what);
}

Exact scalar_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const Error& e) {
      bad(where, e.what());
    }
  }
  if (j.is_number_integer()) return Exact(static_cast<long>(j.get<long long>()));
  if (j.is_number()) bad(where, "non-integer numeric scalar; write it as a rational string");
  bad(where, "expected a scalar string");
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key \"") + key + "\"");
  return *it;
}

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

// C[i][j][k] as nested arrays of scalars, all extents equal to n.
Ten3 ten3_from_json(const Json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    bad(where, "expected " + std::to_string(n) + " coefficient planes");
  Ten3 t(n);
  for (int i = 0; i < n; ++i) {
    const Json& plane = j[i];
    const std::string wi = where + "[" + std::to_string(i) + "]";
    if (!plane.is_array() || static_cast<int>(plane.size()) != n)
      bad(wi, "expected " + std::to_string(n) + " rows");
    for (int jj = 0; jj < n; ++jj) {
      const Json& row = plane[jj];
      const std::string wj = wi + "[" + std::to_string(jj) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        bad(wj, "expected " + std::to_string(n) + " entries");
      for (int k = 0; k < n; ++k)
        t.at(i, jj, k) = scalar_from_json(row[k], wj + "[" + std::to_string(k) + "]");
    }
  }
  return t;
}

Json ten3_json(const Ten3& t) {
  Json planes = Json::array();
  for (int i = 0; i < t.n; ++i) {
    Json plane = Json::array();
    for (int j = 0; j < t.n; ++j) {
      Json row = Json::array();
      for (int k = 0; k < t.n; ++k) row.push_back(to_string(t.at(i, j, k)));
      plane.push_back(std::move(row));
    }
    planes.push_back(std::move(plane));
  }
  return planes;
}

Mat square_mat_from_json(const Json& j, int n, const std::string& where) {
  Mat m = mat_from_json(j, where);
  if (m.rows() != n || m.cols() != n)
    bad(where, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  return m;
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json scalar_json(const Exact& v) { return to_string(v); }

Json scalar_value_json(const ScalarValue& v) {
  Json j = Json::object();
  j["exact"] = v.exact;
  if (v.exact) j["value"] = to_string(v.ev);
  j["approx"] = Json{{"re", v.av.real()}, {"im", v.av.imag()}};
  return j;
}

Json mat_json(const Mat& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_string(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  const Json& first = j[0];
  if (!first.is_array() || first.empty()) bad(where + "[0]", "expected a nonempty row");
  const int cols = static_cast<int>(first.size());
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    const std::string wr = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      bad(wr, "expected a row of " + std::to_string(cols) + " scalars");
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = scalar_from_json(row[c], wr + "[" + std::to_string(c) + "]");
  }
  return m;
}

Json multimatrix_json(const MultiMatrix& em) {
  Json j = Json::object();
  Json blocks = Json::array();
  for (int lam = 1; lam <= em.block_count(); ++lam) blocks.push_back(mat_json(em.block(lam)));
  j["blocks"] = std::move(blocks);
  j["permutation"] = em.permutation();
  return j;
}

MultiMatrix multimatrix_from_json(const Json& j, const std::string& where) {
  const Json& blocks = member(j, "blocks", where);
  if (!blocks.is_array() || blocks.empty())
    bad(where + ": blocks", "expected a nonempty array of blocks");
  std::vector<Mat> mats;
  mats.reserve(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b)
    mats.push_back(mat_from_json(blocks[b], where + ": blocks[" + std::to_string(b) + "]"));
  return MultiMatrix(std::move(mats));
}

Json pairing_json(const PairingData& d) {
  Json j = Json::object();
  j["dim"] = d.dim_w;
  j["e"] = mat_json(d.e);
  j["delta"] = mat_json(d.delta);
  j["C"] = ten3_json(d.c);
  j["tau"] = to_string(d.tau);
  j["omega"] = omega_string(d.omega_pow);
  if (d.star) j["star"] = mat_json(*d.star);
  return j;
}

PairingData pairing_from_json(const Json& j, const std::string& where) {
  PairingData d;
  d.dim_w = int_from_json(member(j, "dim", where), where + ": dim");
  if (d.dim_w <= 0) bad(where + ": dim", "expected a positive dimension");
  d.e = square_mat_from_json(member(j, "e", where), d.dim_w, where + ": e");
  d.delta = square_mat_from_json(member(j, "delta", where), d.dim_w, where + ": delta");
  d.c = ten3_from_json(member(j, "C", where), d.dim_w, where + ": C");
  d.tau = scalar_from_json(member(j, "tau", where), where + ": tau");
  const Json& omega = member(j, "omega", where);
  if (!omega.is_string()) bad(where + ": omega", "expected \"1\", \"w\" or \"w^2\"");
  d.omega_pow = omega_pow_from(omega.get<std::string>(), where + ": omega");
  if (auto it = j.find("star"); it != j.end())
    d.star = square_mat_from_json(*it, d.dim_w, where + ": star");
  return d;
}

std::string omega_string(int omega_pow) {
  switch (omega_pow) {
    case 0: return "1";
    case 1: return "w";
    case 2: return "w^2";
  }
  fail(Errc::UsageError, "omega exponent out of range");
}

int omega_pow_from(const std::string& text, const std::string& where) {
  if (text == "1") return 0;
  if (text == "w") return 1;
  if (text == "w^2") return 2;
  bad(where, "expected \"1\", \"w\" or \"w^2\", got \"" + text + "\"");
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::UsageError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset of the failure; recover line and column.
    size_t line = 1, col = 1;
    const size_t stop = e.byte == 0 ? 0 : std::min(text.size(), e.byte - 1);
    for (size_t p = 0; p < stop; ++p) {
      if (text[p] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(Errc::ParseError, path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                               e.what());
  }
}

MultiMatrix load_multimatrix(const std::string& path) {
  return multimatrix_from_json(parse_json_file(path), path);
}

PairingData load_pairing(const std::string& path) {
  return pairing_from_json(parse_json_file(path), path);
}

std::string gen_token(const GenIndex& g) {
  std::ostringstream out;
  out << "X[" << g.ui << "," << g.uj << "," << g.ub << "|" << g.li << "," << g.lj << "," << g.lb
      << "]";
  return out.str();
}

std::string monomial_string(const GenTable& table, const Monomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (size_t p = 0; p < m.size(); ++p) {
    if (p > 0) out += " ";
    out += gen_token(table.gen(m[p]));
  }
  return out;
}

std::string poly_string(const GenTable& table, const NCPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [mon, coeff] : p) {
    std::string term;
    if (mon.empty()) {
      term = to_string(coeff);
    } else if (coeff.is_one()) {
      term = monomial_string(table, mon);
    } else if (coeff == Exact(-1)) {
      term = "-" + monomial_string(table, mon);
    } else if (coeff.is_real()) {
      term = to_string(coeff) + "*" + monomial_string(table, mon);
    } else {
      term = "(" + to_string(coeff) + ")*" + monomial_string(table, mon);
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace qaut
