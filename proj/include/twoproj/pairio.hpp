#pragma once
//
// Flat-file interchange formats. A pair file is a single JSON document
//
//   { "schema": 1, "name": "...", "n": 4, "encoding": "matrix" | "basis",
//     "p": [[...], ...], "q": [[...], ...] }
//
// With matrix encoding p and q are n x n row-major arrays; with basis
// encoding they are lists of spanning column vectors of length n, which are
// orthonormalized (modified Gram-Schmidt with re-orthogonalization) and
// turned into B B^T on decode. Near-dependent spanning sets are rejected.
//
// An element file holds one symmetric matrix:
//   { "schema": 1, "n": 4, "mat": [[...], ...] }
//
// Doubles survive a write/read round trip bitwise.
//

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twoproj/errors.hpp"
#include "twoproj/matrix.hpp"
#include "twoproj/types.hpp"

namespace twoproj {

enum class PairEncoding { matrix, basis };

struct PairFile {
  std::string name;
  std::size_t n = 0;
  PairEncoding encoding = PairEncoding::matrix;
  Mat p, q;  // n x n (matrix encoding) or n x k columns (basis encoding)
};

namespace detail {

inline nlohmann::ordered_json rows_to_json(const Mat& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

inline nlohmann::ordered_json cols_to_json(const Mat& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) col.push_back(m(i, j));
    out.push_back(std::move(col));
  }
  return out;
}

// rows=true reads an array of rows (r x c); rows=false an array of columns
inline Mat mat_from_json(const nlohmann::json& j, bool rows, std::size_t expect_len,
                         const char* what) {
  if (!j.is_array() || j.empty())
    throw ParseError(std::string("pair file: ") + what + " must be a non-empty array");
  const std::size_t outer = j.size();
  std::size_t inner = 0;
  for (std::size_t k = 0; k < outer; ++k) {
    const auto& v = j.at(k);
    if (!v.is_array()) throw ParseError(std::string("pair file: ") + what + " must be nested arrays");
    if (k == 0) inner = v.size();
    if (v.size() != inner)
      throw ParseError(std::string("pair file: ragged array in ") + what);
  }
  if (inner != expect_len)
    throw ParseError(std::string("pair file: ") + what + " vectors must have length n");
  Mat m = rows ? Mat(outer, inner) : Mat(inner, outer);
  for (std::size_t k = 0; k < outer; ++k)
    for (std::size_t l = 0; l < inner; ++l) {
      const auto& x = j.at(k).at(l);
      if (!x.is_number()) throw ParseError(std::string("pair file: ") + what + " must be numeric");
      if (rows)
        m(k, l) = x.get<double>();
      else
        m(l, k) = x.get<double>();
    }
  return m;
}

}  // namespace detail

inline nlohmann::ordered_json pair_to_json(const PairFile& f) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["name"] = f.name;
  j["n"] = f.n;
  j["encoding"] = f.encoding == PairEncoding::matrix ? "matrix" : "basis";
  if (f.encoding == PairEncoding::matrix) {
    j["p"] = detail::rows_to_json(f.p);
    j["q"] = detail::rows_to_json(f.q);
  } else {
    j["p"] = detail::cols_to_json(f.p);
    j["q"] = detail::cols_to_json(f.q);
  }
  return j;
}

inline PairFile pair_from_json(const nlohmann::json& j) {
  try {
    PairFile f;
    f.name = j.value("name", std::string{});
    if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<long long>() <= 0)
      throw ParseError("pair file: missing or invalid field 'n'");
    f.n = j.at("n").get<std::size_t>();
    const std::string enc = j.value("encoding", "matrix");
    if (enc == "matrix")
      f.encoding = PairEncoding::matrix;
    else if (enc == "basis")
      f.encoding = PairEncoding::basis;
    else
      throw ParseError("pair file: unknown encoding '" + enc + "'");
    if (!j.contains("p") || !j.contains("q"))
      throw ParseError("pair file: missing 'p' or 'q'");
    const bool rows = f.encoding == PairEncoding::matrix;
    f.p = detail::mat_from_json(j.at("p"), rows, f.n, "p");
    f.q = detail::mat_from_json(j.at("q"), rows, f.n, "q");
    if (rows && (f.p.rows() != f.n || f.q.rows() != f.n))
      throw ParseError("pair file: matrix encoding requires n x n arrays");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pair file: ") + e.what());
  }
}

inline PairFile read_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open pair file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return pair_from_json(j);
}

inline void write_pair_file(const PairFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write pair file: " + path);
  out << pair_to_json(f).dump(2) << '\n';
}

// Decode to validated projections. Basis columns are orthonormalized first;
// a post-projection column-norm ratio below eps_rank rejects the set as
// near-dependent rather than repairing it.
inline std::pair<Projection, Projection> decode_pair(const PairFile& f,
                                                     const Tolerance& tol = {}) {
  auto decode_one = [&](const Mat& raw, const char* what) {
    if (f.encoding == PairEncoding::matrix) return Projection(SymMat(raw, tol), tol);
    auto ortho = orthonormalize_columns(raw);
    if (ortho.ratio < tol.eps_rank)
      throw ParseError(std::string("pair file: near-dependent spanning set for ") + what);
    return Projection(SymMat(ortho.q * transpose(ortho.q), tol), tol);
  };
  return {decode_one(f.p, "p"), decode_one(f.q, "q")};
}

inline nlohmann::ordered_json element_to_json(const SymMat& a) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["n"] = a.dim();
  j["mat"] = detail::rows_to_json(a.mat());
  return j;
}

inline SymMat read_element_file(const std::string& path, const Tolerance& tol = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open element file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  if (!j.contains("n") || !j.contains("mat")) throw ParseError("element file: missing 'n' or 'mat'");
  const std::size_t n = j.at("n").get<std::size_t>();
  Mat m = detail::mat_from_json(j.at("mat"), true, n, "mat");
  if (m.rows() != n) throw ParseError("element file: 'mat' must be n x n");
  return SymMat(m, tol);
}

inline void write_element_file(const SymMat& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write element file: " + path);
  out << element_to_json(a).dump(2) << '\n';
}

}  // namespace twoproj
