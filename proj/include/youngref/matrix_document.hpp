#pragma once

// Text format for matrix fixtures:
//
//   {
//     "dim": 2,
//     "rows": [
//       [2, 1],
//       [1, 2]
//     ]
//   }
//
// Numbers are written with 17 significant digits, so write(read(f)) == f for
// files in this canonical layout and every double survives a round trip.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "spd_linalg.hpp"

namespace youngref {

struct MatrixDocument {
  std::size_t dim = 0;
  std::vector<std::vector<double>> rows;

  friend bool operator==(const MatrixDocument&, const MatrixDocument&) = default;
};

/// Decimal with 17 significant digits ("%.17g").
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline MatrixDocument parse_matrix_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("matrix document: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) {
    throw InputError("matrix document: expected an object with \"dim\" and \"rows\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    throw InputError("matrix document: \"dim\" must be a positive integer");
  }
  MatrixDocument doc;
  doc.dim = j["dim"].get<std::size_t>();
  const auto& rows = j["rows"];
  if (!rows.is_array() || rows.size() != doc.dim) {
    throw InputError("matrix document: \"rows\" must hold exactly dim rows");
  }
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != doc.dim) {
      throw InputError("matrix document: every row must hold exactly dim numbers");
    }
    std::vector<double> r;
    r.reserve(doc.dim);
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw InputError("matrix document: entries must be numbers");
      }
      r.push_back(v.get<double>());
    }
    doc.rows.push_back(std::move(r));
  }
  return doc;
}

inline std::string write_matrix_document(const MatrixDocument& doc) {
  std::string out = "{\n  \"dim\": " + std::to_string(doc.dim) + ",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    out += "    [";
    for (std::size_t j = 0; j < doc.rows[i].size(); ++j) {
      if (j != 0) {
        out += ", ";
      }
      out += format_g17(doc.rows[i][j]);
    }
    out += i + 1 < doc.rows.size() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline MatrixDocument to_document(const Matrix& m) {
  MatrixDocument doc{m.dim(), {}};
  for (std::size_t i = 0; i < m.dim(); ++i) {
    doc.rows.emplace_back(m.data().begin() + static_cast<std::ptrdiff_t>(i * m.dim()),
                          m.data().begin() + static_cast<std::ptrdiff_t>((i + 1) * m.dim()));
  }
  return doc;
}

/// Validates the document as a symmetric matrix.
inline SymMatrix to_sym_matrix(const MatrixDocument& doc) {
  std::vector<double> flat;
  flat.reserve(doc.dim * doc.dim);
  for (const auto& row : doc.rows) {
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return SymMatrix(doc.dim, std::move(flat));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline MatrixDocument read_matrix_file(const std::string& path) {
  try {
    return parse_matrix_document(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_matrix_file(const std::string& path, const MatrixDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write " + path);
  }
  out << write_matrix_document(doc);
}

} // namespace youngref
