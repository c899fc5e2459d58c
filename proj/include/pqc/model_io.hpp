#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "pqc/model.hpp"

namespace pqc {

using ordered_json = nlohmann::ordered_json;

struct ModelFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline ordered_json matrix_to_json(const MatQ& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_to_string(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatQ matrix_from_json(const ordered_json& j, std::size_t rows, std::size_t cols,
                             const std::string& what) {
  if (!j.is_array() || j.size() != rows)
    throw ModelFileError(what + ": expected " + std::to_string(rows) + " rows");
  MatQ m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ModelFileError(what + ": row " + std::to_string(r + 1) + " must have " +
                           std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      try {
        m.at(r, c) = rat_from_string(j[r][c].get<std::string>());
      } catch (const std::exception& e) {
        throw ModelFileError(what + " entry (" + std::to_string(r + 1) + "," +
                             std::to_string(c + 1) + "): " + e.what());
      }
    }
  }
  return m;
}

/// Canonical JSON form of a model; loading it back is bit-exact.
inline ordered_json model_to_json(const Model& m) {
  ordered_json j;
  j["format"] = "pqc-model";
  j["version"] = 1;
  j["name"] = m.name;
  j["n"] = m.n();
  j["basis"] = m.basis_names;
  j["eta"] = {m.eta[1] + 1, m.eta[2] + 1, m.eta[3] + 1};
  ordered_json sc = ordered_json::array();
  for (int b = 0; b < m.dim(); ++b)
    for (int c = b + 1; c < m.dim(); ++c)
      for (int a = 0; a < m.dim(); ++a)
        if (!is_zero(m.frame.C(a, b, c)))
          sc.push_back({a + 1, b + 1, c + 1, rat_to_string(m.frame.C(a, b, c))});
  j["structure_constants"] = std::move(sc);
  j["metric_h"] = matrix_to_json(m.g_h);
  for (int s = 1; s <= 3; ++s) j["I" + std::to_string(s)] = matrix_to_json(m.I[s]);
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : m.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  return j;
}

inline Model model_from_json(const ordered_json& j) {
  if (!j.is_object() || j.value("format", "") != std::string("pqc-model"))
    throw ModelFileError("not a pqc-model file (missing format tag)");
  if (j.value("version", 0) != 1) throw ModelFileError("unsupported model file version");
  const int n = j.value("n", 0);
  if (n < 1) throw ModelFileError("n must be a positive integer");
  Model m;
  m.frame = CoframeModel(n);
  const int dim = m.dim();
  m.name = j.value("name", "");

  if (j.contains("basis")) {
    m.basis_names = j["basis"].get<std::vector<std::string>>();
    if (static_cast<int>(m.basis_names.size()) != dim)
      throw ModelFileError("basis: expected " + std::to_string(dim) + " names");
  } else {
    m.basis_names.resize(dim);
    for (int a = 0; a < dim; ++a) m.basis_names[a] = "e" + std::to_string(a + 1);
  }

  const auto eta = j.at("eta");
  if (!eta.is_array() || eta.size() != 3) throw ModelFileError("eta: expected three indices");
  m.eta[0] = -1;
  for (int s = 1; s <= 3; ++s) {
    const int idx = eta[s - 1].get<int>();
    if (idx < 4 * n + 1 || idx > dim)
      throw ModelFileError("eta_" + std::to_string(s) + " index " + std::to_string(idx) +
                           " is not a vertical coframe position");
    m.eta[s] = idx - 1;
  }
  if (m.eta[1] == m.eta[2] || m.eta[1] == m.eta[3] || m.eta[2] == m.eta[3])
    throw ModelFileError("eta indices must be distinct");

  // structure constants: accept any order, reject antisymmetry conflicts
  std::vector<bool> seen(static_cast<std::size_t>(dim) * dim * dim, false);
  auto key = [dim](int a, int b, int c) {
    return (static_cast<std::size_t>(a) * dim + b) * dim + c;
  };
  for (const auto& entry : j.at("structure_constants")) {
    if (!entry.is_array() || entry.size() != 4)
      throw ModelFileError("structure_constants: entries must be [a, b, c, value]");
    const int a = entry[0].get<int>(), b = entry[1].get<int>(), c = entry[2].get<int>();
    if (a < 1 || a > dim || b < 1 || b > dim || c < 1 || c > dim)
      throw ModelFileError("structure constant (" + std::to_string(a) + "," + std::to_string(b) +
                           "," + std::to_string(c) + "): index out of range");
    const Rat v = rat_from_string(entry[3].get<std::string>());
    if (b == c && !is_zero(v))
      throw ModelFileError("structure constant (" + std::to_string(a) + "," + std::to_string(b) +
                           "," + std::to_string(c) + ") violates antisymmetry: C^a_{bb} != 0");
    const Rat prev = m.frame.C(a - 1, b - 1, c - 1);
    if (seen[key(a - 1, b - 1, c - 1)] && prev != v)
      throw ModelFileError("structure constants at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) +
                           ") violate antisymmetry: " + rat_to_string(v) + " conflicts with " +
                           rat_to_string(-prev) + " declared for the swapped pair");
    m.frame.set_C(a - 1, b - 1, c - 1, v);
    seen[key(a - 1, b - 1, c - 1)] = true;
    seen[key(a - 1, c - 1, b - 1)] = true;
  }

  if (const auto w = m.frame.jacobi_witness()) {
    std::ostringstream os;
    os << "structure constants fail the Jacobi identity: cyclic sum over (e" << (*w)[0] + 1 << ",e"
       << (*w)[1] + 1 << ",e" << (*w)[2] + 1 << ") has nonzero e" << (*w)[3] + 1 << " component";
    throw ModelFileError(os.str());
  }

  m.g_h = matrix_from_json(j.at("metric_h"), 4 * n, 4 * n, "metric_h");
  if (!m.g_h.is_symmetric()) throw ModelFileError("metric_h must be symmetric");
  for (int s = 1; s <= 3; ++s)
    m.I[s] = matrix_from_json(j.at("I" + std::to_string(s)), 4 * n, 4 * n,
                              "I" + std::to_string(s));

  if (j.contains("metadata"))
    for (auto it = j["metadata"].begin(); it != j["metadata"].end(); ++it)
      m.metadata[it.key()] = it.value().get<std::string>();
  return m;
}

inline void save_model(const Model& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ModelFileError("cannot open '" + path + "' for writing");
  f << model_to_json(m).dump(2) << "\n";
}

inline Model load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ModelFileError("cannot open '" + path + "'");
  ordered_json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw ModelFileError(std::string("JSON parse error in '") + path + "': " + e.what());
  }
  return model_from_json(j);
}

}  // namespace pqc
