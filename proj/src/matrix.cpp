#include "tailored/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "tailored/error.hpp"
#include "tailored/random.hpp"

namespace tailored {

std::string to_string(CorrectnessKind kind) {
  return kind == CorrectnessKind::binary ? "binary" : "continuous";
}

CorrectnessKind correctness_kind_from_string(const std::string& name) {
  if (name == "binary") return CorrectnessKind::binary;
  if (name == "continuous") return CorrectnessKind::continuous;
  throw ValidationError("unknown correctness kind \"" + name +
                        "\" (expected \"continuous\" or \"binary\")");
}

namespace {

void check_unique(const std::vector<std::string>& ids, const char* what) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!seen.insert(ids[i]).second) {
      throw ValidationError(std::string("duplicate ") + what + " id \"" + ids[i] +
                            "\" at position " + std::to_string(i));
    }
  }
}

}  // namespace

CorrectnessMatrix CorrectnessMatrix::create(std::vector<std::string> model_ids,
                                            std::vector<std::string> example_ids,
                                            std::vector<double> values,
                                            std::optional<CorrectnessKind> declared_kind) {
  if (model_ids.empty()) throw ValidationError("matrix has no models");
  if (example_ids.empty()) throw ValidationError("matrix has no examples");
  check_unique(model_ids, "model");
  check_unique(example_ids, "example");
  if (values.size() != model_ids.size() * example_ids.size()) {
    throw ValidationError("matrix values size " + std::to_string(values.size()) +
                          " does not match " + std::to_string(model_ids.size()) + " x " +
                          std::to_string(example_ids.size()));
  }

  bool all_binary = true;
  for (std::size_t m = 0; m < model_ids.size(); ++m) {
    for (std::size_t k = 0; k < example_ids.size(); ++k) {
      const double v = values[m * example_ids.size() + k];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("value out of range [0,1] at (row " + std::to_string(m) +
                              ", col " + std::to_string(k) + "): " + std::to_string(v));
      }
      if (v != 0.0 && v != 1.0) all_binary = false;
    }
  }

  CorrectnessKind kind = all_binary ? CorrectnessKind::binary : CorrectnessKind::continuous;
  if (declared_kind) {
    if (*declared_kind == CorrectnessKind::binary && !all_binary) {
      for (std::size_t m = 0; m < model_ids.size(); ++m) {
        for (std::size_t k = 0; k < example_ids.size(); ++k) {
          const double v = values[m * example_ids.size() + k];
          if (v != 0.0 && v != 1.0) {
            throw ValidationError("matrix declared binary but value at (row " +
                                  std::to_string(m) + ", col " + std::to_string(k) +
                                  ") is " + std::to_string(v));
          }
        }
      }
    }
    kind = *declared_kind;
  }

  CorrectnessMatrix matrix;
  matrix.model_ids_ = std::move(model_ids);
  matrix.example_ids_ = std::move(example_ids);
  matrix.values_ = std::move(values);
  matrix.kind_ = kind;
  matrix.model_index_.reserve(matrix.model_ids_.size());
  for (std::size_t i = 0; i < matrix.model_ids_.size(); ++i) {
    matrix.model_index_.emplace(matrix.model_ids_[i], i);
  }
  matrix.example_index_.reserve(matrix.example_ids_.size());
  for (std::size_t i = 0; i < matrix.example_ids_.size(); ++i) {
    matrix.example_index_.emplace(matrix.example_ids_[i], i);
  }
  return matrix;
}

std::size_t CorrectnessMatrix::model_index(const std::string& id) const {
  const auto it = model_index_.find(id);
  if (it == model_index_.end()) throw ValidationError("unknown model id \"" + id + "\"");
  return it->second;
}

std::size_t CorrectnessMatrix::example_index(const std::string& id) const {
  const auto it = example_index_.find(id);
  if (it == example_index_.end()) throw ValidationError("unknown example id \"" + id + "\"");
  return it->second;
}

MatrixFormat matrix_format_from_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".csv") return MatrixFormat::csv;
  if (ext == ".json") return MatrixFormat::json;
  throw ValidationError("cannot infer matrix format from extension \"" + ext +
                        "\" (expected .csv or .json)");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (const char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  double v{};
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("cannot parse value \"" + cell + "\" at (row " +
                          std::to_string(row) + ", col " + std::to_string(col) + ")");
  }
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError("value out of range [0,1] at (row " + std::to_string(row) +
                          ", col " + std::to_string(col) + "): " + cell);
  }
  return v;
}

CorrectnessMatrix load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty CSV file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();

  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "model_id") {
    throw ValidationError("CSV header must start with \"model_id\"");
  }
  std::vector<std::string> example_ids(header.begin() + 1, header.end());
  if (example_ids.empty()) throw ValidationError("CSV header declares no examples");

  std::vector<std::string> model_ids;
  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != example_ids.size() + 1) {
      throw ValidationError("ragged CSV row " + std::to_string(row) + ": expected " +
                            std::to_string(example_ids.size() + 1) + " cells, got " +
                            std::to_string(cells.size()));
    }
    model_ids.push_back(cells[0]);
    for (std::size_t col = 0; col < example_ids.size(); ++col) {
      values.push_back(parse_cell(cells[col + 1], row, col));
    }
    ++row;
  }
  return CorrectnessMatrix::create(std::move(model_ids), std::move(example_ids),
                                   std::move(values));
}

CorrectnessMatrix load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("JSON parse failure in " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("matrix JSON must be an object");
  for (const char* key : {"model_ids", "example_ids", "values"}) {
    if (!doc.contains(key)) {
      throw ValidationError(std::string("matrix JSON missing key \"") + key + "\"");
    }
  }

  std::vector<std::string> model_ids;
  std::vector<std::string> example_ids;
  try {
    model_ids = doc["model_ids"].get<std::vector<std::string>>();
    example_ids = doc["example_ids"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("matrix JSON id arrays malformed: ") + e.what());
  }

  const auto& rows = doc["values"];
  if (!rows.is_array() || rows.size() != model_ids.size()) {
    throw ValidationError("matrix JSON \"values\" must be an array with one row per model");
  }
  std::vector<double> values;
  values.reserve(model_ids.size() * example_ids.size());
  for (std::size_t m = 0; m < rows.size(); ++m) {
    const auto& row = rows[m];
    if (!row.is_array() || row.size() != example_ids.size()) {
      throw ValidationError("ragged JSON row " + std::to_string(m) + ": expected " +
                            std::to_string(example_ids.size()) + " values");
    }
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number()) {
        throw ValidationError("non-numeric value at (row " + std::to_string(m) + ", col " +
                              std::to_string(k) + ")");
      }
      values.push_back(row[k].get<double>());
    }
  }

  std::optional<CorrectnessKind> kind;
  if (doc.contains("kind") && !doc["kind"].is_null()) {
    kind = correctness_kind_from_string(doc["kind"].get<std::string>());
  }
  return CorrectnessMatrix::create(std::move(model_ids), std::move(example_ids),
                                   std::move(values), kind);
}

std::string format_value(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

void check_csv_safe(const std::string& id) {
  if (id.find_first_of(",\"\r\n") != std::string::npos) {
    throw ValidationError("id \"" + id + "\" contains characters not representable in CSV");
  }
}

void save_csv(const CorrectnessMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << "model_id";
  for (const auto& id : matrix.example_ids()) {
    check_csv_safe(id);
    out << ',' << id;
  }
  out << '\n';
  for (std::size_t m = 0; m < matrix.num_models(); ++m) {
    check_csv_safe(matrix.model_ids()[m]);
    out << matrix.model_ids()[m];
    for (std::size_t k = 0; k < matrix.num_examples(); ++k) {
      out << ',' << format_value(matrix.value(m, k));
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failure: " + path.string());
}

void save_json(const CorrectnessMatrix& matrix, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["model_ids"] = matrix.model_ids();
  doc["example_ids"] = matrix.example_ids();
  doc["kind"] = to_string(matrix.kind());
  auto rows = nlohmann::json::array();
  for (std::size_t m = 0; m < matrix.num_models(); ++m) {
    auto row = nlohmann::json::array();
    for (std::size_t k = 0; k < matrix.num_examples(); ++k) row.push_back(matrix.value(m, k));
    rows.push_back(std::move(row));
  }
  doc["values"] = std::move(rows);
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << doc.dump(1) << '\n';
  if (!out) throw ValidationError("write failure: " + path.string());
}

}  // namespace

CorrectnessMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  return format == MatrixFormat::csv ? load_csv(path) : load_json(path);
}

void save_matrix(const CorrectnessMatrix& matrix, const std::filesystem::path& path,
                 MatrixFormat format) {
  if (format == MatrixFormat::csv) {
    save_csv(matrix, path);
  } else {
    save_json(matrix, path);
  }
}

void validate_split(const CorrectnessMatrix& matrix, const ModelSplit& split) {
  if (split.source_ids.empty()) throw ValidationError("source model set is empty");
  if (split.target_ids.empty()) throw ValidationError("target model set is empty");
  std::unordered_set<std::string> sources;
  for (const auto& id : split.source_ids) {
    matrix.model_index(id);
    if (!sources.insert(id).second) {
      throw ValidationError("duplicate source id \"" + id + "\"");
    }
  }
  std::unordered_set<std::string> targets;
  for (const auto& id : split.target_ids) {
    matrix.model_index(id);
    if (!targets.insert(id).second) {
      throw ValidationError("duplicate target id \"" + id + "\"");
    }
    if (sources.count(id) != 0) {
      throw ValidationError("model \"" + id + "\" is in both source and target sets");
    }
  }
}

ModelSplit split_models(const CorrectnessMatrix& matrix, double source_fraction,
                        std::uint64_t seed) {
  const std::size_t n = matrix.num_models();
  if (n < 2) throw ValidationError("need at least 2 models to split");
  if (!(source_fraction > 0.0 && source_fraction < 1.0)) {
    throw ValidationError("source fraction must lie in (0, 1)");
  }
  auto count = static_cast<std::size_t>(
      std::llround(source_fraction * static_cast<double>(n)));
  count = std::clamp<std::size_t>(count, 1, n - 1);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  shuffle_inplace(order, rng);

  std::vector<std::size_t> source(order.begin(), order.begin() + count);
  std::vector<std::size_t> target(order.begin() + count, order.end());
  std::sort(source.begin(), source.end());
  std::sort(target.begin(), target.end());

  ModelSplit split;
  split.source_ids.reserve(source.size());
  for (const auto i : source) split.source_ids.push_back(matrix.model_ids()[i]);
  split.target_ids.reserve(target.size());
  for (const auto i : target) split.target_ids.push_back(matrix.model_ids()[i]);
  return split;
}

double true_performance(const CorrectnessMatrix& matrix, const std::string& model_id) {
  const auto row = matrix.row(matrix.model_index(model_id));
  double sum = 0.0;
  for (const double v : row) sum += v;
  return sum / static_cast<double>(row.size());
}

ExamplesEmbedding embed_examples(const CorrectnessMatrix& matrix,
                                 const std::vector<std::string>& basis_model_ids,
                                 const std::vector<std::size_t>* example_subset) {
  if (basis_model_ids.empty()) throw ValidationError("embedding basis is empty");
  std::vector<std::size_t> basis_rows;
  basis_rows.reserve(basis_model_ids.size());
  for (const auto& id : basis_model_ids) basis_rows.push_back(matrix.model_index(id));

  ExamplesEmbedding embedding;
  embedding.basis_model_ids = basis_model_ids;
  if (example_subset) {
    for (const auto k : *example_subset) {
      if (k >= matrix.num_examples()) {
        throw ValidationError("example index " + std::to_string(k) + " out of range");
      }
    }
    embedding.example_indices = *example_subset;
  } else {
    embedding.example_indices.resize(matrix.num_examples());
    for (std::size_t k = 0; k < matrix.num_examples(); ++k) embedding.example_indices[k] = k;
  }
  embedding.dim = basis_rows.size();
  embedding.data.resize(embedding.example_indices.size() * embedding.dim);
  for (std::size_t i = 0; i < embedding.example_indices.size(); ++i) {
    const std::size_t k = embedding.example_indices[i];
    for (std::size_t n = 0; n < basis_rows.size(); ++n) {
      embedding.data[i * embedding.dim + n] = matrix.value(basis_rows[n], k);
    }
  }
  return embedding;
}

}  // namespace tailored
