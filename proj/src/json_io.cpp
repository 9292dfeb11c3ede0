#include "tailored/json_io.hpp"

#include "tailored/error.hpp"

namespace tailored {

using nlohmann::json;

json coreset_to_json(const Coreset& coreset, const CorrectnessMatrix& matrix) {
  json doc;
  auto medoids = json::array();
  for (std::size_t slot = 0; slot < coreset.medoid_indices.size(); ++slot) {
    medoids.push_back({{"example_id", matrix.example_ids()[coreset.medoid_indices[slot]]},
                       {"anchored", static_cast<bool>(coreset.anchored[slot])}});
  }
  doc["medoids"] = std::move(medoids);
  json assignment = json::object();
  for (std::size_t k = 0; k < coreset.assignment.size(); ++k) {
    assignment[matrix.example_ids()[k]] =
        matrix.example_ids()[coreset.medoid_indices[coreset.assignment[k]]];
  }
  doc["assignment"] = std::move(assignment);
  doc["objective"] = coreset.objective;
  return doc;
}

Coreset coreset_from_json(const json& doc, const CorrectnessMatrix& matrix) {
  if (!doc.is_object() || !doc.contains("medoids") || !doc.contains("assignment")) {
    throw ValidationError("coreset JSON must contain \"medoids\" and \"assignment\"");
  }
  Coreset coreset;
  std::map<std::size_t, std::size_t> slot_of_medoid;
  for (const auto& entry : doc["medoids"]) {
    const std::size_t index = matrix.example_index(entry.at("example_id").get<std::string>());
    slot_of_medoid[index] = coreset.medoid_indices.size();
    coreset.medoid_indices.push_back(index);
    coreset.anchored.push_back(entry.value("anchored", false));
  }
  if (coreset.medoid_indices.empty()) throw ValidationError("coreset JSON has no medoids");

  coreset.assignment.assign(matrix.num_examples(), 0);
  std::vector<bool> seen(matrix.num_examples(), false);
  for (const auto& [example_id, medoid_id] : doc["assignment"].items()) {
    const std::size_t k = matrix.example_index(example_id);
    const std::size_t medoid = matrix.example_index(medoid_id.get<std::string>());
    const auto it = slot_of_medoid.find(medoid);
    if (it == slot_of_medoid.end()) {
      throw ValidationError("assignment references non-medoid example \"" +
                            medoid_id.get<std::string>() + "\"");
    }
    coreset.assignment[k] = it->second;
    seen[k] = true;
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw ValidationError("assignment missing example \"" + matrix.example_ids()[k] + "\"");
    }
  }
  coreset.objective = doc.value("objective", 0.0);
  return coreset;
}

json native_selection_to_json(const NativeSelection& selection) {
  json doc;
  doc["d_bar"] = selection.d_bar;
  doc["n_bar"] = selection.n_bar;
  doc["mode"] = to_string(selection.mode);
  json per_target = json::object();
  for (const auto& [target, sources] : selection.per_target) per_target[target] = sources;
  doc["per_target"] = std::move(per_target);
  return doc;
}

NativeSelection native_selection_from_json(const json& doc) {
  NativeSelection selection;
  try {
    selection.d_bar = doc.at("d_bar").get<double>();
    selection.n_bar = doc.at("n_bar").get<std::size_t>();
    selection.mode = native_mode_from_string(doc.at("mode").get<std::string>());
    for (const auto& [target, sources] : doc.at("per_target").items()) {
      selection.per_target[target] = sources.get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("native selection JSON malformed: ") + e.what());
  }
  if (selection.per_target.empty()) {
    throw ValidationError("native selection JSON has no targets");
  }
  return selection;
}

json nset_to_json(const NSetResult& nset, const CorrectnessMatrix& matrix) {
  json doc;
  doc["target_id"] = nset.target_id;
  doc["basis_source_ids"] = nset.basis_source_ids;
  doc["coreset"] = coreset_to_json(nset.coreset, matrix);
  return doc;
}

NSetResult nset_from_json(const json& doc, const CorrectnessMatrix& matrix) {
  NSetResult nset;
  try {
    nset.target_id = doc.at("target_id").get<std::string>();
    nset.basis_source_ids = doc.at("basis_source_ids").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("N-set JSON malformed: ") + e.what());
  }
  nset.coreset = coreset_from_json(doc.at("coreset"), matrix);
  return nset;
}

json estimate_to_json(const PerformanceEstimate& estimate, const CorrectnessMatrix& matrix) {
  json doc;
  doc["target_id"] = estimate.target_id;
  doc["method"] = to_string(estimate.method);
  doc["estimate"] = estimate.estimate;
  doc["inference_count"] = estimate.inference_count;
  if (estimate.per_example) {
    json per_example = json::object();
    for (std::size_t k = 0; k < estimate.per_example->size(); ++k) {
      per_example[matrix.example_ids()[k]] = (*estimate.per_example)[k];
    }
    doc["per_example"] = std::move(per_example);
  }
  if (estimate.per_example_raw) {
    json raw = json::object();
    for (std::size_t k = 0; k < estimate.per_example_raw->size(); ++k) {
      raw[matrix.example_ids()[k]] = (*estimate.per_example_raw)[k];
    }
    doc["per_example_raw"] = std::move(raw);
  }
  return doc;
}

json split_to_json(const ModelSplit& split) {
  return {{"source_ids", split.source_ids}, {"target_ids", split.target_ids}};
}

ModelSplit split_from_json(const json& doc) {
  ModelSplit split;
  try {
    split.source_ids = doc.at("source_ids").get<std::vector<std::string>>();
    split.target_ids = doc.at("target_ids").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("split JSON malformed: ") + e.what());
  }
  return split;
}

}  // namespace tailored
