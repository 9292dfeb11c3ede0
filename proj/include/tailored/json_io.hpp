#pragma once

#include <json.hpp>

#include "tailored/estimation.hpp"
#include "tailored/kmedoids.hpp"
#include "tailored/matrix.hpp"
#include "tailored/native_selection.hpp"
#include "tailored/nset.hpp"

namespace tailored {

// JSON views of the pipeline artifacts. Example/medoid indices are mapped to
// ids through the matrix so files remain meaningful without the original
// ordering.

nlohmann::json coreset_to_json(const Coreset& coreset, const CorrectnessMatrix& matrix);
Coreset coreset_from_json(const nlohmann::json& doc, const CorrectnessMatrix& matrix);

nlohmann::json native_selection_to_json(const NativeSelection& selection);
NativeSelection native_selection_from_json(const nlohmann::json& doc);

nlohmann::json nset_to_json(const NSetResult& nset, const CorrectnessMatrix& matrix);
NSetResult nset_from_json(const nlohmann::json& doc, const CorrectnessMatrix& matrix);

nlohmann::json estimate_to_json(const PerformanceEstimate& estimate,
                                const CorrectnessMatrix& matrix);

nlohmann::json split_to_json(const ModelSplit& split);
ModelSplit split_from_json(const nlohmann::json& doc);

}  // namespace tailored
