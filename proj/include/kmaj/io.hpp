#pragma once

#include <string>

#include <json.hpp>

#include "kmaj/operators.hpp"
#include "kmaj/procp.hpp"
#include "kmaj/seq.hpp"

namespace kmaj {

using Json = nlohmann::json;

// Sequence files: {"mode": "rational"|"float", "values": ["3/2", ...] | [1.5, ...]}.
Seq seq_from_json(const Json& j);
Json seq_to_json(const Seq& x);
Seq read_seq_file(const std::string& path);
void write_seq_file(const std::string& path, const Seq& x);

Json interval_to_json(const Interval& p);
Json interval_set_to_json(const IntervalSet& s);
Json scalar_to_json(const Scalar& s);

Json combo_to_json(const ConvexCombo& combo);
Json step_to_json(const PStep& st);
Json decomposition_to_json(const PDecomposition& d);
Json pipeline_to_json(const PipelineResult& r);

} // namespace kmaj
