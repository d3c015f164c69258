#pragma once

#include "marsem/classify.hpp"

#include <json.hpp>

#include <string>

namespace marsem {

using Json = nlohmann::json;

/// Model file: {"ground": [...], "facets": [[...],...], "shape": [...]}.
SpacePtr load_model(const Json& j);
Json model_json(const MarginalSpace& space);

/// Table file: {"shape": [...], "cells": [{"index": [...], "count": k}]}.
/// Counts are accepted as JSON integers or decimal strings and always
/// emitted as strings.
Table load_table(const Json& j);
Json table_json(const Table& u);

/// Graph from the model JSON (facets of at most two vertices) or from the
/// edge-list text format, chosen by content.
Graph load_graph_text_or_json(const std::string& content);

Json full_vector_json(const FullMarginalVector& v);
Json reduced_vector_json(const ReducedMarginalVector& v);

Json inequality_json(const MarginalSpace& space, const LinearInequality& row);
Json system_json(const InequalitySystem& sys);

Json hole_json(const HoleReport& h);
Json facepopper_json(const FacepopperReport& rep);
Json minor_op_json(const MinorOp& op);
Json decomposition_json(const Decomposition& d);
Json certificate_json(const NormalityCertificate& cert);

} // namespace marsem
