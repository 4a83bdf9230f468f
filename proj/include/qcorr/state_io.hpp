#pragma once

// JSON state files:
//
//   { "dims": [2,2,2], "labels": ["A","B","E"], "kind": "density" | "pure" | "unitary",
//     "entries": [[re,im], ...] }
//
// `entries` is the row-major flattening of the matrix (or the amplitude
// vector for "pure"). For "unitary" the dims/labels fields are optional; if
// present their product must match the matrix dimension.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qcorr/state.hpp"

namespace qcorr::io {

/// Parses and validates a state. Throws ParseError for malformed documents and
/// InvariantError (naming the invariant) for states that fail validation.
QuantumState state_from_json(const nlohmann::json& doc);
QuantumState read_state_file(const std::filesystem::path& path);

UnitaryMatrix unitary_from_json(const nlohmann::json& doc);
UnitaryMatrix read_unitary_file(const std::filesystem::path& path);

nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const UnitaryMatrix& u);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace qcorr::io
