#pragma once

// JSON interchange for matrices, maps and Kraus sets.
//
// Matrix:  {"rows": r, "cols": c, "entries": [[re, im], ...]}  (row-major)
// Channel: {"type": "channel", "d_in", "d_out", "cp", "tp", "hermitian",
//           "choi": <matrix>}
// Kraus:   {"type": "kraus", "d_in", "d_out", "elements": [<matrix>, ...]}
//
// Doubles are written in shortest round-trip form, so parsing restores every
// entry bit-exactly.

#include "moplab/channels.hpp"

#include <json.hpp>

#include <string>

namespace moplab {

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json channel_to_json(const Channel& ch);
Channel channel_from_json(const nlohmann::json& j);

nlohmann::json kraus_to_json(const KrausSet& ks);
KrausSet kraus_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace moplab
