#pragma once

// JSON encodings shared by the command reports. Rationals are strings "p/q"
// (or "p"), elements are arrays of {path, arrows, coefficient} with arrows as
// arrow indices in traversal order.

#include "covol/cli/workspace.hpp"

#include <nlohmann/json.hpp>

namespace covol::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json rationalJson(const Rational& r);
Json elementJson(const PathIndex& index, const SparseVector& v);
Json weightingJson(const Quiver& q, const ArrowWeighting& w);
Json workspaceJson(const Workspace& w);

}  // namespace covol::cli
