#pragma once

#include "covol/cli/json.hpp"
#include "covol/cli/workspace.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace covol::cli {

/// A command could not run on this workspace (missing declaration, bad option, ...).
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t window = 2;
  /// "x=1,y=0": vertex weighting for twist and csm-iso. Unlisted vertices get 1.
  std::optional<std::string> gamma;
  std::optional<std::string> weighting;
  std::optional<std::string> subcoalgebra;
  std::optional<std::string> comodule;
};

struct Report {
  Json json;
  /// Every property the command asserts holds.
  bool ok = true;
  std::string dot;
};

const std::vector<std::string>& commandNames();

/// Throws CommandError for unknown commands and unmet preconditions.
Report run(const std::string& command, const Workspace& ws, const Options& options = {});

/// Parses "x=1,y=0" against the quiver's vertices.
VertexWeighting parseVertexWeighting(const Quiver& q, const Group& g, const std::string& text);

}  // namespace covol::cli
