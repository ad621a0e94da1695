#pragma once

#include "irmia/iofmt.hpp"
#include "irmia/model.hpp"

#include <string>
#include <vector>

namespace irmia::testing {

std::string data_path(const std::string& stem);
IrMia golden(const std::string& stem);
std::vector<std::string> golden_files();  // full paths, sorted
std::string read_text(const std::string& path);

// Lines of the canonical text present on only one side, prefixed "- " (got)
// or "+ " (want). Header lines are skipped; empty when isomorphic.
std::string structural_diff(const IrMia& got, const IrMia& want);

}  // namespace irmia::testing
