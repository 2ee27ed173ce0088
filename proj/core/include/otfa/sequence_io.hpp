#pragma once

// JSON persistence for grid sequences:
//   { "shape": [n0, n1, ...], "values": [[re, im], ...] }
// Values are in storage order (axis 0 fastest). Plain numbers are accepted as
// real values. Doubles are written in shortest round-trip form.

#include <filesystem>
#include <string>
#include <string_view>

#include "otfa/grid.hpp"

namespace otfa {

std::string sequence_to_json(const GridSequence& seq, int indent = -1);
GridSequence sequence_from_json(std::string_view text);

/// Throws IoError with the path on failure, ParseError on malformed content.
GridSequence read_sequence(const std::filesystem::path& path);
void write_sequence(const std::filesystem::path& path, const GridSequence& seq);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace otfa
