#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "paradox/search.hpp"

namespace paradox {

// Key-value text file, one "key = value" per line, '#' comments. Hits are
// stored as repeated "hit = <csv row>" lines.
struct SearchCheckpoint {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  Formalism formalism = Formalism::Shortcut;
  std::uint64_t block_size = 0;
  std::uint64_t budget = 0;
  std::string config_hash;
  std::uint64_t cursor = 0;  // every start below cursor is covered
  std::vector<ParadoxHit> hits;
};

// Stable digest of everything that determines the search output.
std::string search_config_hash(std::uint64_t lo, std::uint64_t hi, Formalism f,
                               std::uint64_t block_size, std::uint64_t budget);

// Writes to a sibling temporary file and renames it over `path`.
void write_checkpoint(const std::filesystem::path& path, const SearchCheckpoint& cp);
// Throws DataError on malformed content.
SearchCheckpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace paradox
