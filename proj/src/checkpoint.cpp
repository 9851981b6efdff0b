#include "paradox/checkpoint.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "paradox/errors.hpp"

namespace paradox {

std::string search_config_hash(std::uint64_t lo, std::uint64_t hi, Formalism f,
                               std::uint64_t block_size, std::uint64_t budget) {
  std::ostringstream key;
  key << lo << '|' << hi << '|' << to_string(f) << '|' << block_size << '|' << budget;
  // FNV-1a, 64 bit
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : key.str()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

void write_checkpoint(const std::filesystem::path& path, const SearchCheckpoint& cp) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << "# paradox search checkpoint\n"
        << "format = 1\n"
        << "config_hash = " << cp.config_hash << '\n'
        << "range_lo = " << cp.lo << '\n'
        << "range_hi = " << cp.hi << '\n'
        << "formalism = " << to_string(cp.formalism) << '\n'
        << "block_size = " << cp.block_size << '\n'
        << "budget = " << cp.budget << '\n'
        << "cursor = " << cp.cursor << '\n'
        << "hits = " << cp.hits.size() << '\n';
    for (const ParadoxHit& h : cp.hits) out << "hit = " << to_csv_row(h) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("failed writing checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::uint64_t parse_u64(const std::string& value, std::size_t line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw DataError("expected an unsigned integer, got '" + value + "'", line);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SearchCheckpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  SearchCheckpoint cp;
  std::optional<std::uint64_t> declared_hits;
  std::string raw;
  std::size_t line = 0;
  bool saw_format = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw DataError("expected 'key = value'", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "format") {
      if (value != "1") throw DataError("unsupported checkpoint format " + value, line);
      saw_format = true;
    } else if (key == "config_hash") {
      cp.config_hash = value;
    } else if (key == "range_lo") {
      cp.lo = parse_u64(value, line);
    } else if (key == "range_hi") {
      cp.hi = parse_u64(value, line);
    } else if (key == "formalism") {
      try {
        cp.formalism = parse_formalism(value);
      } catch (const std::invalid_argument& e) {
        throw DataError(e.what(), line);
      }
    } else if (key == "block_size") {
      cp.block_size = parse_u64(value, line);
    } else if (key == "budget") {
      cp.budget = parse_u64(value, line);
    } else if (key == "cursor") {
      cp.cursor = parse_u64(value, line);
    } else if (key == "hits") {
      declared_hits = parse_u64(value, line);
    } else if (key == "hit") {
      try {
        cp.hits.push_back(parse_csv_row(value));
      } catch (const DataError& e) {
        throw DataError(e.what(), line);
      }
    } else {
      throw DataError("unknown checkpoint key '" + key + "'", line);
    }
  }
  if (!saw_format) throw DataError("checkpoint has no format line");
  if (declared_hits && *declared_hits != cp.hits.size()) {
    throw DataError("checkpoint declares " + std::to_string(*declared_hits) + " hits but holds " +
                    std::to_string(cp.hits.size()));
  }
  return cp;
}

}  // namespace paradox
