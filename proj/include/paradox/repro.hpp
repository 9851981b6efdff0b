#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "paradox/search.hpp"

namespace paradox {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> details;  // one line per individual check
  double seconds = 0;
};

struct ReproOptions {
  unsigned threads = 1;
  // Upper end of the empty-window search that starts at 4615.
  std::uint64_t null_window_hi = 10'000'000;
  std::uint64_t cst_hi = 1'150'000;
  std::uint64_t record_prefix_hi = 1'000'000;
  std::uint64_t linear_form_samples = 100'000;
  std::uint64_t seed = 20240607;
  std::filesystem::path data_dir;     // defaults to the bundled tables
  std::filesystem::path scratch_dir;  // defaults to the system temp directory
};

// Reproduction suite: ten numbered checks. Search results are shared between
// checks run through the same instance.
class ReproSuite {
 public:
  explicit ReproSuite(ReproOptions options = {});
  ~ReproSuite();

  static constexpr int kCriteria = 10;
  static std::string criterion_name(int id);

  CriterionResult run(int id);
  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& each = {});

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// Hit CSV (header plus rows) followed by the census table.
std::string render_search_output(const std::vector<ParadoxHit>& hits);

}  // namespace paradox
