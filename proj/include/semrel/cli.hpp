#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "semrel/pathfinder.hpp"

namespace semrel {

enum class OutputFormat { tsv, structured };

/// Settings shared by every subcommand.
struct RunConfig {
  std::string data_dir;  // holds lexicon.tsv and edges.tsv
  std::string lexicon;
  std::string edges;
  std::optional<std::string> weights;
  std::optional<std::string> depths;
  std::optional<std::string> stopwords;
  std::optional<std::string> df_table;
  std::optional<std::string> cache;
  std::optional<std::string> ic;
  Measure mode = Measure::sr;
  bool simple = false;
  bool identical_term_unity = false;
  double threshold = 0.2;
  OutputFormat format = OutputFormat::tsv;
  unsigned threads = 1;
  std::optional<std::size_t> max_length;
};

/// Exit codes of `run_cli`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Parses argv and runs one subcommand. Results go to `out`, diagnostics to
/// `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semrel
