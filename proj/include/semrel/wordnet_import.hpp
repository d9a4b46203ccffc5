#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semrel/relation.hpp"
#include "semrel/thesaurus.hpp"

namespace semrel {

/// One synset record of a Princeton `data.*` file.
struct WordNetSynset {
  std::string key;  // offset-pos, satellites folded into "a"
  Pos pos;
  std::vector<std::string> lemmas;  // normalized
  std::vector<std::pair<Relation, std::string>> pointers;
};

/// Maps a pointer symbol to an edge type; nullopt for symbols we skip.
std::optional<Relation> wordnet_pointer(std::string_view symbol);

/// Parses one data line. Header (license) lines yield nullopt. Throws
/// DataError on truncated records.
std::optional<WordNetSynset> parse_data_line(std::string_view line, const std::string& file, std::size_t line_no);

struct ImportSummary {
  std::size_t senses = 0;
  std::size_t lemma_rows = 0;
  std::size_t edges = 0;
  std::size_t ic_rows = 0;
};

/// Converts `data.{noun,verb,adj,adv}` in `dict_dir` into `lexicon.tsv` and
/// `edges.tsv` under `out_dir`. With `ic_counts` (an `ic-*.dat` count file)
/// also writes `ic.tsv` with per-POS probabilities count / root total.
ImportSummary import_wordnet(const std::string& dict_dir, const std::string& out_dir,
                             const std::optional<std::string>& ic_counts = std::nullopt);

}  // namespace semrel
