#include "semrel/wordnet_import.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "semrel/error.hpp"

namespace semrel {
namespace {

struct PointerSymbol {
  std::string_view symbol;
  Relation type;
};

constexpr PointerSymbol kPointers[] = {
    {"!", Relation::antonym},
    {"@", Relation::hypernym},
    {"@i", Relation::hypernym},
    {"~", Relation::hyponym},
    {"~i", Relation::hyponym},
    {"#m", Relation::member_holonym},
    {"#s", Relation::substance_holonym},
    {"#p", Relation::part_holonym},
    {"%m", Relation::member_meronym},
    {"%s", Relation::substance_meronym},
    {"%p", Relation::part_meronym},
    {"=", Relation::attribute},
    {"+", Relation::nominalization},
    {";c", Relation::category_domain},
    {"-c", Relation::category_domain},
    {";r", Relation::region_domain},
    {"-r", Relation::region_domain},
    {";u", Relation::usage_domain},
    {"-u", Relation::usage_domain},
    {"&", Relation::similar},
    {"$", Relation::verb_group},
    {"^", Relation::also_see},
    {"*", Relation::entailment},
    {">", Relation::cause},
    {"\\", Relation::derived},
    {"<", Relation::participle_of},
};

std::string synset_key(std::string_view offset, std::string_view pos_letter) {
  std::string key(offset);
  key += '-';
  key += pos_letter == "s" ? "a" : std::string(pos_letter);
  return key;
}

// Adjective lemmas may carry a syntactic marker such as "(a)" or "(ip)".
std::string clean_lemma(std::string_view word) {
  if (auto p = word.find('('); p != std::string_view::npos && word.back() == ')') word = word.substr(0, p);
  return normalize_lemma(word);
}

std::size_t parse_count(std::string_view s, int base, const std::string& file, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw DataError(file, line, "bad count '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::optional<Relation> wordnet_pointer(std::string_view symbol) {
  for (const auto& p : kPointers)
    if (p.symbol == symbol) return p.type;
  return std::nullopt;
}

std::optional<WordNetSynset> parse_data_line(std::string_view line, const std::string& file, std::size_t line_no) {
  if (line.empty() || line.front() == ' ') return std::nullopt;
  if (auto bar = line.find('|'); bar != std::string_view::npos) line = line.substr(0, bar);

  std::istringstream in{std::string(line)};
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(std::move(t));

  std::size_t i = 0;
  auto next = [&]() -> const std::string& {
    if (i >= tok.size()) throw DataError(file, line_no, "truncated synset record");
    return tok[i++];
  };

  WordNetSynset s;
  const auto offset = next();
  next();  // lexicographer file
  const auto ss_type = next();
  auto pos = parse_pos(ss_type);
  if (!pos) throw DataError(file, line_no, "unknown synset type '" + ss_type + "'");
  s.pos = *pos;
  s.key = synset_key(offset, ss_type);

  const auto words = parse_count(next(), 16, file, line_no);
  for (std::size_t w = 0; w < words; ++w) {
    s.lemmas.push_back(clean_lemma(next()));
    next();  // lex_id
  }
  const auto pointers = parse_count(next(), 10, file, line_no);
  for (std::size_t p = 0; p < pointers; ++p) {
    const auto symbol = next();
    const auto target = next();
    const auto target_pos = next();
    next();  // source/target word numbers
    if (auto r = wordnet_pointer(symbol)) s.pointers.emplace_back(*r, synset_key(target, target_pos));
  }
  return s;
}

ImportSummary import_wordnet(const std::string& dict_dir, const std::string& out_dir,
                             const std::optional<std::string>& ic_counts) {
  namespace fs = std::filesystem;
  ImportSummary summary;
  std::vector<WordNetSynset> synsets;
  for (const char* part : {"noun", "verb", "adj", "adv"}) {
    const auto path = (fs::path(dict_dir) / (std::string("data.") + part)).string();
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n)
      if (auto s = parse_data_line(line, path, n)) synsets.push_back(std::move(*s));
  }

  std::set<std::string> keys;
  for (const auto& s : synsets) keys.insert(s.key);

  fs::create_directories(out_dir);
  std::ofstream lex(fs::path(out_dir) / "lexicon.tsv");
  std::ofstream edges(fs::path(out_dir) / "edges.tsv");
  if (!lex || !edges) throw DataError("cannot write to " + out_dir);

  std::set<std::tuple<std::string, Relation, std::string>> seen;
  for (const auto& s : synsets) {
    ++summary.senses;
    std::set<std::string> lemmas(s.lemmas.begin(), s.lemmas.end());
    for (const auto& l : lemmas) {
      lex << l << '\t' << name(s.pos) << '\t' << s.key << '\n';
      ++summary.lemma_rows;
    }
    for (const auto& [type, target] : s.pointers) {
      if (target == s.key) continue;
      if (!keys.contains(target)) throw DataError("pointer from " + s.key + " to unknown synset " + target);
      // The loader restores inverses, so each undirected link is written once.
      if (seen.contains({target, inverse(type), s.key}) || !seen.insert({s.key, type, target}).second) continue;
      edges << s.key << '\t' << name(type) << '\t' << target << '\n';
      ++summary.edges;
    }
  }

  if (ic_counts) {
    std::ifstream in(*ic_counts);
    if (!in) throw DataError("cannot open " + *ic_counts);
    std::map<char, double> root_total;
    std::vector<std::pair<std::string, double>> counts;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      if (n == 1 && line.starts_with("wnver")) continue;
      std::istringstream row(line);
      std::string id, count, root;
      if (!(row >> id >> count)) continue;
      row >> root;
      if (id.size() < 2) throw DataError(*ic_counts, n, "bad synset id");
      const char p = id.back();
      auto key = synset_key(std::string(8 - std::min<std::size_t>(8, id.size() - 1), '0') + id.substr(0, id.size() - 1),
                            std::string(1, p));
      double c = 0;
      try {
        c = std::stod(count);
      } catch (const std::exception&) {
        throw DataError(*ic_counts, n, "bad count");
      }
      if (root == "ROOT") root_total[key.back()] += c;
      if (keys.contains(key)) counts.emplace_back(std::move(key), c);
    }
    std::ofstream ic(fs::path(out_dir) / "ic.tsv");
    ic.precision(17);
    for (const auto& [key, c] : counts) {
      const double total = root_total[key.back()];
      if (c <= 0.0 || total <= 0.0) continue;
      ic << key << '\t' << std::min(1.0, c / total) << '\n';
      ++summary.ic_rows;
    }
  }
  return summary;
}

}  // namespace semrel
