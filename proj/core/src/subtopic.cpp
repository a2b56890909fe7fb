#include "cscope/subtopic.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "cscope/errors.hpp"

namespace cscope {

void StopwordConfig::validate() const {
  for (const auto* set : {&standard, &custom, &noun_pos_tags}) {
    if (set->contains("")) throw InvalidArgument("stopword configuration has an empty entry");
  }
}

CountMode parse_count_mode(std::string_view name) {
  if (name == "occurrences") return CountMode::Occurrences;
  if (name == "documents") return CountMode::Documents;
  throw InvalidArgument("unknown count mode '" + std::string(name) + "'");
}

WordSet read_word_list(std::istream& in) {
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    words.insert(line.substr(first, last - first + 1));
  }
  return words;
}

WordSet load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open word list " + path.string());
  return read_word_list(in);
}

FrequencyMap extract_candidate_tokens(std::span<const InteractionRecord> records,
                                      const StopwordConfig& cfg, CountMode mode) {
  FrequencyMap freq;
  WordSet seen_in_record;
  for (const auto& r : records) {
    seen_in_record.clear();
    for (const auto& t : r.tokens) {
      if (!cfg.noun_pos_tags.contains(t.pos) || cfg.is_stopword(t.surface)) continue;
      if (mode == CountMode::Documents && !seen_in_record.insert(t.surface).second) continue;
      ++freq[t.surface];
    }
  }
  return freq;
}

std::vector<std::string> top_n_subtopics(const FrequencyMap& freq, std::size_t n) {
  if (n == 0) throw InvalidArgument("top-n must be positive");
  std::vector<std::pair<std::string_view, std::size_t>> items(freq.begin(), freq.end());
  const auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const auto keep = std::min(n, items.size());
  std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(keep), items.end(),
                    by_rank);
  std::vector<std::string> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.emplace_back(items[i].first);
  return out;
}

}  // namespace cscope
