#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cscope/ingest.hpp"

namespace cscope {

using WordSet = std::unordered_set<std::string>;
using FrequencyMap = std::unordered_map<std::string, std::size_t>;

/// Phase-1 token filter. Matching is by exact surface.
struct StopwordConfig {
  WordSet standard;       // ordinary stopwords
  WordSet custom;         // topic-itself, news, announcement, region/name/time/person, meaningless
  WordSet noun_pos_tags{"NOUN"};

  bool is_stopword(const std::string& surface) const {
    return standard.contains(surface) || custom.contains(surface);
  }
  /// Throws InvalidArgument on empty entries.
  void validate() const;
};

enum class CountMode { Occurrences, Documents };

CountMode parse_count_mode(std::string_view name);

/// Reads one surface per line; '#' starts a comment, blank lines are skipped.
WordSet read_word_list(std::istream& in);
WordSet load_word_list(const std::filesystem::path& path);

/// Token frequencies of nouns that are not stopwords. Occurrences counts every
/// token, Documents counts each surface at most once per record.
FrequencyMap extract_candidate_tokens(std::span<const InteractionRecord> records,
                                      const StopwordConfig& cfg,
                                      CountMode mode = CountMode::Occurrences);

/// Highest-count tokens, ties broken by byte-wise ascending surface.
std::vector<std::string> top_n_subtopics(const FrequencyMap& freq, std::size_t n = 50);

}  // namespace cscope
