#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chromaname/color.hpp"
#include "chromaname/error.hpp"
#include "chromaname/lexicon.hpp"

namespace chromaname {

struct ColorEntry {
    std::string raw_name;
    NormalizedName name;
    HexCode hex;
    RgbColor rgb;
    std::string source;
};

/// Convenience constructor used by tests and tools: normalizes `raw_name`
/// without segmentation.
ColorEntry make_entry(std::string_view raw_name, RgbColor rgb, std::string source);

/// Ordered, immutable list of entries. Many entries may share one RGB value.
class Corpus {
public:
    explicit Corpus(std::vector<ColorEntry> entries);

    const std::vector<ColorEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, std::size_t>& source_counts() const noexcept { return source_counts_; }

    /// FNV-1a over (name, hex, source) of every entry, in order.
    const std::string& digest() const noexcept { return digest_; }

private:
    std::vector<ColorEntry> entries_;
    std::map<std::string, std::size_t> source_counts_;
    std::string digest_;
};

struct RowDefect {
    std::size_t line = 0;  // 1-based, header is line 1
    ErrorCode kind = ErrorCode::MalformedRow;
    std::string message;
};

struct LoadResult {
    Corpus corpus;
    std::vector<RowDefect> defects;
};

/// Parses corpus CSV text (header `name,hex,rgb,source`, rgb as `R;G;B`).
/// Names are normalized, a vocabulary is built from the whole file, then
/// every name is segmented. Exact duplicate rows are dropped as defects.
/// In strict mode the first defect throws Error(MalformedRow).
/// Throws Error(EmptyCorpus) when no valid rows remain.
LoadResult parse_corpus(std::string_view csv_text, bool strict);

/// parse_corpus on a file. Throws Error(FileUnreadable).
LoadResult load_corpus(const std::filesystem::path& path, bool strict);

struct CorpusStats {
    std::size_t total = 0;
    std::map<std::string, std::size_t> source_counts;
    std::size_t duplicate_rgb = 0;  // entries minus distinct RGB values
    std::size_t distinct_names = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);

/// Element i is rgb_to_lab(entries[i].rgb).
std::vector<LabPoint> lab_matrix(const Corpus& corpus);

/// Splits one CSV record into fields, honoring double-quoted fields.
std::vector<std::string> split_csv_record(std::string_view line);

}  // namespace chromaname
