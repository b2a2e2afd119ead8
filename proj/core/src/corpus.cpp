#include "chromaname/corpus.hpp"

#include <array>
#include <charconv>
#include <optional>
#include <set>
#include <tuple>

#include "chromaname/io_util.hpp"

namespace chromaname {

namespace {

constexpr std::string_view kHeader = "name,hex,rgb,source";

struct ParsedRow {
    std::size_t line;
    std::string raw_name;
    NormalizedName name;
    HexCode hex;
    RgbColor rgb;
    std::string source;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

RgbColor parse_rgb_field(std::string_view text) {
    const std::string original(text);
    std::array<std::uint8_t, 3> ch{};
    std::size_t idx = 0;
    while (true) {
        const auto sep = text.find(';');
        const std::string_view part = trim(text.substr(0, sep));
        if (idx >= 3 || part.empty()) break;
        int value = -1;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size() || value < 0 || value > 255) break;
        ch[idx++] = static_cast<std::uint8_t>(value);
        if (sep == std::string_view::npos) {
            if (idx == 3) return {ch[0], ch[1], ch[2]};
            break;
        }
        text.remove_prefix(sep + 1);
    }
    throw Error(ErrorCode::MalformedRow, "rgb field '" + original + "' is not R;G;B with channels in [0,255]");
}

std::vector<std::pair<std::size_t, std::string_view>> split_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line_no, line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return lines;
}

}  // namespace

ColorEntry make_entry(std::string_view raw_name, RgbColor rgb, std::string source) {
    return ColorEntry{std::string(raw_name), normalize_name(raw_name), HexCode(rgb), rgb, std::move(source)};
}

Corpus::Corpus(std::vector<ColorEntry> entries) : entries_(std::move(entries)) {
    std::uint64_t h = fnv1a64("");
    for (const auto& e : entries_) {
        ++source_counts_[e.source];
        h = fnv1a64(e.name.str(), h);
        h = fnv1a64("\t", h);
        h = fnv1a64(e.hex.digits(), h);
        h = fnv1a64("\t", h);
        h = fnv1a64(e.source, h);
        h = fnv1a64("\n", h);
    }
    digest_ = digest_hex(h);
}

std::vector<std::string> split_csv_record(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    fields.back().push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                fields.back().push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back();
        } else {
            fields.back().push_back(ch);
        }
    }
    return fields;
}

LoadResult parse_corpus(std::string_view csv_text, bool strict) {
    if (csv_text.starts_with("\xEF\xBB\xBF")) csv_text.remove_prefix(3);
    const auto lines = split_lines(csv_text);

    std::vector<RowDefect> defects;
    auto defect = [&](std::size_t line, ErrorCode kind, std::string message) {
        if (strict) {
            throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line) + ": " + message);
        }
        defects.push_back({line, kind, std::move(message)});
    };

    std::size_t first = 0;
    while (first < lines.size() && trim(lines[first].second).empty()) ++first;
    if (first == lines.size()) throw Error(ErrorCode::EmptyCorpus, "corpus has no rows");
    if (trim(lines[first].second) != kHeader) {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(lines[first].first) + ": expected header '" + std::string(kHeader) + "'");
    }

    // Pass 1: field validation and normalization.
    std::vector<ParsedRow> rows;
    for (std::size_t i = first + 1; i < lines.size(); ++i) {
        const auto [line_no, line] = lines[i];
        if (trim(line).empty()) continue;
        const auto fields = split_csv_record(line);
        if (fields.size() != 4) {
            defect(line_no, ErrorCode::MalformedRow,
                   "expected 4 fields, found " + std::to_string(fields.size()));
            continue;
        }
        try {
            const std::string raw_name(trim(fields[0]));
            auto name = normalize_name(raw_name);
            const auto hex = HexCode::parse(trim(fields[1]));
            const auto rgb = parse_rgb_field(fields[2]);
            if (hex.rgb() != rgb) {
                defect(line_no, ErrorCode::MalformedRow,
                       "hex " + hex.prefixed() + " disagrees with rgb field '" + fields[2] + "'");
                continue;
            }
            const std::string source(trim(fields[3]));
            if (source.empty()) {
                defect(line_no, ErrorCode::MalformedRow, "empty source");
                continue;
            }
            rows.push_back({line_no, raw_name, std::move(name), hex, rgb, source});
        } catch (const Error& e) {
            defect(line_no, e.code(), e.what());
        }
    }

    // Pass 2: vocabulary from the whole file, then segmentation.
    std::vector<NormalizedName> names;
    names.reserve(rows.size());
    for (const auto& row : rows) names.push_back(row.name);
    const Vocabulary vocab = build_vocabulary(names);

    std::vector<ColorEntry> entries;
    entries.reserve(rows.size());
    std::set<std::tuple<std::string, RgbColor, std::string>> seen;
    for (auto& row : rows) {
        auto name = segment_name(row.name, vocab);
        if (!seen.emplace(name.str(), row.rgb, row.source).second) {
            defect(row.line, ErrorCode::MalformedRow,
                   "duplicate row '" + name.str() + "' " + row.hex.prefixed() + " from " + row.source);
            continue;
        }
        entries.push_back({std::move(row.raw_name), std::move(name), row.hex, row.rgb, std::move(row.source)});
    }

    if (entries.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus has no valid rows");
    return LoadResult{Corpus(std::move(entries)), std::move(defects)};
}

LoadResult load_corpus(const std::filesystem::path& path, bool strict) {
    return parse_corpus(read_file(path), strict);
}

CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats stats;
    stats.total = corpus.size();
    stats.source_counts = corpus.source_counts();
    std::set<RgbColor> colors;
    std::set<std::string_view> names;
    for (const auto& e : corpus.entries()) {
        colors.insert(e.rgb);
        names.insert(e.name.str());
    }
    stats.duplicate_rgb = corpus.size() - colors.size();
    stats.distinct_names = names.size();
    return stats;
}

std::vector<LabPoint> lab_matrix(const Corpus& corpus) {
    std::vector<LabPoint> out;
    out.reserve(corpus.size());
    for (const auto& e : corpus.entries()) out.push_back(rgb_to_lab(e.rgb));
    return out;
}

}  // namespace chromaname
