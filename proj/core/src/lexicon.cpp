#include "chromaname/lexicon.hpp"

#include <algorithm>

#include "chromaname/error.hpp"

namespace chromaname {

namespace {

bool is_ascii_alpha(char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z'); }

char ascii_lower(char ch) { return (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch; }

struct Cover {
    bool valid = false;
    std::vector<std::string_view> words;
};

bool better(const std::vector<std::string_view>& lhs, const std::vector<std::string_view>& rhs) {
    if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
    return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

}  // namespace

std::vector<std::string_view> NormalizedName::words() const {
    std::vector<std::string_view> out;
    std::string_view rest = text_;
    while (!rest.empty()) {
        const auto space = rest.find(' ');
        out.push_back(rest.substr(0, space));
        if (space == std::string_view::npos) break;
        rest.remove_prefix(space + 1);
    }
    return out;
}

NormalizedName normalize_name(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (const char ch : raw) {
        if (is_ascii_alpha(ch)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(ascii_lower(ch));
        } else {
            pending_space = true;
        }
    }
    if (out.empty()) {
        throw Error(ErrorCode::EmptyAfterNormalization,
                    "name '" + std::string(raw) + "' has no alphabetic characters");
    }
    return NormalizedName(std::move(out));
}

bool Vocabulary::contains(std::string_view word) const { return words_.find(word) != words_.end(); }

Vocabulary build_vocabulary(std::span<const NormalizedName> names) {
    Vocabulary vocab;
    for (const auto& name : names) {
        const auto words = name.words();
        if (words.size() < 2) continue;
        for (const auto word : words) {
            if (word.size() < Vocabulary::kMinWordLength) continue;
            vocab.words_.emplace(word);
            vocab.max_length_ = std::max(vocab.max_length_, word.size());
        }
    }
    return vocab;
}

std::optional<std::vector<std::string>> segment_token(std::string_view token,
                                                      const Vocabulary& vocab) {
    const std::size_t n = token.size();
    if (n == 0 || vocab.empty()) return std::nullopt;

    // best[i] covers token[i..n); filled right to left.
    std::vector<Cover> best(n + 1);
    best[n].valid = true;
    const std::size_t longest = vocab.max_word_length();
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t limit = std::min(longest, n - i);
        for (std::size_t len = Vocabulary::kMinWordLength; len <= limit; ++len) {
            const std::string_view word = token.substr(i, len);
            if (!best[i + len].valid || !vocab.contains(word)) continue;
            std::vector<std::string_view> candidate;
            candidate.reserve(best[i + len].words.size() + 1);
            candidate.push_back(word);
            candidate.insert(candidate.end(), best[i + len].words.begin(), best[i + len].words.end());
            if (!best[i].valid || better(candidate, best[i].words)) {
                best[i].valid = true;
                best[i].words = std::move(candidate);
            }
        }
    }
    if (!best[0].valid) return std::nullopt;
    return std::vector<std::string>(best[0].words.begin(), best[0].words.end());
}

NormalizedName segment_name(const NormalizedName& name, const Vocabulary& vocab) {
    std::string out;
    out.reserve(name.str().size() + 8);
    for (const auto token : name.words()) {
        if (!out.empty()) out.push_back(' ');
        if (token.size() < Vocabulary::kMinWordLength || vocab.contains(token)) {
            out.append(token);
            continue;
        }
        const auto cover = segment_token(token, vocab);
        if (!cover) {
            out.append(token);
            continue;
        }
        for (std::size_t i = 0; i < cover->size(); ++i) {
            if (i > 0) out.push_back(' ');
            out.append((*cover)[i]);
        }
    }
    return NormalizedName(std::move(out));
}

}  // namespace chromaname
