#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chromaname {

class Vocabulary;

/// Lowercase a-z words joined by single spaces. Only obtainable through
/// normalize_name / segment_name, so the invariant always holds.
class NormalizedName {
public:
    const std::string& str() const noexcept { return text_; }
    std::vector<std::string_view> words() const;

    friend bool operator==(const NormalizedName&, const NormalizedName&) = default;
    friend auto operator<=>(const NormalizedName&, const NormalizedName&) = default;

private:
    explicit NormalizedName(std::string text) : text_(std::move(text)) {}

    friend NormalizedName normalize_name(std::string_view raw);
    friend class Vocabulary;
    friend NormalizedName segment_name(const NormalizedName& name, const Vocabulary& vocab);

    std::string text_;
};

/// Lowercases, maps every non-letter to a space, collapses runs and trims.
/// Throws Error(EmptyAfterNormalization) when no letters remain.
NormalizedName normalize_name(std::string_view raw);

/// Constituent words (length >= 3) of well-formed multi-word names.
class Vocabulary {
public:
    static constexpr std::size_t kMinWordLength = 3;

    Vocabulary() = default;

    bool contains(std::string_view word) const;
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }
    std::size_t max_word_length() const noexcept { return max_length_; }
    const std::set<std::string, std::less<>>& words() const noexcept { return words_; }

    friend Vocabulary build_vocabulary(std::span<const NormalizedName> names);

private:
    std::set<std::string, std::less<>> words_;
    std::size_t max_length_ = 0;
};

Vocabulary build_vocabulary(std::span<const NormalizedName> names);

/// Best cover of `token` by vocabulary words: fewest words, then the
/// lexicographically smallest word sequence. nullopt when no full cover exists.
std::optional<std::vector<std::string>> segment_token(std::string_view token,
                                                      const Vocabulary& vocab);

/// Splits every token that is not itself a vocabulary word and has a full
/// cover; other tokens pass through unchanged.
NormalizedName segment_name(const NormalizedName& name, const Vocabulary& vocab);

}  // namespace chromaname
