#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace redukto {

using SymbolId = std::uint16_t;

// Sentinels are reserved ids shared by every alphabet.
inline constexpr SymbolId kLeftSentinel = 0;
inline constexpr SymbolId kRightSentinel = 1;
inline constexpr std::string_view kLeftSentinelToken = "^";
inline constexpr std::string_view kRightSentinelToken = "$";

// Largest supported read/write window.
inline constexpr std::size_t kMaxWindow = 8;

enum class SymbolRole { input, auxiliary, left_sentinel, right_sentinel };

/// Raised when a caller violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a search exceeds its configured limits.
class ResourceExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// True for the token shapes accepted in files: identifiers, "(<n>,<id>)"
/// tuple symbols, and "<id>^" hatted symbols.
bool is_valid_token(std::string_view token);

using Word = std::vector<SymbolId>;

/// Symbol table holding Σ ⊆ Γ plus the two sentinels. Ids are assigned in
/// declaration order, which also defines the alphabet order used for
/// length-lexicographic enumeration.
class Alphabet {
public:
    Alphabet();

    SymbolId add(std::string_view token, SymbolRole role);

    [[nodiscard]] std::optional<SymbolId> find(std::string_view token) const;
    [[nodiscard]] SymbolId at(std::string_view token) const;
    [[nodiscard]] const std::string& token(SymbolId id) const { return tokens_.at(id); }
    [[nodiscard]] SymbolRole role(SymbolId id) const { return roles_.at(id); }
    [[nodiscard]] bool is_input(SymbolId id) const { return roles_.at(id) == SymbolRole::input; }
    [[nodiscard]] bool is_working(SymbolId id) const { return id > kRightSentinel && id < tokens_.size(); }
    [[nodiscard]] std::size_t size() const { return tokens_.size(); }

    /// Σ in id order.
    [[nodiscard]] const std::vector<SymbolId>& input_symbols() const { return input_; }
    /// Γ (input and auxiliary) in id order.
    [[nodiscard]] const std::vector<SymbolId>& working_symbols() const { return working_; }
    [[nodiscard]] bool has_auxiliary() const { return working_.size() != input_.size(); }

    [[nodiscard]] Word parse_word(std::string_view text) const;
    [[nodiscard]] Word parse_word(std::span<const std::string> tokens) const;
    [[nodiscard]] std::string render(std::span<const SymbolId> word, std::string_view sep = " ") const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.tokens_ == b.tokens_ && a.roles_ == b.roles_;
    }

private:
    std::vector<std::string> tokens_;
    std::vector<SymbolRole> roles_;
    std::vector<SymbolId> input_;
    std::vector<SymbolId> working_;
    std::unordered_map<std::string, SymbolId> index_;
};

/// Contents of the read/write window: at most kMaxWindow symbols stored
/// inline, so windows are cheap to hash and compare.
class WindowContent {
public:
    WindowContent() = default;
    explicit WindowContent(std::span<const SymbolId> symbols);
    WindowContent(std::initializer_list<SymbolId> symbols)
        : WindowContent(std::span<const SymbolId>(symbols.begin(), symbols.size())) {}

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] bool empty() const { return size_ == 0; }
    [[nodiscard]] SymbolId operator[](std::size_t i) const { return symbols_[i]; }
    [[nodiscard]] std::span<const SymbolId> symbols() const { return {symbols_.data(), size_}; }
    [[nodiscard]] const SymbolId* begin() const { return symbols_.data(); }
    [[nodiscard]] const SymbolId* end() const { return symbols_.data() + size_; }
    [[nodiscard]] bool starts_with_left_sentinel() const { return size_ > 0 && symbols_[0] == kLeftSentinel; }
    [[nodiscard]] bool ends_with_right_sentinel() const { return size_ > 0 && symbols_[size_ - 1] == kRightSentinel; }
    [[nodiscard]] Word to_word() const { return Word(begin(), end()); }

    /// Membership in PC^{<=k}.
    [[nodiscard]] bool is_possible_content(std::size_t k) const;

    friend bool operator==(const WindowContent& a, const WindowContent& b) {
        return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
    }
    friend auto operator<=>(const WindowContent& a, const WindowContent& b) {
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    std::array<SymbolId, kMaxWindow> symbols_{};
    std::size_t size_ = 0;
};

struct WindowHash {
    std::size_t operator()(const WindowContent& w) const noexcept;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

/// Length-lexicographic order on words (shorter first, then by symbol id).
bool length_lex_less(const Word& a, const Word& b);

/// Calls `visit` for every word over `letters` of length <= max_len, in
/// length-lexicographic order. Stops early when `visit` returns false.
void for_each_word(std::span<const SymbolId> letters, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit);

}  // namespace redukto
