#include "redukto/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace redukto {

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

}  // namespace

bool is_valid_token(std::string_view token) {
    if (is_identifier(token)) return true;
    if (token.size() >= 2 && token.back() == '^') return is_identifier(token.substr(0, token.size() - 1));
    if (token.size() >= 5 && token.front() == '(' && token.back() == ')') {
        auto inner = token.substr(1, token.size() - 2);
        auto comma = inner.find(',');
        if (comma == std::string_view::npos || comma == 0) return false;
        auto number = inner.substr(0, comma);
        if (!std::all_of(number.begin(), number.end(), [](unsigned char c) { return std::isdigit(c); }))
            return false;
        return is_identifier(inner.substr(comma + 1));
    }
    return false;
}

Alphabet::Alphabet() {
    tokens_ = {std::string(kLeftSentinelToken), std::string(kRightSentinelToken)};
    roles_ = {SymbolRole::left_sentinel, SymbolRole::right_sentinel};
    index_.emplace(tokens_[0], kLeftSentinel);
    index_.emplace(tokens_[1], kRightSentinel);
}

SymbolId Alphabet::add(std::string_view token, SymbolRole role) {
    if (role == SymbolRole::left_sentinel || role == SymbolRole::right_sentinel)
        throw PreconditionError("sentinels are reserved");
    if (!is_valid_token(token)) throw PreconditionError("malformed symbol token '" + std::string(token) + "'");
    if (index_.contains(std::string(token)))
        throw PreconditionError("duplicate symbol '" + std::string(token) + "'");
    if (tokens_.size() >= 0xFFFE) throw PreconditionError("alphabet too large");
    auto id = static_cast<SymbolId>(tokens_.size());
    tokens_.emplace_back(token);
    roles_.push_back(role);
    index_.emplace(std::string(token), id);
    working_.push_back(id);
    if (role == SymbolRole::input) input_.push_back(id);
    return id;
}

std::optional<SymbolId> Alphabet::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SymbolId Alphabet::at(std::string_view token) const {
    if (auto id = find(token)) return *id;
    throw PreconditionError("unknown symbol '" + std::string(token) + "'");
}

Word Alphabet::parse_word(std::string_view text) const {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(text)};
    for (std::string t; in >> t;) tokens.push_back(t);
    return parse_word(tokens);
}

Word Alphabet::parse_word(std::span<const std::string> tokens) const {
    Word w;
    w.reserve(tokens.size());
    for (const auto& t : tokens) {
        auto id = at(t);
        if (!is_working(id)) throw PreconditionError("sentinel inside a word");
        w.push_back(id);
    }
    return w;
}

std::string Alphabet::render(std::span<const SymbolId> word, std::string_view sep) const {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += sep;
        out += token(word[i]);
    }
    return out;
}

WindowContent::WindowContent(std::span<const SymbolId> symbols) {
    if (symbols.size() > kMaxWindow) throw PreconditionError("window content longer than the supported maximum");
    std::copy(symbols.begin(), symbols.end(), symbols_.begin());
    size_ = symbols.size();
}

bool WindowContent::is_possible_content(std::size_t k) const {
    if (size_ > k) return false;
    for (std::size_t i = 0; i < size_; ++i) {
        if (symbols_[i] == kLeftSentinel && i != 0) return false;
        if (symbols_[i] == kRightSentinel && i + 1 != size_) return false;
    }
    bool left = starts_with_left_sentinel();
    bool right = ends_with_right_sentinel();
    if (left && right) return size_ >= 2;       // ¢ Γ^{<=k-2} $
    if (left) return size_ == k;                 // ¢ Γ^{k-1}
    if (right) return size_ >= 1;                // Γ^{<=k-1} $
    return size_ == k;                           // Γ^k
}

std::size_t WindowHash::operator()(const WindowContent& w) const noexcept {
    std::size_t h = w.size();
    for (auto s : w) h = h * 1000003u + s;
    return h;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (auto s : w) h = h * 1000003u + s;
    return h;
}

bool length_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

void for_each_word(std::span<const SymbolId> letters, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit) {
    Word w;
    if (!visit(w)) return;
    if (letters.empty()) return;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::size_t> digits(len, 0);
        w.assign(len, letters[0]);
        while (true) {
            if (!visit(w)) return;
            std::size_t i = len;
            while (i > 0) {
                --i;
                if (++digits[i] < letters.size()) {
                    w[i] = letters[digits[i]];
                    break;
                }
                digits[i] = 0;
                w[i] = letters[0];
                if (i == 0) goto next_length;
            }
        }
    next_length:;
    }
}

}  // namespace redukto
