#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "triperi/errors.hpp"

namespace triperi::detail {

/// Whitespace-separated token reader with 1-based line/column tracking for
/// the FMS/FMAP text formats.
class TokenStream {
public:
    explicit TokenStream(std::string_view text) : text_(text) {}

    struct Token {
        std::string_view text;
        std::size_t line;
        std::size_t column;
    };

    bool at_end() {
        skip_whitespace();
        return pos_ >= text_.size();
    }

    Token next(const std::string& expected_what) {
        skip_whitespace();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of input, expected " + expected_what,
                             line_, column_);
        }
        const std::size_t start = pos_;
        const std::size_t tok_line = line_;
        const std::size_t tok_col = column_;
        while (pos_ < text_.size() && !is_space(text_[pos_])) {
            ++pos_;
            ++column_;
        }
        return Token{text_.substr(start, pos_ - start), tok_line, tok_col};
    }

    void expect_end() {
        if (!at_end()) {
            Token t = next("end of input");
            throw ParseError("unexpected trailing token '" + std::string(t.text) + "'",
                             t.line, t.column);
        }
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
    }

    void skip_whitespace() {
        while (pos_ < text_.size() && is_space(text_[pos_])) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

} // namespace triperi::detail
