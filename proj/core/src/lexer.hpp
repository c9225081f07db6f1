#ifndef COGS_SRC_LEXER_HPP
#define COGS_SRC_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cogs/errors.hpp"

namespace cogs::detail {

enum class Tok {
    word,    // identifier or bare symbol
    number,  // decimal or rational literal, raw text preserved
    string,  // double-quoted symbol, unescaped
    punct,   // one of  . , : :- { } [ ] ( ) == != < <= > >= =
    end,
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is(Tok k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(Tok::punct, t); }
    bool is_word(std::string_view t) const { return is(Tok::word, t); }
};

// Tokenizes the line-oriented DSLs shared by schema, rule, instance and
// binning files. `#` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view text);

// Cursor over a token vector with error helpers.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    const Token& next();
    bool at_end() const { return peek().kind == Tok::end; }

    bool accept_punct(std::string_view p);
    bool accept_word(std::string_view w);
    const Token& expect_punct(std::string_view p);
    const Token& expect_word(std::string_view w);
    const Token& expect_identifier();

    [[noreturn]] void fail(const Token& at, const std::string& message) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

bool is_identifier(std::string_view text);

// Renders a categorical symbol so that tokenize() yields it back as a single
// word, number or string token with identical text.
std::string quote_symbol(std::string_view symbol);

}  // namespace cogs::detail

#endif  // COGS_SRC_LEXER_HPP
