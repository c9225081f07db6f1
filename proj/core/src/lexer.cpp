#include "lexer.hpp"

#include <cctype>

namespace cogs::detail {

namespace {

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = col;

        if (c == '"') {
            std::string value;
            advance(1);
            bool closed = false;
            while (i < text.size()) {
                char d = text[i];
                if (d == '"') {
                    advance(1);
                    closed = true;
                    break;
                }
                if (d == '\\' && i + 1 < text.size()) {
                    value += text[i + 1];
                    advance(2);
                    continue;
                }
                if (d == '\n') break;
                value += d;
                advance(1);
            }
            if (!closed) throw ParseError("unterminated string", tok.line, tok.column);
            tok.kind = Tok::string;
            tok.text = std::move(value);
            out.push_back(std::move(tok));
            continue;
        }

        bool signed_number = (c == '-' || c == '+') && i + 1 < text.size() && digit(text[i + 1]);
        if (digit(c) || signed_number) {
            std::size_t j = i + (signed_number ? 1 : 0);
            while (j < text.size() && digit(text[j])) ++j;
            if (j + 1 < text.size() && (text[j] == '.' || text[j] == '/') && digit(text[j + 1])) {
                ++j;
                while (j < text.size() && digit(text[j])) ++j;
            }
            // "5more", "10-20" and friends are bare symbols, not numbers.
            if (j < text.size() && word_char(text[j])) {
                while (j < text.size() && word_char(text[j])) ++j;
                tok.kind = Tok::word;
                tok.text = std::string(text.substr(i, j - i));
                advance(j - i);
                out.push_back(std::move(tok));
                continue;
            }
            tok.kind = Tok::number;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }

        if (word_start(c)) {
            std::size_t j = i;
            while (j < text.size() && word_char(text[j])) ++j;
            tok.kind = Tok::word;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }

        static constexpr std::string_view two_char[] = {":-", "==", "!=", "<=", ">="};
        bool matched = false;
        for (auto p : two_char) {
            if (text.substr(i, 2) == p) {
                tok.kind = Tok::punct;
                tok.text = std::string(p);
                advance(2);
                matched = true;
                break;
            }
        }
        if (!matched) {
            static constexpr std::string_view one_char = ".,:{}[]()<>=";
            if (one_char.find(c) == std::string_view::npos) {
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
            }
            tok.kind = Tok::punct;
            tok.text = std::string(1, c);
            advance(1);
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Tok::end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
    std::size_t idx = pos_ + ahead;
    return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
}

const Token& TokenStream::next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
}

bool TokenStream::accept_punct(std::string_view p) {
    if (peek().is_punct(p)) {
        next();
        return true;
    }
    return false;
}

bool TokenStream::accept_word(std::string_view w) {
    if (peek().is_word(w)) {
        next();
        return true;
    }
    return false;
}

const Token& TokenStream::expect_punct(std::string_view p) {
    if (!peek().is_punct(p)) fail(peek(), "expected '" + std::string(p) + "'");
    return next();
}

const Token& TokenStream::expect_word(std::string_view w) {
    if (!peek().is_word(w)) fail(peek(), "expected '" + std::string(w) + "'");
    return next();
}

const Token& TokenStream::expect_identifier() {
    if (peek().kind != Tok::word || !is_identifier(peek().text)) fail(peek(), "expected identifier");
    return next();
}

void TokenStream::fail(const Token& at, const std::string& message) const {
    std::string found = at.kind == Tok::end ? "end of input" : "'" + at.text + "'";
    throw ParseError(message + ", found " + found, at.line, at.column);
}

bool is_identifier(std::string_view text) {
    if (text.empty() || !word_start(text.front())) return false;
    for (char c : text) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

std::string quote_symbol(std::string_view symbol) {
    // Bare form is fine when it lexes back to exactly one token of identical text.
    bool bare = false;
    try {
        auto toks = tokenize(symbol);
        bare = toks.size() == 2 && toks[0].kind != Tok::string && toks[0].kind != Tok::punct &&
               toks[0].text == symbol;
    } catch (const ParseError&) {
        bare = false;
    }
    if (bare) return std::string(symbol);
    std::string out = "\"";
    for (char c : symbol) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace cogs::detail
