#pragma once

// Shared tokenizer for the scalar and element text formats.

#include <cctype>
#include <string>

#include "qshilov/error.hpp"
#include "qshilov/scalar.hpp"

namespace qshilov::detail {

enum class Tok { Number, QPower, Name, Plus, Minus, Star, Slash, Caret, Dot,
                 LParen, RParen, LBracket, RBracket, Comma, Semicolon, End };

struct Token {
    Tok kind = Tok::End;
    std::string text; // Name
    Rat value;        // Number
    Expo expo;        // QPower
    size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance();
    Expo parse_q_exponent();
    const std::string& s_;
    size_t i_ = 0;
    Token tok_;
};

inline void Lexer::advance() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    tok_ = Token{};
    tok_.pos = i_;
    if (i_ >= s_.size()) {
        tok_.kind = Tok::End;
        return;
    }
    char c = s_[i_];
    switch (c) {
        case '+': tok_.kind = Tok::Plus; ++i_; return;
        case '-': tok_.kind = Tok::Minus; ++i_; return;
        case '*': tok_.kind = Tok::Star; ++i_; return;
        case '/': tok_.kind = Tok::Slash; ++i_; return;
        case '^': tok_.kind = Tok::Caret; ++i_; return;
        case '.': tok_.kind = Tok::Dot; ++i_; return;
        case '(': tok_.kind = Tok::LParen; ++i_; return;
        case ')': tok_.kind = Tok::RParen; ++i_; return;
        case '[': tok_.kind = Tok::LBracket; ++i_; return;
        case ']': tok_.kind = Tok::RBracket; ++i_; return;
        case ',': tok_.kind = Tok::Comma; ++i_; return;
        case ';': tok_.kind = Tok::Semicolon; ++i_; return;
        default: break;
    }
    if (std::isdigit((unsigned char)c)) {
        size_t j = i_;
        while (j < s_.size() && std::isdigit((unsigned char)s_[j])) ++j;
        tok_.kind = Tok::Number;
        tok_.value = Rat(s_.substr(i_, j - i_));
        i_ = j;
        return;
    }
    if (c == 'q' && (i_ + 1 >= s_.size() ||
                     (!std::isalnum((unsigned char)s_[i_ + 1]) && s_[i_ + 1] != '_'))) {
        ++i_;
        tok_.kind = Tok::QPower;
        if (i_ < s_.size() && s_[i_] == '^') {
            ++i_;
            tok_.expo = parse_q_exponent();
        } else {
            tok_.expo = Expo{2, 0, 0};
        }
        return;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
        size_t j = i_;
        while (j < s_.size() && (std::isalnum((unsigned char)s_[j]) || s_[j] == '_')) ++j;
        tok_.kind = Tok::Name;
        tok_.text = s_.substr(i_, j - i_);
        i_ = j;
        return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
}

// Exponent forms after "q^": integer, or parenthesized n/2, [n]a, [n]b with
// an optional sign, e.g. q^2, q^-1, q^(1/2), q^(-3/2), q^a, q^(-a), q^(2b).
inline Expo Lexer::parse_q_exponent() {
    bool paren = false;
    if (i_ < s_.size() && s_[i_] == '(') {
        paren = true;
        ++i_;
    }
    int sign = 1;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
        if (s_[i_] == '-') sign = -1;
        ++i_;
    }
    long n = 1;
    bool have_digits = false;
    size_t j = i_;
    while (j < s_.size() && std::isdigit((unsigned char)s_[j])) ++j;
    if (j > i_) {
        n = std::stol(s_.substr(i_, j - i_));
        have_digits = true;
        i_ = j;
    }
    Expo e{};
    if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        if (i_ >= s_.size() || s_[i_] != '2') throw ParseError("expected /2 exponent", i_);
        ++i_;
        e.s = (int)(sign * n);
    } else if (i_ < s_.size() && (s_[i_] == 'a' || s_[i_] == 'b')) {
        (s_[i_] == 'a' ? e.u : e.v) = (int)(sign * n);
        ++i_;
    } else {
        if (!have_digits) throw ParseError("bad exponent after q^", i_);
        e.s = (int)(2 * sign * n);
    }
    if (paren) {
        if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
        ++i_;
    }
    return e;
}

} // namespace qshilov::detail
