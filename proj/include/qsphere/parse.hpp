#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsphere/algebra.hpp"

namespace qsphere {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string &what, size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position)
    {
    }
    size_t position() const { return position_; }

  private:
    size_t position_;
};

namespace detail {

enum class TokKind { End, Plus, Minus, Star, Caret, Slash, LParen, RParen, Number, Ident };

struct Token {
    TokKind kind = TokKind::End;
    size_t pos = 0;
    std::string text;
};

inline std::vector<Token> lex_expr(const std::string &src)
{
    std::vector<Token> out;
    size_t i = 0;
    while (i < src.size()) {
        char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        Token t;
        t.pos = i;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            t.kind = TokKind::Number;
            t.text = src.substr(i, j - i);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j])))
                ++j;
            t.kind = TokKind::Ident;
            t.text = src.substr(i, j - i);
            i = j;
        } else {
            switch (ch) {
            case '+': t.kind = TokKind::Plus; break;
            case '-': t.kind = TokKind::Minus; break;
            case '*': t.kind = TokKind::Star; break;
            case '^': t.kind = TokKind::Caret; break;
            case '/': t.kind = TokKind::Slash; break;
            case '(': t.kind = TokKind::LParen; break;
            case ')': t.kind = TokKind::RParen; break;
            default: throw ParseError(std::string("unexpected character '") + ch + "'", i);
            }
            t.text = ch;
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.pos = src.size();
    out.push_back(end);
    return out;
}

/// Recursive-descent parser for the expression grammar
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*' factor) | factor)*
///   factor := atom ['^' int] | '(' expr ')' | rational
///   atom   := ('al'|'be'|'z'|'I') ['*'] | 'q' | 'qb'
/// A '*' directly after al/be/z/I is the adjoint when the token after it
/// cannot begin a factor, and the binary product otherwise; juxtaposition
/// also multiplies.
class ExprParser {
  public:
    explicit ExprParser(const std::string &src) : toks_(lex_expr(src)) {}

    FreeElement parse()
    {
        FreeElement v = parse_expr();
        if (peek().kind != TokKind::End)
            throw ParseError("trailing input '" + peek().text + "'", peek().pos);
        return v;
    }

  private:
    const Token &peek(size_t ahead = 0) const
    {
        size_t i = idx_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    Token take() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }

    static bool starts_factor(const Token &t)
    {
        return t.kind == TokKind::Ident || t.kind == TokKind::Number ||
               t.kind == TokKind::LParen;
    }

    FreeElement parse_expr()
    {
        bool negate = false;
        if (peek().kind == TokKind::Minus) {
            take();
            negate = true;
        }
        FreeElement acc = parse_term();
        if (negate)
            acc = -acc;
        while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
            bool minus = take().kind == TokKind::Minus;
            FreeElement t = parse_term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    FreeElement parse_term()
    {
        FreeElement acc = parse_factor();
        for (;;) {
            if (peek().kind == TokKind::Star) {
                take();
                acc *= parse_factor();
            } else if (starts_factor(peek())) {
                acc *= parse_factor();
            } else {
                return acc;
            }
        }
    }

    FreeElement parse_factor()
    {
        const Token &t = peek();
        if (t.kind == TokKind::LParen) {
            take();
            FreeElement inner = parse_expr();
            if (peek().kind != TokKind::RParen)
                throw ParseError("expected ')'", peek().pos);
            take();
            return inner;
        }
        if (t.kind == TokKind::Number)
            return FreeElement::identity(Scalar(parse_rational()));
        if (t.kind == TokKind::Ident)
            return parse_atom_with_power();
        throw ParseError("expected a factor, found '" +
                             (t.kind == TokKind::End ? std::string("end of input") : t.text) +
                             "'",
                         t.pos);
    }

    Rational parse_rational()
    {
        Token num = take();
        Rational value(Integer(num.text));
        if (peek().kind == TokKind::Slash) {
            take();
            if (peek().kind != TokKind::Number)
                throw ParseError("expected a denominator", peek().pos);
            Token den = take();
            Integer d(den.text);
            if (d == 0)
                throw ParseError("zero denominator", den.pos);
            value /= d;
        }
        return value;
    }

    int parse_exponent()
    {
        take(); // caret
        bool neg = false;
        if (peek().kind == TokKind::Minus) {
            take();
            neg = true;
        }
        if (peek().kind != TokKind::Number)
            throw ParseError("expected an exponent", peek().pos);
        Token num = take();
        int e = std::stoi(num.text);
        return neg ? -e : e;
    }

    FreeElement parse_atom_with_power()
    {
        Token id = take();
        bool starred = false;
        bool starrable = id.text == "al" || id.text == "be" || id.text == "z" || id.text == "I";
        if (starrable && peek().kind == TokKind::Star && !starts_factor(peek(1))) {
            take();
            starred = true;
        }
        int power = 1;
        if (peek().kind == TokKind::Caret)
            power = parse_exponent();

        if (id.text == "q" || id.text == "qb") {
            if (starred)
                throw ParseError("'*' is not an adjoint on " + id.text, id.pos);
            return FreeElement::identity(id.text == "q" ? Scalar::q(power) : Scalar::qb(power));
        }
        if (power < 0)
            throw ParseError("negative power on a generator", id.pos);

        FreeWord unit;
        if (id.text == "al")
            unit.push_back(starred ? Generator::AlphaStar : Generator::Alpha);
        else if (id.text == "be")
            unit.push_back(starred ? Generator::BetaStar : Generator::Beta);
        else if (id.text == "z")
            unit.push_back(Generator::Z);
        else if (id.text != "I")
            throw ParseError("unknown identifier '" + id.text + "'", id.pos);

        FreeWord w;
        for (int i = 0; i < power; ++i)
            w.insert(w.end(), unit.begin(), unit.end());
        return FreeElement::word(std::move(w));
    }

    std::vector<Token> toks_;
    size_t idx_ = 0;
};

} // namespace detail

/// Parses the expression grammar into an unreduced free element.
inline FreeElement parse_expr(const std::string &text)
{
    return detail::ExprParser(text).parse();
}

/// Convenience wrapper: parse and reduce to canonical form.
inline AlgebraElement parse_algebra(const std::string &text)
{
    return normalize(parse_expr(text));
}

} // namespace qsphere
