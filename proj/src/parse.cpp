#include "mahler/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "mahler/errors.hpp"

namespace mahler {
namespace {

enum class Tok { number, imaginary, variable, plus, minus, star, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::size_t pos;
    double number = 0.0;      // number / imaginary
    std::size_t var = 0;      // 1-based variable index
    bool alias = false;       // written as x/y/z
    std::string_view text;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_digit(c) || c == '.') {
            while (i < s.size() && is_digit(s[i])) ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && is_digit(s[i])) ++i;
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
                if (j < s.size() && is_digit(s[j])) {
                    i = j;
                    while (i < s.size() && is_digit(s[i])) ++i;
                }
            }
            const std::string_view text = s.substr(start, i - start);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
                throw ParseError("invalid number '" + std::string(text) + "'", start);
            Tok kind = Tok::number;
            if (i < s.size() && s[i] == 'i') {
                kind = Tok::imaginary;
                ++i;
            }
            if (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '.'))
                throw ParseError("implicit multiplication is not allowed", i);
            out.push_back({kind, start, value, 0, false, s.substr(start, i - start)});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            const std::string_view word = s.substr(start, i - start);
            Token t{Tok::variable, start, 0.0, 0, false, word};
            if (word == "x" || word == "y" || word == "z") {
                t.var = word == "x" ? 1 : word == "y" ? 2 : 3;
                t.alias = true;
            } else if (word.size() >= 2 && word[0] == 'x' && word[1] != '0' &&
                       std::all_of(word.begin() + 1, word.end(), is_digit)) {
                const auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), t.var);
                if (ec != std::errc() || t.var > 4096)
                    throw ParseError("variable index out of range '" + std::string(word) + "'", start);
            } else {
                throw ParseError("unknown identifier '" + std::string(word) + "'", start);
            }
            out.push_back(t);
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::plus; break;
            case '-': kind = Tok::minus; break;
            case '*': kind = Tok::star; break;
            case '^': kind = Tok::caret; break;
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        out.push_back({kind, start, 0.0, 0, false, s.substr(start, 1)});
        ++i;
    }
    out.push_back({Tok::end, s.size(), 0.0, 0, false, {}});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::size_t nvars) : toks_(std::move(tokens)), nvars_(nvars) {}

    Polynomial parse() {
        Polynomial p = expr();
        if (peek().kind != Tok::end) fail("unexpected token '" + std::string(peek().text) + "'");
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().pos); }

    Polynomial expr() {
        Polynomial acc(nvars_);
        bool negate = false;
        if (accept(Tok::minus))
            negate = true;
        else
            accept(Tok::plus);
        Polynomial first = term();
        acc = negate ? -first : first;
        for (;;) {
            if (accept(Tok::plus))
                acc += term();
            else if (accept(Tok::minus))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (accept(Tok::star)) acc *= unary();
        return acc;
    }

    Polynomial unary() {
        if (accept(Tok::minus)) return -unary();
        if (accept(Tok::plus)) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (!accept(Tok::caret)) return base;
        const Token& t = peek();
        if (t.kind != Tok::number || t.text.find_first_of(".eE") != std::string_view::npos)
            fail("exponent must be a non-negative integer");
        unsigned long long e = 0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e);
        if (ec != std::errc() || e > 1u << 20) fail("exponent out of range");
        next();
        Polynomial result = Polynomial::constant(nvars_, 1.0);
        while (e > 0) {
            if (e & 1u) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    Polynomial primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::number:
                next();
                return Polynomial::constant(nvars_, Complex(t.number, 0.0));
            case Tok::imaginary:
                next();
                return Polynomial::constant(nvars_, Complex(0.0, t.number));
            case Tok::variable:
                next();
                return Polynomial::variable(nvars_, t.var - 1);
            case Tok::lparen: {
                next();
                Polynomial inner = expr();
                if (!accept(Tok::rparen)) fail("expected ')'");
                return inner;
            }
            case Tok::end:
                fail("unexpected end of expression");
            default:
                fail("unexpected token '" + std::string(t.text) + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string variable_name(std::size_t index, std::size_t nvars) {
    if (nvars <= 3) return std::string(1, "xyz"[index]);
    return "x" + std::to_string(index + 1);
}

}  // namespace

Polynomial parse_poly(std::string_view expr, std::size_t min_nvars) {
    std::vector<Token> tokens = tokenize(expr);
    std::size_t highest = 0;
    std::optional<std::size_t> alias_pos;
    for (const Token& t : tokens) {
        if (t.kind != Tok::variable) continue;
        highest = std::max(highest, t.var);
        if (t.alias && !alias_pos) alias_pos = t.pos;
    }
    const std::size_t nvars = std::max({highest, min_nvars, std::size_t{1}});
    if (alias_pos && highest > 3)
        throw ParseError("aliases x, y, z are only valid with at most 3 variables", *alias_pos);
    return Parser(std::move(tokens), nvars).parse();
}

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [exp, c] = *it;
        const bool is_const = std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
        std::string coeff;
        bool negative = false;
        if (c.imag() == 0.0) {
            negative = std::signbit(c.real());
            const double mag = std::abs(c.real());
            if (!(mag == 1.0 && !is_const)) coeff = shortest(mag);
        } else {
            coeff = "(" + shortest(c.real()) + (std::signbit(c.imag()) ? "-" : "+") +
                    shortest(std::abs(c.imag())) + "i)";
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;

        std::string mono;
        for (std::size_t j = 0; j < exp.size(); ++j) {
            if (exp[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += variable_name(j, p.nvars());
            if (exp[j] > 1) mono += "^" + std::to_string(exp[j]);
        }
        if (!coeff.empty() && !mono.empty())
            out += coeff + "*" + mono;
        else
            out += coeff + mono;
    }
    return out;
}

}  // namespace mahler
