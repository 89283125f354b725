#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "ramcov/int_rat.hpp"

namespace ramcov {

// Tiny recursive-descent evaluator for arithmetic expressions over an
// arbitrary exact coefficient type V: integers, named values from `vars`,
// + - * / ^ and parentheses. Exponents are nonnegative integer literals.
// Intended for transcribing long formulas as readable strings.
template <class V>
struct ExprEnv {
    std::function<V(const Int&)> from_int;
    std::function<V(const V&, const V&)> div; // may be exact division
    std::map<std::string, V> vars;
};

template <class V>
class ExprParser {
public:
    ExprParser(std::string_view s, const ExprEnv<V>& env) : s_(s), env_(env) {}

    V parse() {
        V v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error("expression parse: " + why + " at offset " + std::to_string(pos_) +
                          " in \"" + std::string(s_) + "\"");
    }
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n'))
            ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    V expr() {
        bool neg = false;
        skip_ws();
        while (eat('-')) neg = !neg;
        V acc = term();
        if (neg) acc = env_.from_int(Int(0)) - acc;
        for (;;) {
            if (eat('+')) {
                acc = acc + term();
            } else if (eat('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    V term() {
        V acc = factor();
        for (;;) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                if (!env_.div) fail("division not supported here");
                acc = env_.div(acc, factor());
            } else {
                return acc;
            }
        }
    }

    V factor() {
        skip_ws();
        if (eat('-')) return env_.from_int(Int(0)) - factor();
        V base = atom();
        if (eat('^')) {
            unsigned long e = uint_literal();
            V acc = env_.from_int(Int(1));
            V b = base;
            while (e) {
                if (e & 1) acc = acc * b;
                e >>= 1;
                if (e) b = b * b;
            }
            return acc;
        }
        return base;
    }

    V atom() {
        skip_ws();
        if (eat('(')) {
            V v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (pos_ < s_.size() && (std::isdigit((unsigned char)s_[pos_]) != 0)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            return env_.from_int(Int(std::string(s_.substr(start, pos_ - start))));
        }
        if (pos_ < s_.size() &&
            (std::isalpha((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto it = env_.vars.find(name);
            if (it == env_.vars.end()) fail("unknown name '" + name + "'");
            return it->second;
        }
        fail("expected a value");
    }

    unsigned long uint_literal() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_])) fail("expected exponent");
        unsigned long v = 0;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_]))
            v = v * 10 + (unsigned long)(s_[pos_++] - '0');
        return v;
    }

    std::string_view s_;
    const ExprEnv<V>& env_;
    std::size_t pos_ = 0;
};

template <class V>
V parse_expr(std::string_view s, const ExprEnv<V>& env) {
    return ExprParser<V>(s, env).parse();
}

} // namespace ramcov
