#include "dwork/parse.hpp"

#include <cctype>
#include <string>

namespace dwork {

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarsPtr &vars, const ParamContext &params)
        : text_(text), vars_(vars), params_(params) {}

    MultiPoly parse() {
        MultiPoly p = expression();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expression() {
        MultiPoly acc = term();
        while (true) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        while (true) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                MultiPoly d = unary();
                if (!d.is_constant()) {
                    fail("division by a non-constant polynomial");
                }
                if (d.is_zero()) {
                    fail("division by zero");
                }
                acc = acc * d.constant_term().inverse();
            } else {
                return acc;
            }
        }
    }

    MultiPoly unary() {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    MultiPoly power() {
        MultiPoly base = atom();
        if (accept('^')) {
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected an integer exponent");
            }
            unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    MultiPoly atom() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expression();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            Integer v(std::string(text_.substr(start, pos_ - start)));
            return MultiPoly::constant(vars_, params_, RatFunc::from_rational(Rational(v), params_));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            if (auto i = var_index(*vars_, name)) {
                return MultiPoly::variable(vars_, params_, *i);
            }
            if (auto i = var_index(*params_.vars, name)) {
                return MultiPoly::constant(vars_, params_, RatFunc::variable(params_, *i));
            }
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const VarsPtr &vars_;
    const ParamContext &params_;
    std::size_t pos_ = 0;
};

} // namespace

MultiPoly parse_poly(std::string_view text, const VarsPtr &vars, const ParamContext &params) {
    return Parser(text, vars, params).parse();
}

RatFunc parse_ratfunc(std::string_view text, const ParamContext &params) {
    auto none = make_vars({});
    MultiPoly p = parse_poly(text, none, params);
    return p.constant_term();
}

} // namespace dwork
