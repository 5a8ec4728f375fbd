#include "dwork/rational.hpp"

#include "dwork/error.hpp"

#include <cctype>

namespace dwork {

Rational::Rational(const Integer &num, const Integer &den) {
    if (den == 0) {
        throw PreconditionError("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero()) {
        throw PreconditionError("division by zero");
    }
    value_ /= o.value_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto valid_int = [](std::string_view t) {
        std::size_t i = 0;
        if (i < t.size() && (t[i] == '-' || t[i] == '+')) {
            ++i;
        }
        if (i == t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                return false;
            }
        }
        return true;
    };
    auto to_int = [](std::string_view t) {
        if (!t.empty() && t.front() == '+') {
            t.remove_prefix(1);
        }
        return Integer(std::string(t));
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_int(s)) {
            throw ParseError("invalid rational literal '" + s + "'");
        }
        return Rational(to_int(s));
    }
    std::string_view num(s.data(), slash);
    std::string_view den(s.data() + slash + 1, s.size() - slash - 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
        throw ParseError("invalid rational literal '" + s + "'");
    }
    Integer d = to_int(den);
    if (d == 0) {
        throw ParseError("zero denominator in '" + s + "'");
    }
    return Rational(to_int(num), d);
}

std::string Rational::str() const {
    if (value_.get_den() == 1) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational pow(const Rational &base, unsigned exponent) {
    Rational result(1);
    Rational b = base;
    while (exponent != 0) {
        if (exponent & 1U) {
            result *= b;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            b *= b;
        }
    }
    return result;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace dwork
