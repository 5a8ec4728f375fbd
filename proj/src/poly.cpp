#include "dwork/poly.hpp"

#include <cctype>
#include <set>

namespace dwork {

namespace {

bool valid_identifier(const std::string &s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

} // namespace

VarsPtr make_vars(VarList names) {
    std::set<std::string> seen;
    for (const auto &n : names) {
        if (!valid_identifier(n)) {
            throw ParseError("invalid variable name '" + n + "'");
        }
        if (!seen.insert(n).second) {
            throw ParseError("duplicate variable name '" + n + "'");
        }
    }
    return std::make_shared<const VarList>(std::move(names));
}

bool same_vars(const VarsPtr &a, const VarsPtr &b) {
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    return *a == *b;
}

std::optional<std::size_t> var_index(const VarList &vars, const std::string &name) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t total_degree(const Monomial &m) {
    std::size_t d = 0;
    for (auto e : m) {
        d += e;
    }
    return d;
}

int grlex_compare(const Monomial &a, const Monomial &b) {
    std::size_t da = total_degree(a);
    std::size_t db = total_degree(b);
    if (da != db) {
        return da < db ? -1 : 1;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            return a[i] < b[i] ? -1 : 1;
        }
    }
    return 0;
}

bool divides(const Monomial &a, const Monomial &b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

Monomial monomial_product(const Monomial &a, const Monomial &b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

Monomial monomial_quotient(const Monomial &a, const Monomial &b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
    }
    return r;
}

Monomial monomial_lcm(const Monomial &a, const Monomial &b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = std::max(a[i], b[i]);
    }
    return r;
}

std::string monomial_string(const Monomial &m, const VarList &vars) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += vars[i];
        if (m[i] > 1) {
            out += "^" + std::to_string(m[i]);
        }
    }
    return out;
}

CoeffFormat format_coefficient(const Rational &c) {
    CoeffFormat f;
    f.negative = c.sign() < 0;
    Rational a = f.negative ? -c : c;
    f.is_one = a.is_one();
    f.body = a.str();
    return f;
}

} // namespace dwork
