#include "mn/laurent.hpp"

#include "mn/errors.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace mn {

long LaurentPoly::min_exp() const {
    if (terms_.empty()) throw data_error("zero polynomial has no exponent range");
    return terms_.begin()->first;
}

long LaurentPoly::max_exp() const {
    if (terms_.empty()) throw data_error("zero polynomial has no exponent range");
    return terms_.rbegin()->first;
}

Int LaurentPoly::coeff(long e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
}

void LaurentPoly::add_term(long e, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& g) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : g.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& g) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : g.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& g) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : g.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Int& c) const {
    LaurentPoly r;
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

LaurentPoly LaurentPoly::shifted(long k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
}

LaurentPoly LaurentPoly::mirrored() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
}

Int LaurentPoly::eval_at_one() const {
    Int s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // descending exponent order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const long e = it->first;
        Int c = it->second;
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
            first = false;
        } else {
            if (c < 0) {
                out << " - ";
                c = -c;
            } else {
                out << " + ";
            }
        }
        if (e == 0) {
            out << c.get_str();
        } else {
            if (c != 1) out << c.get_str() << "*";
            out << "t";
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

namespace {

struct PolyLexer {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw parse_error("polynomial syntax error at position " + std::to_string(i) + ": " + what);
    }
    Int integer() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected an integer");
        Int v(std::string(s.substr(start, i - start)), 10);
        return neg ? Int(-v) : v;
    }
    long exponent() {
        Int v = integer();
        if (!v.fits_slong_p()) fail("exponent out of range");
        return v.get_si();
    }
};

} // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
    PolyLexer lx{text};
    LaurentPoly result;
    bool first = true;
    while (!lx.done()) {
        int sign = 1;
        if (lx.eat('+')) {
            if (first) lx.fail("unexpected leading '+'");
        } else if (lx.eat('-')) {
            sign = -1;
        } else if (!first) {
            lx.fail("expected '+' or '-' between terms");
        }
        if (lx.done()) lx.fail("dangling sign");

        Int c = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            c = lx.integer();
            have_coeff = true;
        }
        long e = 0;
        bool have_t = false;
        if (have_coeff) {
            if (lx.eat('*')) {
                if (!lx.eat('t')) lx.fail("expected 't' after '*'");
                have_t = true;
            }
        } else if (lx.eat('t')) {
            have_t = true;
        } else {
            lx.fail("expected a coefficient or 't'");
        }
        if (have_t) {
            e = lx.eat('^') ? lx.exponent() : 1;
        }
        result.add_term(e, sign > 0 ? c : Int(-c));
        first = false;
    }
    if (first) throw parse_error("empty polynomial text");
    return result;
}

std::pair<long, LaurentPoly> laurent_normalize(const LaurentPoly& f) {
    if (f.is_zero()) throw data_error("zero has no normalization");
    const long shift = f.min_exp();
    return {shift, f.shifted(-shift)};
}

std::pair<Int, LaurentPoly> content_primitive(const LaurentPoly& f) {
    if (f.is_zero()) throw data_error("zero polynomial has no content decomposition");
    Int content = 0;
    for (const auto& [e, c] : f.terms()) {
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        if (content == 1) break;
    }
    LaurentPoly prim;
    for (const auto& [e, c] : f.terms()) prim += LaurentPoly::term(c / content, e);
    if (prim.lowest_coeff() < 0) prim = -prim;
    return {content, prim};
}

LaurentPoly exact_div(const LaurentPoly& f, const LaurentPoly& g) {
    if (g.is_zero()) throw data_error("exact division by zero polynomial");
    if (f.is_zero()) return LaurentPoly{};
    const long qmax = f.max_exp() - g.max_exp();
    LaurentPoly q;
    LaurentPoly r = f;
    while (!r.is_zero()) {
        const long e = r.min_exp() - g.min_exp();
        if (e > qmax) throw data_error("polynomial division is not exact");
        Int c = r.lowest_coeff();
        Int d = g.lowest_coeff();
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            throw data_error("polynomial division is not exact");
        LaurentPoly qt = LaurentPoly::term(c / d, e);
        q += qt;
        r -= qt * g;
    }
    return q;
}

namespace {

// Dense rational polynomial helpers for the Euclidean gcd over Q[t].
using QPoly = std::vector<mpq_class>;

void q_trim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b, classic long division over Q[t]
QPoly q_mod(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class factor = a.back() / b.back();
        const std::size_t off = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[off + j] -= factor * b[j];
        q_trim(a);
    }
    return a;
}

QPoly to_qpoly(const LaurentPoly& prim) {
    QPoly v(static_cast<std::size_t>(prim.max_exp()) + 1, mpq_class(0));
    for (const auto& [e, c] : prim.terms()) v[static_cast<std::size_t>(e)] = mpq_class(c);
    return v;
}

LaurentPoly from_qpoly_primitive(const QPoly& v) {
    Int denom_lcm = 1;
    for (const auto& q : v) {
        Int d = q.get_den();
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), d.get_mpz_t());
    }
    LaurentPoly z;
    for (std::size_t e = 0; e < v.size(); ++e) {
        mpq_class scaled = v[e] * mpq_class(denom_lcm);
        z += LaurentPoly::term(scaled.get_num(), static_cast<long>(e));
    }
    return content_primitive(z).second;
}

LaurentPoly normalized_primitive(const LaurentPoly& f) {
    return content_primitive(laurent_normalize(f).second).second;
}

} // namespace

LaurentPoly primitive_gcd(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.is_zero() && g.is_zero()) throw data_error("gcd of two zero polynomials");
    if (f.is_zero()) return normalized_primitive(g);
    if (g.is_zero()) return normalized_primitive(f);
    QPoly a = to_qpoly(normalized_primitive(f));
    QPoly b = to_qpoly(normalized_primitive(g));
    while (!b.empty()) {
        QPoly r = q_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    LaurentPoly result = from_qpoly_primitive(a);
    // The gcd of polynomials with nonzero constant terms again has a nonzero
    // constant term; renormalize all the same so the contract is explicit.
    result = content_primitive(laurent_normalize(result).second).second;
    return result;
}

} // namespace mn
