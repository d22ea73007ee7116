#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace mn {

using Int = mpz_class;

/// Sparse integer Laurent polynomial in one variable t.
///
/// Terms are kept in a map from exponent (possibly negative) to a nonzero
/// arbitrary-precision coefficient; the zero polynomial has no terms.  Values
/// are immutable in spirit: every operation returns a fresh polynomial in
/// canonical sparse form.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c) { set_term(0, Int(c)); }
    explicit LaurentPoly(const Int& c) { set_term(0, c); }

    /// c * t^e
    static LaurentPoly term(const Int& c, long e) {
        LaurentPoly f;
        f.set_term(e, c);
        return f;
    }
    static LaurentPoly t_power(long e) { return term(1, e); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<long, Int>& terms() const { return terms_; }

    long min_exp() const;  // lowest exponent; throws on zero
    long max_exp() const;  // highest exponent; throws on zero
    Int coeff(long e) const;
    Int lowest_coeff() const { return coeff(min_exp()); }
    Int highest_coeff() const { return coeff(max_exp()); }

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& g) const;
    LaurentPoly operator-(const LaurentPoly& g) const;
    LaurentPoly operator*(const LaurentPoly& g) const;
    LaurentPoly& operator+=(const LaurentPoly& g) { return *this = *this + g; }
    LaurentPoly& operator-=(const LaurentPoly& g) { return *this = *this - g; }
    LaurentPoly& operator*=(const LaurentPoly& g) { return *this = *this * g; }

    LaurentPoly scaled(const Int& c) const;
    /// f * t^k
    LaurentPoly shifted(long k) const;
    /// t -> t^-1
    LaurentPoly mirrored() const;

    Int eval_at_one() const;

    bool operator==(const LaurentPoly&) const = default;

    /// Renders terms in descending exponent order, e.g. "2*t^2 - 3*t + 2".
    std::string str() const;
    /// Parses the same grammar; accepts optional whitespace and "t^-1" style
    /// negative exponents.
    static LaurentPoly parse(std::string_view text);

private:
    void set_term(long e, const Int& c) {
        if (c != 0) terms_[e] = c;
    }
    void add_term(long e, const Int& c);

    std::map<long, Int> terms_;
};

/// Splits f = t^shift * g with g.min_exp() == 0 and nonzero constant term.
/// Throws data_error on zero input.
std::pair<long, LaurentPoly> laurent_normalize(const LaurentPoly& f);

/// Splits f = +-content * prim with content > 0, prim having coprime integer
/// coefficients and positive lowest coefficient.  Throws on zero input.
std::pair<Int, LaurentPoly> content_primitive(const LaurentPoly& f);

/// Primitive gcd over Z[t] of the normalized primitive parts of f and g,
/// returned with nonzero constant term and positive lowest coefficient.
/// Computed by the Euclidean algorithm over Q[t] followed by primitive-part
/// extraction.  Throws when both inputs are zero.
LaurentPoly primitive_gcd(const LaurentPoly& f, const LaurentPoly& g);

/// Exact quotient f / g in Z[t^+-]; throws data_error when g does not divide f.
LaurentPoly exact_div(const LaurentPoly& f, const LaurentPoly& g);

} // namespace mn
