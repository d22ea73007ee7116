#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace mn {

/// Expression over base knots with spinning and connected-sum constructors.
/// Trees are immutable and shared.
struct KnotExpr {
    enum class Kind { base, spin, sum };

    Kind kind;
    std::string name;                       // base
    int p = 0;                              // spin degree
    std::shared_ptr<const KnotExpr> inner;  // spin
    std::shared_ptr<const KnotExpr> left;   // sum
    std::shared_ptr<const KnotExpr> right;  // sum

    static std::shared_ptr<const KnotExpr> base(std::string name);
    static std::shared_ptr<const KnotExpr> spin(int p, std::shared_ptr<const KnotExpr> inner);
    static std::shared_ptr<const KnotExpr> sum(std::shared_ptr<const KnotExpr> left,
                                               std::shared_ptr<const KnotExpr> right);

    /// Canonical rendering: name, spin(E), spin[p](E), sum(E, E).
    std::string str() const;
};

/// Grammar: name | spin(E) | spin[p](E) | spin[p]^m(E) | sum(E, E), with
/// spin(E) = spin[1](E) and ^m expanding to m nested spins.  Whitespace is
/// insignificant; p < 1 or m < 1 are rejected.
std::shared_ptr<const KnotExpr> parse_expr(std::string_view text);

} // namespace mn
