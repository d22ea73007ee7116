#include "mn/expr.hpp"

#include "mn/errors.hpp"

#include <cctype>

namespace mn {

std::shared_ptr<const KnotExpr> KnotExpr::base(std::string name) {
    auto e = std::make_shared<KnotExpr>();
    e->kind = Kind::base;
    e->name = std::move(name);
    return e;
}

std::shared_ptr<const KnotExpr> KnotExpr::spin(int p, std::shared_ptr<const KnotExpr> inner) {
    if (p < 1) throw data_error("spin degree must be at least 1");
    auto e = std::make_shared<KnotExpr>();
    e->kind = Kind::spin;
    e->p = p;
    e->inner = std::move(inner);
    return e;
}

std::shared_ptr<const KnotExpr> KnotExpr::sum(std::shared_ptr<const KnotExpr> left,
                                              std::shared_ptr<const KnotExpr> right) {
    auto e = std::make_shared<KnotExpr>();
    e->kind = Kind::sum;
    e->left = std::move(left);
    e->right = std::move(right);
    return e;
}

std::string KnotExpr::str() const {
    switch (kind) {
        case Kind::base: return name;
        case Kind::spin:
            return p == 1 ? "spin(" + inner->str() + ")"
                          : "spin[" + std::to_string(p) + "](" + inner->str() + ")";
        default: return "sum(" + left->str() + ", " + right->str() + ")";
    }
}

namespace {

struct ExprParser {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
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
        throw parse_error("expression syntax error at position " + std::to_string(i) + ": " +
                          what);
    }
    int positive_int(const char* what) {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail(std::string("expected ") + what);
        long v = 0;
        try {
            v = std::stol(std::string(s.substr(start, i - start)));
        } catch (const std::out_of_range&) {
            fail(std::string(what) + " out of range");
        }
        if (v < 1 || v > 1000) fail(std::string(what) + " must be between 1 and 1000");
        return static_cast<int>(v);
    }
    std::string word() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (i == start) fail("expected a knot name or constructor");
        return std::string(s.substr(start, i - start));
    }

    std::shared_ptr<const KnotExpr> expr() {
        std::string w = word();
        if (w == "spin") {
            int p = 1;
            if (eat('[')) {
                p = positive_int("spin degree");
                if (!eat(']')) fail("expected ']'");
            }
            int iterations = 1;
            if (eat('^')) iterations = positive_int("iteration count");
            if (!eat('(')) fail("expected '(' after spin");
            auto node = expr();
            if (!eat(')')) fail("expected ')'");
            for (int k = 0; k < iterations; ++k) node = KnotExpr::spin(p, std::move(node));
            return node;
        }
        if (w == "sum") {
            if (!eat('(')) fail("expected '(' after sum");
            auto l = expr();
            if (!eat(',')) fail("expected ',' between summands");
            auto r = expr();
            if (!eat(')')) fail("expected ')'");
            return KnotExpr::sum(std::move(l), std::move(r));
        }
        return KnotExpr::base(std::move(w));
    }
};

} // namespace

std::shared_ptr<const KnotExpr> parse_expr(std::string_view text) {
    ExprParser p{text};
    auto e = p.expr();
    p.skip_ws();
    if (p.i != text.size()) p.fail("trailing characters after expression");
    return e;
}

} // namespace mn
