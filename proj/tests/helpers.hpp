#pragma once

#include "mn/matrix.hpp"
#include "mn/novikov.hpp"

#include <algorithm>
#include <random>
#include <vector>

// Shared test utilities: deterministic random generators, the cofactor
// determinant oracle, and unimodular shuffles over Z[t^+-].
namespace mntest {

using mn::Int;
using mn::LaurentPoly;
using mn::PolyMatrix;

inline LaurentPoly random_poly(std::mt19937& gen, int min_exp, int max_exp, int coeff_bound,
                               bool allow_zero = true) {
    std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
    LaurentPoly f;
    for (int e = min_exp; e <= max_exp; ++e) f += LaurentPoly::term(coeff(gen), e);
    if (!allow_zero && f.is_zero()) f = LaurentPoly(1);
    return f;
}

inline LaurentPoly random_nonzero_poly(std::mt19937& gen, int min_exp, int max_exp,
                                       int coeff_bound) {
    return random_poly(gen, min_exp, max_exp, coeff_bound, false);
}

// Independent determinant oracle: cofactor expansion along the first row.
inline LaurentPoly cofactor_det(const PolyMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return LaurentPoly(1);
    if (n == 1) return m.at(0, 0);
    LaurentPoly det;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) cols.push_back(k);
        LaurentPoly term = m.at(0, j) * cofactor_det(m.submatrix(rows, cols));
        det = j % 2 == 0 ? det + term : det - term;
    }
    return det;
}

inline PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            LaurentPoly sum;
            for (std::size_t k = 0; k < a.cols(); ++k) sum += a.at(i, k) * b.at(k, j);
            c.set(i, j, sum);
        }
    return c;
}

// Applies random elementary operations of determinant +-t^k: swaps, scaling a
// line by -t^e, and adding a small polynomial multiple of another line.
inline void unimodular_shuffle(PolyMatrix& m, std::mt19937& gen, int ops) {
    std::uniform_int_distribution<int> op_kind(0, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> small_coeff(-2, 2);
    std::uniform_int_distribution<int> small_exp(0, 1);
    auto rows = static_cast<int>(m.rows());
    auto cols = static_cast<int>(m.cols());
    std::uniform_int_distribution<int> row_pick(0, rows - 1);
    std::uniform_int_distribution<int> col_pick(0, cols - 1);

    for (int step = 0; step < ops; ++step) {
        bool on_rows = coin(gen) == 0;
        int n = on_rows ? rows : cols;
        if (n < 1) continue;
        auto line = [&](int which, int k) {
            return on_rows ? m.at(static_cast<std::size_t>(which), static_cast<std::size_t>(k))
                           : m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(which));
        };
        auto set_line = [&](int which, int k, LaurentPoly v) {
            if (on_rows)
                m.set(static_cast<std::size_t>(which), static_cast<std::size_t>(k), std::move(v));
            else
                m.set(static_cast<std::size_t>(k), static_cast<std::size_t>(which), std::move(v));
        };
        int len = on_rows ? cols : rows;
        int i = (on_rows ? row_pick : col_pick)(gen);
        switch (op_kind(gen)) {
            case 0: { // swap
                if (n < 2) break;
                int j = (on_rows ? row_pick : col_pick)(gen);
                if (i == j) break;
                for (int k = 0; k < len; ++k) {
                    LaurentPoly tmp = line(i, k);
                    set_line(i, k, line(j, k));
                    set_line(j, k, tmp);
                }
                break;
            }
            case 1: { // scale by -t^e or t^e
                int e = small_exp(gen);
                bool neg = coin(gen) == 0;
                for (int k = 0; k < len; ++k) {
                    LaurentPoly v = line(i, k).shifted(e);
                    set_line(i, k, neg ? -v : v);
                }
                break;
            }
            default: { // add a multiple of another line
                if (n < 2) break;
                int j = (on_rows ? row_pick : col_pick)(gen);
                if (i == j) break;
                LaurentPoly f = LaurentPoly::term(small_coeff(gen), small_exp(gen));
                if (f.is_zero()) break;
                for (int k = 0; k < len; ++k) set_line(i, k, line(i, k) + f * line(j, k));
                break;
            }
        }
    }
}

// Same as unimodular_shuffle but rejects operations that would push any entry
// outside the exponent window [-max_abs_exp, max_abs_exp].
inline void unimodular_shuffle_bounded(PolyMatrix& m, std::mt19937& gen, int ops,
                                       long max_abs_exp) {
    auto within = [&](const PolyMatrix& c) {
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) {
                const LaurentPoly& v = c.at(i, j);
                if (v.is_zero()) continue;
                if (v.min_exp() < -max_abs_exp || v.max_exp() > max_abs_exp) return false;
            }
        return true;
    };
    for (int step = 0; step < ops; ++step) {
        PolyMatrix candidate = m;
        unimodular_shuffle(candidate, gen, 1);
        if (within(candidate)) m = std::move(candidate);
    }
}

// ---------------------------------------------------------------------------
// Randomized module presentations with a known invariant-factor count.
//
// Diagonal entries are products of pairwise coprime prime elements of Z((t))
// (integer primes, and irreducible polynomials whose constant term has prime
// absolute value), times units.  The number of non-unit invariant factors of
// the direct sum is the largest number of diagonal entries sharing one prime.
// ---------------------------------------------------------------------------

struct CrtInstance {
    mn::ModulePresentation presentation;
    int expected_torsion;
};

inline CrtInstance random_crt_instance(std::mt19937& gen) {
    using mn::ModulePresentation;
    const std::vector<LaurentPoly> int_atoms = {LaurentPoly(2), LaurentPoly(3), LaurentPoly(5)};
    const std::vector<LaurentPoly> poly_atoms = {
        LaurentPoly::parse("2 - t"), LaurentPoly::parse("3 - t"), LaurentPoly::parse("2 + t"),
        LaurentPoly::parse("2*t^2 - 3*t + 2")};
    const std::size_t n_atoms = int_atoms.size() + poly_atoms.size();
    auto atom = [&](std::size_t k) -> const LaurentPoly& {
        return k < int_atoms.size() ? int_atoms[k] : poly_atoms[k - int_atoms.size()];
    };

    std::uniform_int_distribution<int> gens_dist(1, 5);
    std::uniform_int_distribution<int> natoms_dist(0, 2);
    std::uniform_int_distribution<std::size_t> atom_pick(0, n_atoms - 1);
    std::uniform_int_distribution<int> coin(0, 1);

    const int m = gens_dist(gen);
    std::vector<int> incidence(n_atoms, 0);
    PolyMatrix diag(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        LaurentPoly f(1);
        std::vector<bool> used(n_atoms, false);
        long span = 0;
        for (int k = natoms_dist(gen); k > 0; --k) {
            std::size_t a = atom_pick(gen);
            const LaurentPoly& g = atom(a);
            long g_span = g.max_exp() - g.min_exp();
            if (span + g_span > 4) continue;
            f *= g;
            span += g_span;
            used[a] = true;
        }
        for (std::size_t a = 0; a < n_atoms; ++a)
            if (used[a]) ++incidence[a];
        if (coin(gen)) f = -f;
        if (coin(gen)) f = f.shifted(1);
        if (span <= 3 && coin(gen)) f *= LaurentPoly::parse("1 + t");
        diag.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i), f);
    }
    int expected = incidence.empty() ? 0 : *std::max_element(incidence.begin(), incidence.end());

    unimodular_shuffle_bounded(diag, gen, 12, 4);
    return {ModulePresentation(static_cast<std::size_t>(m), std::move(diag)), expected};
}

} // namespace mntest
