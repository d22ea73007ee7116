#include "mn/wirtinger.hpp"

#include "mn/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mn {

long WirtingerPresentation::xi_of(const GroupWord& w) const {
    long sum = 0;
    for (const auto& [g, e] : w.letters) sum += static_cast<long>(e) * xi[static_cast<std::size_t>(g)];
    return sum;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

WirtingerPresentation wirtinger_from_pd(const PDCode& pd) {
    pd.validate();
    const int c = static_cast<int>(pd.crossings.size());
    if (c == 0) return {1, {}, {1}};
    const int n_edges = 2 * c;

    // Arcs are edges glued where the over-strand passes through a crossing.
    UnionFind uf(n_edges + 1);
    for (const auto& x : pd.crossings) {
        int oin = pd.over_in(x);
        uf.unite(oin, oin % n_edges + 1);
    }
    std::map<int, int> gen_of_root; // root edge -> generator index, in edge order
    for (int e = 1; e <= n_edges; ++e) {
        int root = uf.find(e);
        if (!gen_of_root.count(root)) {
            int next = static_cast<int>(gen_of_root.size());
            gen_of_root[root] = next;
        }
    }
    auto gen = [&](int e) { return gen_of_root.at(uf.find(e)); };

    WirtingerPresentation pres;
    pres.ngens = static_cast<int>(gen_of_root.size());
    pres.xi.assign(static_cast<std::size_t>(pres.ngens), 1);
    for (const auto& x : pd.crossings) {
        int u_in = gen(x.a);
        int u_out = gen(x.c);
        int over = gen(pd.over_in(x));
        int eps = pd.sign(x);
        // x_out = o^eps x_in o^-eps, recorded as the word equal to 1
        GroupWord r;
        r.letters = {{over, eps}, {u_in, 1}, {over, -eps}, {u_out, -1}};
        pres.relators.push_back(std::move(r));
    }
    return pres;
}

PolyMatrix fox_matrix(const WirtingerPresentation& pres) {
    const std::size_t rows = pres.relators.size();
    const std::size_t cols = static_cast<std::size_t>(pres.ngens);
    PolyMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const GroupWord& r = pres.relators[i];
        std::vector<LaurentPoly> deriv(cols);
        long e = 0; // xi of the prefix read so far
        for (const auto& [g, sign] : r.letters) {
            const long xg = pres.xi[static_cast<std::size_t>(g)];
            if (sign > 0) {
                deriv[static_cast<std::size_t>(g)] += LaurentPoly::t_power(e);
                e += xg;
            } else {
                e -= xg;
                deriv[static_cast<std::size_t>(g)] -= LaurentPoly::t_power(e);
            }
        }
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, std::move(deriv[j]));
    }
    return m;
}

ModulePresentation alexander_presentation(const WirtingerPresentation& pres,
                                          std::optional<std::size_t> drop_row,
                                          std::optional<std::size_t> drop_col) {
    for (int x : pres.xi)
        if (x != 1) throw data_error("Alexander presentations need a Wirtinger-type input (xi = 1)");
    if (pres.ngens < 2) return {0, PolyMatrix(0, 0)};

    PolyMatrix fox = fox_matrix(pres);
    const std::size_t dr = drop_row.value_or(fox.rows() - 1);
    const std::size_t dc = drop_col.value_or(fox.cols() - 1);
    if (dr >= fox.rows() || dc >= fox.cols())
        throw data_error("deleted row/column index out of range");

    std::vector<std::size_t> keep_rows, keep_cols;
    for (std::size_t i = 0; i < fox.rows(); ++i)
        if (i != dr) keep_rows.push_back(i);
    for (std::size_t j = 0; j < fox.cols(); ++j)
        if (j != dc) keep_cols.push_back(j);
    PolyMatrix sub = fox.submatrix(keep_rows, keep_cols);
    return {sub.cols(), std::move(sub)};
}

LaurentPoly alexander_polynomial(const ModulePresentation& p) {
    if (p.relations.rows() != p.relations.cols())
        throw data_error("Alexander polynomial needs a square presentation");
    LaurentPoly det = determinant(p.relations);
    if (det.is_zero()) throw data_error("presentation is not L-torsion");
    LaurentPoly norm = laurent_normalize(det).second;
    if (norm.coeff(0) < 0) norm = -norm;
    return norm;
}

bool validate_knot_polynomial(const LaurentPoly& delta) {
    if (delta.is_zero()) return false;
    Int at_one = delta.eval_at_one();
    if (at_one != 1 && at_one != -1) return false;
    LaurentPoly f = laurent_normalize(delta).second;
    LaurentPoly m = laurent_normalize(delta.mirrored()).second;
    return m == f || m == -f;
}

bool is_monic(const LaurentPoly& delta) {
    if (delta.is_zero()) return false;
    Int lo = delta.lowest_coeff();
    Int hi = delta.highest_coeff();
    return (lo == 1 || lo == -1) && (hi == 1 || hi == -1);
}

} // namespace mn
