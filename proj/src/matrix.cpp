#include "mn/matrix.hpp"

#include "mn/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace mn {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<LaurentPoly> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw data_error("matrix entry count does not match dimensions");
}

std::size_t PolyMatrix::index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw data_error("matrix index out of bounds");
    return i * cols_ + j;
}

const LaurentPoly& PolyMatrix::at(std::size_t i, std::size_t j) const {
    return entries_[index(i, j)];
}

void PolyMatrix::set(std::size_t i, std::size_t j, LaurentPoly v) {
    entries_[index(i, j)] = std::move(v);
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                                 const std::vector<std::size_t>& col_idx) const {
    PolyMatrix s(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j) s.set(i, j, at(row_idx[i], col_idx[j]));
    return s;
}

namespace {

// ---------------------------------------------------------------------------
// Fraction-free elimination, generic over an integral-domain policy.  After k
// pivot steps every entry is a (k+1)x(k+1) minor of the original matrix, so
// the division by the previous pivot is exact in the domain.
// ---------------------------------------------------------------------------

struct LaurentRing {
    using Elem = LaurentPoly;
    static bool is_zero(const Elem& a) { return a.is_zero(); }
    static Elem one() { return LaurentPoly(1); }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem div(const Elem& a, const Elem& b) { return exact_div(a, b); }
};

// Dense polynomial over F_p, coefficients in [0, p).  Zero is the empty vector.
struct FpRing {
    long p;

    using Elem = std::vector<long>;

    static bool is_zero(const Elem& a) { return a.empty(); }
    static Elem one() { return {1}; }

    static void trim(Elem& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    Elem mul(const Elem& a, const Elem& b) const {
        if (a.empty() || b.empty()) return {};
        Elem r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = static_cast<long>(
                    (static_cast<std::int64_t>(r[i + j]) + static_cast<std::int64_t>(a[i]) * b[j]) % p);
        }
        trim(r);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            long x = i < a.size() ? a[i] : 0;
            long y = i < b.size() ? b[i] : 0;
            r[i] = ((x - y) % p + p) % p;
        }
        trim(r);
        return r;
    }

    long inv(long a) const {
        long t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            long q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        return (t % p + p) % p;
    }

    Elem div(const Elem& a, const Elem& b) const {
        if (b.empty()) throw data_error("division by zero in F_p[t]");
        Elem rem = a;
        Elem q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
        const long lead_inv = inv(b.back());
        while (rem.size() >= b.size() && !rem.empty()) {
            long factor = static_cast<long>(static_cast<std::int64_t>(rem.back()) * lead_inv % p);
            std::size_t off = rem.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                rem[off + j] = static_cast<long>(
                    ((rem[off + j] - static_cast<std::int64_t>(factor) * b[j]) % p + static_cast<std::int64_t>(p) * p) % p);
            q[off] = factor;
            trim(rem);
        }
        if (!rem.empty()) throw data_error("polynomial division is not exact in F_p[t]");
        trim(q);
        return q;
    }
};

template <class Ring>
int fraction_free_rank(const Ring& ring, std::vector<std::vector<typename Ring::Elem>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    typename Ring::Elem prev = ring.one();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && ring.is_zero(m[piv][col])) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                m[i][j] = ring.div(
                    ring.sub(ring.mul(m[i][j], m[row][col]), ring.mul(m[i][col], m[row][j])), prev);
            m[i][col] = typename Ring::Elem{};
        }
        prev = m[row][col];
        ++row;
    }
    return static_cast<int>(row);
}

bool is_prime_long(long p) {
    if (p < 2) return false;
    mpz_class z = static_cast<long>(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

} // namespace

LaurentPoly determinant(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw data_error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return LaurentPoly(1);

    std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);

    int sign = 1;
    LaurentPoly prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k].is_zero()) ++piv;
        if (piv == n) return LaurentPoly{};
        if (piv != k) {
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
            a[i][k] = LaurentPoly{};
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

int rank_over_field(const PolyMatrix& m, std::optional<long> p) {
    if (!p) {
        std::vector<std::vector<LaurentPoly>> a(m.rows(), std::vector<LaurentPoly>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
        return fraction_free_rank(LaurentRing{}, std::move(a));
    }

    if (!is_prime_long(*p)) throw data_error("modulus " + std::to_string(*p) + " is not prime");
    if (*p > (1L << 30)) throw data_error("prime modulus too large");
    FpRing ring{*p};

    // Reduce coefficient-wise mod p; t is a unit of F_p(t), so each row may be
    // shifted by a power of t to clear negative exponents without changing rank.
    std::vector<std::vector<FpRing::Elem>> a(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        long row_min = 0;
        bool any = false;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            for (const auto& [e, c] : m.at(i, j).terms()) {
                if (mpz_class(c % *p) == 0) continue;
                row_min = any ? std::min(row_min, e) : e;
                any = true;
            }
        }
        a[i].resize(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            FpRing::Elem v;
            for (const auto& [e, c] : m.at(i, j).terms()) {
                Int r = c % *p;
                if (r < 0) r += *p;
                if (r == 0) continue;
                std::size_t idx = static_cast<std::size_t>(e - row_min);
                if (v.size() <= idx) v.resize(idx + 1, 0);
                v[idx] = r.get_si();
            }
            FpRing::trim(v);
            a[i][j] = std::move(v);
        }
    }
    return fraction_free_rank(ring, std::move(a));
}

namespace {

mpz_class binom(std::size_t n, std::size_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Lexicographically next k-subset of {0,...,n-1}; false when exhausted.
bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] != n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_subset(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

} // namespace

std::vector<LaurentPoly> minors(const PolyMatrix& m, std::size_t k, std::size_t cap) {
    if (k > std::min(m.rows(), m.cols()))
        throw data_error("minor order exceeds matrix dimensions");
    if (k == 0) return {LaurentPoly(1)};

    mpz_class count = binom(m.rows(), k) * binom(m.cols(), k);
    if (count > static_cast<unsigned long>(cap)) {
        unsigned long long n =
            count.fits_ulong_p() ? count.get_ui() : ~0ULL;
        throw resource_error("minor enumeration too large: " + count.get_str() +
                                 " minors requested, cap is " + std::to_string(cap),
                             n);
    }

    std::vector<LaurentPoly> out;
    out.reserve(count.get_ui());
    std::vector<std::size_t> rows_idx = first_subset(k);
    do {
        std::vector<std::size_t> cols_idx = first_subset(k);
        do {
            out.push_back(determinant(m.submatrix(rows_idx, cols_idx)));
        } while (next_subset(cols_idx, m.cols()));
    } while (next_subset(rows_idx, m.rows()));
    return out;
}

} // namespace mn
