#pragma once

#include "mn/laurent.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mn {

inline constexpr std::size_t kDefaultMinorCap = 20000;

/// Rectangular matrix of Laurent polynomials.  Dimensions are fixed at
/// construction; entry access is bounds-checked.
class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    PolyMatrix(std::size_t rows, std::size_t cols, std::vector<LaurentPoly> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const LaurentPoly& at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, LaurentPoly v);

    PolyMatrix submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const;

    bool operator==(const PolyMatrix&) const = default;

private:
    std::size_t index(std::size_t i, std::size_t j) const;

    std::size_t rows_;
    std::size_t cols_;
    std::vector<LaurentPoly> entries_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
/// The 0x0 determinant is 1.  Throws data_error on non-square input.
LaurentPoly determinant(const PolyMatrix& m);

/// Rank over the rational function field Q(t), or over F_p(t) when a prime p
/// is given (entries reduced coefficient-wise mod p).  Throws data_error when
/// p is not prime.
int rank_over_field(const PolyMatrix& m, std::optional<long> p = std::nullopt);

/// All k x k minors in lexicographic (row subset, then column subset) order.
/// k = 0 yields the single value 1.  Throws resource_error carrying the count
/// when binomial(rows,k)*binomial(cols,k) exceeds the cap.
std::vector<LaurentPoly> minors(const PolyMatrix& m, std::size_t k,
                                std::size_t cap = kDefaultMinorCap);

} // namespace mn
