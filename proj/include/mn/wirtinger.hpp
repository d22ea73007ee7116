#pragma once

#include "mn/knotio.hpp"
#include "mn/novikov.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mn {

/// Word in a finitely generated group: sequence of (generator index, +-1).
struct GroupWord {
    std::vector<std::pair<int, int>> letters;
    bool operator==(const GroupWord&) const = default;
};

/// Wirtinger-type presentation of a knot group.  xi records the image of each
/// generator under the canonical class (all 1 for genuine Wirtinger
/// presentations, where every generator is a meridian).
struct WirtingerPresentation {
    int ngens = 0;
    std::vector<GroupWord> relators;
    std::vector<int> xi;

    /// Exponent sum of a word under xi.
    long xi_of(const GroupWord& w) const;
};

/// One generator per arc, one relator per crossing: the outgoing under-arc is
/// the over-arc conjugate of the incoming under-arc, with the conjugation
/// direction given by the crossing sign.  A 0-crossing code yields the
/// 1-generator, relator-free unknot presentation.
WirtingerPresentation wirtinger_from_pd(const PDCode& pd);

/// Matrix of abelianized Fox derivatives, entry (i, j) = d(relator_i)/d(x_j)
/// evaluated under x_g -> t^{xi(g)}.  Rows satisfy
/// sum_j entry(i,j) * (t^{xi(j)} - 1) = t^{xi(r_i)} - 1.
PolyMatrix fox_matrix(const WirtingerPresentation& pres);

/// Alexander module presentation: the Fox matrix with one relator row and one
/// generator column deleted (defaults: the last of each).  Presentations with
/// fewer than two generators give the empty presentation (unknot, Delta = 1).
ModulePresentation alexander_presentation(const WirtingerPresentation& pres,
                                          std::optional<std::size_t> drop_row = std::nullopt,
                                          std::optional<std::size_t> drop_col = std::nullopt);

/// Order of the Alexander module: the determinant of the square presentation,
/// normalized by +-t^k so the lowest exponent is 0 and the constant term is
/// positive.  Throws data_error when the determinant vanishes.
LaurentPoly alexander_polynomial(const ModulePresentation& p);

/// Classical constraints: Delta(1) = +-1 and Delta(t) = +-t^k Delta(1/t).
bool validate_knot_polynomial(const LaurentPoly& delta);

/// Both extreme coefficients +-1, i.e. Delta is a unit of Z((t)) in both
/// completion directions.
bool is_monic(const LaurentPoly& delta);

} // namespace mn
