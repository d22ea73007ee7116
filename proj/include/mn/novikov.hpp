#pragma once

#include "mn/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mn {

/// Finitely generated module over L = Z[t^+-], presented as the cokernel of a
/// relation matrix whose columns index the generators (rows are relators).
struct ModulePresentation {
    std::size_t generators;
    PolyMatrix relations;

    ModulePresentation(std::size_t generators, PolyMatrix relations);
};

enum class GcdWitness {
    unit_element,            // some input is itself a unit of Z((t))
    combination_certificate, // no single unit input; unit ideal established jointly
    integer_obstruction,     // a prime p divides every input
    polynomial_obstruction,  // a non-unit polynomial divides every input (up to t-powers)
};

/// Outcome of deciding whether a finite set of Laurent polynomials generates
/// the unit ideal of the Novikov ring Z((t)).
struct UnitGcdVerdict {
    bool is_unit;
    GcdWitness kind;
    std::size_t unit_index = 0; // valid for unit_element
    Int prime = 0;              // valid for integer_obstruction
    LaurentPoly obstruction;    // valid for polynomial_obstruction (zero when all inputs vanish)
};

/// Novikov Betti/torsion numbers (b^_k, q^_k) per homological degree.
struct NovikovProfile {
    struct Entry {
        long betti = 0;
        long torsion = 0;
        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries; // degree 0 .. top_degree

    NovikovProfile() = default;
    explicit NovikovProfile(std::vector<Entry> e);

    int top_degree() const { return static_cast<int>(entries.size()) - 1; }
    bool operator==(const NovikovProfile&) const = default;
};

/// Unit test in Z((t)): true iff f is nonzero and its lowest coefficient is +-1.
/// (Z((t)) completes toward positive exponents; series have finite negative part.)
bool is_unit(const LaurentPoly& f);

/// Decides whether the ideal of Z((t)) generated by the inputs is the whole
/// ring.  Zero inputs are skipped; an empty input sequence is an error.
///
/// Procedure: t-normalize the nonzero inputs s_i, take the iterated primitive
/// gcd g over Z[t], and let c_i be the integer contents of the exact quotients
/// s_i / g.  The ideal is the unit ideal iff |g(0)| = 1 and gcd(c_1,...,c_m) = 1.
///
/// Completeness: the maximal ideals of Z((t)) are (p) for integer primes p and
/// (pi) for irreducible series pi with |pi(0)| >= 2.  Every integer prime stays
/// prime in Z((t)) because Z((t))/(p) = F_p((t)) is a field, so no non-integer
/// prime divides a nonzero integer.  If the primitive parts are coprime over
/// Q[t], a nonzero integer lies in the Z[t]-ideal they generate, so a common
/// prime divisor of the inputs must be an integer prime, which is exactly the
/// content check; otherwise g itself is a common non-unit divisor.
UnitGcdVerdict unit_gcd(std::span<const LaurentPoly> values);

struct TorsionCount {
    int free_rank;
    int torsion; // number of non-unit invariant factors over Z((t))
};

/// Free rank and torsion-summand count of coker(relations) (x) Z((t)).
///
/// Invariant factors are never materialized (they may be genuine series); only
/// their count is needed, and it is r - k* where r is the rank of the relation
/// matrix over Q(t) and k* is the largest k <= r whose k x k minors generate
/// the unit ideal (k = 0 counts as unit).  Divisibility of successive minor
/// gcds makes the set of unit levels downward closed, so the search walks down
/// from r.
TorsionCount torsion_count(const ModulePresentation& p, std::size_t minor_cap = kDefaultMinorCap);

/// Independent lower bound for the torsion count: for each prime p the residue
/// field of Z((t)) at (p) is F_p((t)), so the corank of the relation matrix
/// over F_p(t) minus the free rank never exceeds the torsion count.
int fp_lower_bound(const ModulePresentation& p, std::span<const long> primes);

/// Novikov profile of a classical knot complement from its Alexander module:
/// all b^_k = 0, q^_1 = torsion count, q^_0 = q^_2 = q^_3 = 0.
/// Rejects modules that cannot be knot Alexander modules (positive free rank,
/// or a square presentation whose determinant is not +-1 at t = 1).
NovikovProfile knot_profile(const ModulePresentation& alex, int dimension,
                            std::size_t minor_cap = kDefaultMinorCap);

} // namespace mn
