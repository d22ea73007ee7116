#include "mn/novikov.hpp"

#include "mn/errors.hpp"

#include <algorithm>

namespace mn {

ModulePresentation::ModulePresentation(std::size_t generators, PolyMatrix relations)
    : generators(generators), relations(std::move(relations)) {
    if (this->relations.cols() != generators)
        throw data_error("relation matrix column count must equal generator count");
}

NovikovProfile::NovikovProfile(std::vector<Entry> e) : entries(std::move(e)) {
    for (const auto& [b, q] : entries)
        if (b < 0 || q < 0) throw data_error("Novikov profile entries must be nonnegative");
}

bool is_unit(const LaurentPoly& f) {
    if (f.is_zero()) return false;
    Int low = f.lowest_coeff();
    return low == 1 || low == -1;
}

namespace {

Int smallest_prime_factor(Int n) {
    if (n < 0) n = -n;
    if (mpz_divisible_ui_p(n.get_mpz_t(), 2)) return 2;
    Int d = 3;
    while (d * d <= n) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return d;
        d += 2;
    }
    return n;
}

} // namespace

UnitGcdVerdict unit_gcd(std::span<const LaurentPoly> values) {
    if (values.empty()) throw data_error("unit_gcd of an empty sequence");

    std::vector<std::size_t> live;
    std::vector<LaurentPoly> normalized;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].is_zero()) continue;
        live.push_back(i);
        normalized.push_back(laurent_normalize(values[i]).second);
    }
    if (live.empty())
        return {false, GcdWitness::polynomial_obstruction, 0, 0, LaurentPoly{}};

    LaurentPoly g = content_primitive(normalized[0]).second;
    for (std::size_t i = 1; i < normalized.size() && !(g == LaurentPoly(1)); ++i)
        g = primitive_gcd(g, normalized[i]);

    Int g0 = g.coeff(0);
    if (g0 != 1 && g0 != -1)
        return {false, GcdWitness::polynomial_obstruction, 0, 0, g};

    Int content_gcd = 0;
    for (const auto& s : normalized) {
        Int c = content_primitive(exact_div(s, g)).first;
        mpz_gcd(content_gcd.get_mpz_t(), content_gcd.get_mpz_t(), c.get_mpz_t());
        if (content_gcd == 1) break;
    }
    if (content_gcd != 1) {
        Int p = smallest_prime_factor(content_gcd);
        return {false, GcdWitness::integer_obstruction, 0, p, LaurentPoly{}};
    }

    for (std::size_t i = 0; i < normalized.size(); ++i)
        if (is_unit(normalized[i]))
            return {true, GcdWitness::unit_element, live[i], 0, LaurentPoly{}};
    return {true, GcdWitness::combination_certificate, 0, 0, LaurentPoly{}};
}

TorsionCount torsion_count(const ModulePresentation& p, std::size_t minor_cap) {
    const int n = static_cast<int>(p.generators);
    const int r = rank_over_field(p.relations);
    int k_star = 0;
    for (int k = r; k >= 1; --k) {
        auto mm = minors(p.relations, static_cast<std::size_t>(k), minor_cap);
        if (unit_gcd(mm).is_unit) {
            k_star = k;
            break;
        }
    }
    return {n - r, r - k_star};
}

int fp_lower_bound(const ModulePresentation& p, std::span<const long> primes) {
    if (primes.empty()) throw data_error("fp_lower_bound needs at least one prime");
    const int n = static_cast<int>(p.generators);
    const int free_rank = n - rank_over_field(p.relations);
    int best = 0;
    for (long q : primes) {
        int corank = n - rank_over_field(p.relations, q);
        best = std::max(best, corank - free_rank);
    }
    return best;
}

NovikovProfile knot_profile(const ModulePresentation& alex, int dimension, std::size_t minor_cap) {
    if (dimension != 1)
        throw data_error("knot_profile handles classical (dimension 1) knots only");
    TorsionCount tc = torsion_count(alex, minor_cap);
    if (tc.free_rank > 0) throw data_error("input module is not a knot Alexander module");
    if (alex.relations.rows() == alex.relations.cols()) {
        Int at_one = determinant(alex.relations).eval_at_one();
        if (at_one != 1 && at_one != -1)
            throw data_error("input module is not a knot Alexander module");
    }
    NovikovProfile profile;
    profile.entries.assign(4, {0, 0});
    profile.entries[1].torsion = tc.torsion;
    return profile;
}

} // namespace mn
