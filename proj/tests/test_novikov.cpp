#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mn/errors.hpp"
#include "mn/novikov.hpp"

#include <array>

using namespace mn;
using mntest::random_crt_instance;
using mntest::random_nonzero_poly;
using mntest::random_poly;

namespace {

LaurentPoly P(const char* text) { return LaurentPoly::parse(text); }

ModulePresentation diag_presentation(const std::vector<LaurentPoly>& fs) {
    PolyMatrix m(fs.size(), fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) m.set(i, i, fs[i]);
    return {fs.size(), std::move(m)};
}

ModulePresentation cyclic(const char* f) { return diag_presentation({P(f)}); }

} // namespace

TEST_CASE("is_unit of Z((t))") {
    CHECK(is_unit(P("1 + 2*t + 5*t^3")));
    CHECK_FALSE(is_unit(P("2*t^2 - 3*t^3 + 2*t^4")));
    CHECK(is_unit(P("-t^-5 + 7*t^-4")));
    CHECK_FALSE(is_unit(LaurentPoly{}));

    std::mt19937 gen(11);
    for (int round = 0; round < 120; ++round) {
        LaurentPoly f = random_nonzero_poly(gen, -2, 3, 4);
        LaurentPoly g = random_nonzero_poly(gen, -1, 4, 4);
        CHECK(is_unit(f * g) == (is_unit(f) && is_unit(g)));
    }
}

TEST_CASE("unit_gcd examples") {
    std::vector<LaurentPoly> s1 = {P("2 - t"), P("3 - t")};
    UnitGcdVerdict v1 = unit_gcd(s1);
    CHECK(v1.is_unit);
    CHECK(v1.kind == GcdWitness::combination_certificate);

    std::vector<LaurentPoly> s2 = {P("2 - t"), P("2 - t") * P("3 + t")};
    UnitGcdVerdict v2 = unit_gcd(s2);
    CHECK_FALSE(v2.is_unit);
    CHECK(v2.kind == GcdWitness::polynomial_obstruction);
    CHECK(v2.obstruction == P("2 - t"));

    std::vector<LaurentPoly> s3 = {P("2"), P("t + t^2")};
    UnitGcdVerdict v3 = unit_gcd(s3);
    CHECK(v3.is_unit);
    CHECK(v3.kind == GcdWitness::unit_element);
    CHECK(v3.unit_index == 1);

    std::vector<LaurentPoly> s4 = {P("6 - 2*t"), P("10 + 2*t^2")};
    UnitGcdVerdict v4 = unit_gcd(s4);
    CHECK_FALSE(v4.is_unit);
    CHECK(v4.kind == GcdWitness::integer_obstruction);
    CHECK(v4.prime == 2);

    CHECK_THROWS_AS(unit_gcd(std::vector<LaurentPoly>{}), data_error);

    std::vector<LaurentPoly> zeros = {LaurentPoly{}, LaurentPoly{}};
    UnitGcdVerdict vz = unit_gcd(zeros);
    CHECK_FALSE(vz.is_unit);
    CHECK(vz.kind == GcdWitness::polynomial_obstruction);
    CHECK(vz.obstruction.is_zero());

    // zero members are skipped
    std::vector<LaurentPoly> with_zero = {LaurentPoly{}, P("1 + 3*t")};
    CHECK(unit_gcd(with_zero).is_unit);
}

TEST_CASE("unit_gcd is order-invariant and unit-multiple-invariant") {
    std::mt19937 gen(21);
    for (int round = 0; round < 80; ++round) {
        std::vector<LaurentPoly> values;
        std::uniform_int_distribution<int> count(1, 4);
        int n = count(gen);
        for (int i = 0; i < n; ++i) values.push_back(random_poly(gen, -2, 3, 5));
        bool any_nonzero = false;
        for (const auto& f : values) any_nonzero |= !f.is_zero();
        if (!any_nonzero) continue;

        bool verdict = unit_gcd(values).is_unit;

        std::vector<LaurentPoly> reversed(values.rbegin(), values.rend());
        CHECK(unit_gcd(reversed).is_unit == verdict);

        std::vector<LaurentPoly> scaled = values;
        std::uniform_int_distribution<std::size_t> pick(0, scaled.size() - 1);
        std::size_t i = pick(gen);
        scaled[i] = -scaled[i].shifted(2);
        CHECK(unit_gcd(scaled).is_unit == verdict);

        scaled[i] = scaled[i] * P("1 + t"); // 1 + t is a unit of Z((t))
        CHECK(unit_gcd(scaled).is_unit == verdict);

        // any 1 + t*h with polynomial h is a unit as well
        LaurentPoly h = random_poly(gen, 0, 2, 3);
        scaled[i] = scaled[i] * (LaurentPoly(1) + h.shifted(1));
        CHECK(unit_gcd(scaled).is_unit == verdict);
    }
}

TEST_CASE("torsion_count on cyclic and diagonal modules") {
    TorsionCount t1 = torsion_count(cyclic("2*t^2 - 3*t + 2"));
    CHECK(t1.free_rank == 0);
    CHECK(t1.torsion == 1);

    TorsionCount t2 = torsion_count(cyclic("t^2 - 3*t + 1"));
    CHECK(t2.free_rank == 0);
    CHECK(t2.torsion == 0);

    TorsionCount t3 = torsion_count(diag_presentation({P("2 - t"), P("3 - t")}));
    CHECK(t3.free_rank == 0);
    CHECK(t3.torsion == 1);

    TorsionCount t4 = torsion_count(diag_presentation({P("2 - t"), P("2 - t")}));
    CHECK(t4.free_rank == 0);
    CHECK(t4.torsion == 2);

    // all-zero relation matrix presents a free module
    ModulePresentation free_mod(2, PolyMatrix(2, 2));
    TorsionCount t5 = torsion_count(free_mod);
    CHECK(t5.free_rank == 2);
    CHECK(t5.torsion == 0);

    // redundant relation rows change nothing
    PolyMatrix rect(3, 2);
    rect.set(0, 0, P("2 - t"));
    rect.set(1, 1, P("3 - t"));
    rect.set(2, 0, P("2 - t").shifted(1));
    rect.set(2, 1, P("3 - t") * P("2"));
    TorsionCount t6 = torsion_count(ModulePresentation(2, rect));
    CHECK(t6.free_rank == 0);
    CHECK(t6.torsion == 1);
}

TEST_CASE("torsion_count is invariant under unimodular operations") {
    std::mt19937 gen(31);
    for (int round = 0; round < 60; ++round) {
        auto [pres, expected] = random_crt_instance(gen);
        TorsionCount base = torsion_count(pres);
        CHECK(base.torsion == expected);
        CHECK(base.free_rank == 0);

        PolyMatrix shuffled = pres.relations;
        mntest::unimodular_shuffle_bounded(shuffled, gen, 6, 6);
        TorsionCount after = torsion_count({pres.generators, shuffled});
        CHECK(after.torsion == base.torsion);
        CHECK(after.free_rank == base.free_rank);
    }
}

TEST_CASE("torsion_count propagates the minor cap") {
    PolyMatrix big(7, 7);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) big.set(i, j, P("t + 2"));
    CHECK_THROWS_AS(torsion_count(ModulePresentation(7, big), 10), resource_error);
}

TEST_CASE("fp_lower_bound") {
    std::array<long, 3> p235 = {2, 3, 5};
    CHECK(fp_lower_bound(cyclic("2*t^2 - 3*t + 2"), p235) == 0);

    std::array<long, 1> p2 = {2};
    CHECK(fp_lower_bound(cyclic("2"), p2) == 1);

    std::array<long, 2> p23 = {2, 3};
    CHECK(fp_lower_bound(cyclic("t - 1"), p23) == 0);

    CHECK_THROWS_AS(fp_lower_bound(cyclic("2"), std::span<const long>{}), data_error);

    // never exceeds the torsion count
    std::mt19937 gen(41);
    for (int round = 0; round < 40; ++round) {
        auto [pres, expected] = random_crt_instance(gen);
        CHECK(fp_lower_bound(pres, p235) <= torsion_count(pres).torsion);
    }
}

TEST_CASE("knot_profile") {
    NovikovProfile p1 = knot_profile(cyclic("2*t^2 - 3*t + 2"), 1);
    REQUIRE(p1.top_degree() == 3);
    CHECK(p1.entries[0] == NovikovProfile::Entry{0, 0});
    CHECK(p1.entries[1] == NovikovProfile::Entry{0, 1});
    CHECK(p1.entries[2] == NovikovProfile::Entry{0, 0});
    CHECK(p1.entries[3] == NovikovProfile::Entry{0, 0});

    NovikovProfile p2 = knot_profile(cyclic("t^2 - t + 1"), 1);
    for (const auto& e : p2.entries) CHECK(e == NovikovProfile::Entry{0, 0});

    // Delta(1) = 0 cannot come from a knot
    CHECK_THROWS_AS(knot_profile(cyclic("t - 1"), 1), data_error);

    // positive free rank cannot come from a knot
    PolyMatrix wide(1, 2, {P("t"), P("t")});
    CHECK_THROWS_AS(knot_profile(ModulePresentation(2, wide), 1), data_error);

    CHECK_THROWS_AS(knot_profile(cyclic("t^2 - t + 1"), 2), data_error);

    CHECK_THROWS_AS(NovikovProfile({{0, -1}}), data_error);
}
