#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mn/errors.hpp"
#include "mn/matrix.hpp"

using namespace mn;
using mntest::cofactor_det;
using mntest::matmul;
using mntest::random_nonzero_poly;
using mntest::random_poly;

namespace {

LaurentPoly P(const char* text) { return LaurentPoly::parse(text); }

LaurentPoly norm_prim(const LaurentPoly& f) {
    return content_primitive(laurent_normalize(f).second).second;
}

} // namespace

TEST_CASE("rendering and parsing round-trip") {
    CHECK(P("2*t^2 - 3*t + 2").str() == "2*t^2 - 3*t + 2");
    CHECK(P("t^2-t+1").str() == "t^2 - t + 1");
    CHECK(P("-t^-5+7*t^-4").str() == "7*t^-4 - t^-5");
    CHECK(P("0").is_zero());
    CHECK(LaurentPoly{}.str() == "0");
    CHECK(P("5") == LaurentPoly(5));
    CHECK_THROWS_AS(P(""), parse_error);
    CHECK_THROWS_AS(P("t +"), parse_error);
    CHECK_THROWS_AS(P("2**t"), parse_error);

    std::mt19937 gen(2024);
    for (int round = 0; round < 200; ++round) {
        LaurentPoly f = random_poly(gen, -4, 6, 9);
        CHECK(LaurentPoly::parse(f.str()) == f);
    }
}

TEST_CASE("ring operations are commutative and associative") {
    std::mt19937 gen(7);
    for (int round = 0; round < 100; ++round) {
        LaurentPoly f = random_poly(gen, 0, 8, 9);
        LaurentPoly g = random_poly(gen, 0, 8, 9);
        LaurentPoly h = random_poly(gen, 0, 8, 9);
        CHECK((f + g) + h == f + (g + h));
        CHECK(f + g == g + f);
        CHECK(f * g == g * f);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
    }
    CHECK(P("t^2 - t").shifted(3) == P("t^5 - t^4"));
}

TEST_CASE("laurent_normalize") {
    auto [s1, g1] = laurent_normalize(P("t^3 - 2*t^5"));
    CHECK(s1 == 3);
    CHECK(g1 == P("1 - 2*t^2"));
    auto [s2, g2] = laurent_normalize(P("7"));
    CHECK(s2 == 0);
    CHECK(g2 == P("7"));
    auto [s3, g3] = laurent_normalize(P("t^-2 + t^-1"));
    CHECK(s3 == -2);
    CHECK(g3 == P("1 + t"));
    CHECK_THROWS_AS(laurent_normalize(LaurentPoly{}), data_error);
}

TEST_CASE("content_primitive") {
    auto [c1, p1] = content_primitive(P("4 - 6*t"));
    CHECK(c1 == 2);
    CHECK(p1 == P("2 - 3*t"));
    auto [c2, p2] = content_primitive(P("t^2 - t + 1"));
    CHECK(c2 == 1);
    CHECK(p2 == P("t^2 - t + 1"));
    auto [c3, p3] = content_primitive(P("-3*t^-1 - 3"));
    CHECK(c3 == 3);
    CHECK(p3 == P("t^-1 + 1"));
    CHECK_THROWS_AS(content_primitive(LaurentPoly{}), data_error);
}

TEST_CASE("primitive_gcd examples") {
    // gcd is t - 1 up to sign; the normalization makes the lowest coefficient positive
    CHECK(primitive_gcd(P("t^2 - 1"), P("t^2 - 3*t + 2")) == P("1 - t"));
    CHECK(primitive_gcd(P("2 - t"), P("3 - t")) == LaurentPoly(1));
    LaurentPoly f = P("2 - t") * P("1 + t");
    LaurentPoly g = P("2 - t") * P("3 + t");
    CHECK(primitive_gcd(f, g) == P("2 - t"));
    CHECK_THROWS_AS(primitive_gcd(LaurentPoly{}, LaurentPoly{}), data_error);
    CHECK(primitive_gcd(P("4 - 2*t"), LaurentPoly{}) == P("2 - t"));
}

TEST_CASE("primitive_gcd divides and respects common factors") {
    std::mt19937 gen(99);
    int rounds = 0;
    while (rounds < 60) {
        LaurentPoly f = random_poly(gen, -2, 4, 5);
        LaurentPoly g = random_poly(gen, -2, 4, 5);
        LaurentPoly h = random_poly(gen, 0, 3, 4);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        ++rounds;

        LaurentPoly d = primitive_gcd(f, g);
        // divides both normalized primitive parts exactly
        CHECK(exact_div(norm_prim(f), d) * d == norm_prim(f));
        CHECK(exact_div(norm_prim(g), d) * d == norm_prim(g));
        // gcd(f h, g h) = gcd(f, g) * prim(h)
        CHECK(primitive_gcd(f * h, g * h) == d * norm_prim(h));
    }
}

TEST_CASE("exact division") {
    std::mt19937 gen(1234);
    for (int round = 0; round < 80; ++round) {
        LaurentPoly f = random_nonzero_poly(gen, -3, 4, 6);
        LaurentPoly g = random_nonzero_poly(gen, -2, 3, 6);
        CHECK(exact_div(f * g, g) == f);
    }
    CHECK_THROWS_AS(exact_div(P("t + 1"), P("t - 1")), data_error);
    CHECK_THROWS_AS(exact_div(P("3*t"), P("2")), data_error);
    CHECK_THROWS_AS(exact_div(P("t"), LaurentPoly{}), data_error);
}

TEST_CASE("determinant on fixed matrices") {
    PolyMatrix m(2, 2, {P("t"), P("1"), P("0"), P("t")});
    CHECK(determinant(m) == P("t^2"));

    PolyMatrix id3(3, 3);
    for (std::size_t i = 0; i < 3; ++i) id3.set(i, i, LaurentPoly(1));
    CHECK(determinant(id3) == LaurentPoly(1));

    PolyMatrix m2(2, 2, {P("1 - t"), P("t"), P("-1"), P("1")});
    CHECK(determinant(m2) == LaurentPoly(1));

    CHECK(determinant(PolyMatrix(0, 0)) == LaurentPoly(1));
    CHECK_THROWS_AS(determinant(PolyMatrix(2, 3)), data_error);
}

TEST_CASE("determinant agrees with the cofactor oracle") {
    std::mt19937 gen(42);
    for (int round = 0; round < 120; ++round) {
        std::uniform_int_distribution<std::size_t> size(1, 4);
        std::size_t n = size(gen);
        PolyMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.set(i, j, random_poly(gen, -2, 2, 4));
        CHECK(determinant(m) == cofactor_det(m));
    }
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937 gen(43);
    for (int round = 0; round < 60; ++round) {
        std::uniform_int_distribution<std::size_t> size(1, 4);
        std::size_t n = size(gen);
        PolyMatrix a(n, n), b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                a.set(i, j, random_poly(gen, -1, 2, 3));
                b.set(i, j, random_poly(gen, -1, 2, 3));
            }
        CHECK(determinant(matmul(a, b)) == determinant(a) * determinant(b));
    }
}

TEST_CASE("rank over Q(t) and F_p(t)") {
    PolyMatrix m(2, 2, {P("2"), P("2*t"), P("1"), P("t")});
    CHECK(rank_over_field(m) == 1);

    PolyMatrix m2(2, 2, {P("2"), P("0"), P("0"), P("1")});
    CHECK(rank_over_field(m2, 2) == 1);
    CHECK(rank_over_field(m2) == 2);

    PolyMatrix m3(1, 1, {P("t^2 - t + 1")});
    CHECK(rank_over_field(m3) == 1);

    CHECK_THROWS_AS(rank_over_field(m3, 6), data_error);
    CHECK(rank_over_field(PolyMatrix(0, 0)) == 0);
}

TEST_CASE("rank is invariant under permutations and unimodular operations") {
    std::mt19937 gen(77);
    for (int round = 0; round < 40; ++round) {
        std::uniform_int_distribution<std::size_t> size(1, 4);
        std::size_t r = size(gen), c = size(gen);
        PolyMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, random_poly(gen, -1, 2, 3));
        int rank = rank_over_field(m);
        int rank2 = rank_over_field(m, 2);
        // reduction mod p can only lose rank
        CHECK(rank2 <= rank);
        CHECK(rank_over_field(m, 3) <= rank);
        PolyMatrix shuffled = m;
        mntest::unimodular_shuffle(shuffled, gen, 8);
        CHECK(rank_over_field(shuffled) == rank);
        CHECK(rank_over_field(shuffled, 2) == rank2);
    }
}

TEST_CASE("minor enumeration") {
    PolyMatrix m(2, 2, {P("t"), P("1 + t"), P("3"), P("t^-1")});
    auto k1 = minors(m, 1);
    REQUIRE(k1.size() == 4);
    CHECK(k1[0] == P("t"));
    CHECK(k1[1] == P("1 + t"));
    CHECK(k1[2] == P("3"));
    CHECK(k1[3] == P("t^-1"));

    auto k0 = minors(m, 0);
    REQUIRE(k0.size() == 1);
    CHECK(k0[0] == LaurentPoly(1));

    PolyMatrix m2(2, 3, {P("1 - t"), P("t"), P("0"), P("-1"), P("1"), P("t")});
    auto k2 = minors(m2, 2);
    REQUIRE(k2.size() == 3);
    CHECK(k2[0] == P("1"));
    CHECK(k2[1] == P("t - t^2"));
    CHECK(k2[2] == P("t^2"));

    PolyMatrix big(8, 8);
    CHECK_THROWS_AS(minors(big, 4, 1000), resource_error);
    try {
        minors(big, 4, 1000);
    } catch (const resource_error& e) {
        CHECK(e.count == 4900);
    }
    CHECK_THROWS_AS(minors(m, 3), data_error);
}
