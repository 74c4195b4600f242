#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "selmer2/cubic_field.hpp"

using namespace selmer2;

TEST_CASE("build_field on the paper fixtures") {
    CubicField K1(IntPoly{3, -7, 0, 1});
    CHECK(K1.field_disc() == 1129);
    CHECK(K1.index() == 1);
    CHECK(K1.r1() == 3);

    CubicField K2(IntPoly{169, -54, -1, 1});
    CHECK(K2.field_disc() == 26569);
    CHECK(K2.index() == 1);

    CubicField K3(IntPoly{1, 1, -1, 1});  // x^3 - x^2 + x + 1
    CHECK(K3.field_disc() == -44);
    CHECK(K3.index() == 1);
    CHECK(K3.r1() == 1);
    CHECK(K3.r2() == 1);
}

TEST_CASE("build_field rejects reducible cubics") {
    CHECK_THROWS_WITH_AS(CubicField(IntPoly{0, -1, 0, 1}),
                         doctest::Contains("rational 2-torsion"), input_error);
}

TEST_CASE("the classic non-monogenic field x^3 + x^2 - 2x + 8") {
    CubicField K(IntPoly{8, -2, 1, 1});
    CHECK(K.disc_poly() == -2012);
    CHECK(K.field_disc() == -503);
    CHECK(K.index() == 2);
    // 2 splits completely even though F mod 2 cannot show it
    auto primes = K.factor_prime(Int(2));
    REQUIRE(primes.size() == 3);
    for (auto& P : primes) {
        CHECK(P.e == 1);
        CHECK(P.f == 1);
        CHECK(K.ideal_norm(P.ideal) == 2);
    }
}

TEST_CASE("integral basis is multiplicatively closed on random fields") {
    std::mt19937 rng(21);
    int built = 0;
    while (built < 25) {
        IntPoly f{(long)(rng() % 31) - 15, (long)(rng() % 31) - 15, (long)(rng() % 31) - 15, 1};
        if (f.degree() != 3 || poly_disc(f) == 0) continue;
        if (!rational_roots(f).empty()) continue;
        CubicField K(f);  // constructor verifies closure internally
        CHECK(K.disc_poly() == K.index() * K.index() * K.field_disc());
        ++built;
    }
}

TEST_CASE("factor_prime shapes") {
    CubicField K(IntPoly{3, -7, 0, 1});
    // 1129 = disc: double root mod 1129 -> (e,f) = (2,1),(1,1)
    auto p1129 = K.factor_prime(Int(1129));
    REQUIRE(p1129.size() == 2);
    int e2 = 0, e1 = 0;
    for (auto& P : p1129) {
        if (P.e == 2 && P.f == 1) ++e2;
        if (P.e == 1 && P.f == 1) ++e1;
    }
    CHECK(e2 == 1);
    CHECK(e1 == 1);
    // inert prime: F irreducible mod 2
    auto p2 = K.factor_prime(Int(2));
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].e == 1);
    CHECK(p2[0].f == 3);

    CubicField K2(IntPoly{169, -54, -1, 1});
    auto p163 = K2.factor_prime(Int(163));
    REQUIRE(p163.size() == 1);
    CHECK(p163[0].e == 3);
    CHECK(p163[0].f == 1);
}

TEST_CASE("sum e*f = 3 and ramified iff p | field_disc") {
    std::mt19937 rng(33);
    int tested = 0;
    while (tested < 8) {
        IntPoly f{(long)(rng() % 21) - 10, (long)(rng() % 21) - 10, (long)(rng() % 21) - 10, 1};
        if (f.degree() != 3 || poly_disc(f) == 0 || !rational_roots(f).empty()) continue;
        CubicField K(f);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
            auto primes = K.factor_prime(Int(p));
            int sum = 0;
            bool ramified = false;
            for (auto& P : primes) {
                sum += P.e * P.f;
                if (P.e > 1) ramified = true;
            }
            CHECK(sum == 3);
            CHECK(ramified == (K.field_disc() % p == 0));
        }
        ++tested;
    }
}

TEST_CASE("ideal arithmetic basics") {
    CubicField K(IntPoly{3, -7, 0, 1});
    Elem th = K.theta();
    // norm(principal(theta)) = |F(0)| = 3
    IdealHNF I = K.principal_ideal(th);
    CHECK(K.ideal_norm(I) == 3);
    CHECK(K.principal_ideal(K.one()) == K.unit_ideal());
    CHECK(K.ideal_norm(K.unit_ideal()) == 1);
    // multiplicativity of norms and exactness of inverses
    std::mt19937 rng(55);
    for (int t = 0; t < 15; ++t) {
        Elem a, b;
        for (int i = 0; i < 3; ++i) {
            a.v[i] = Rat((long)(rng() % 11) - 5);
            b.v[i] = Rat((long)(rng() % 11) - 5);
        }
        if (a.is_zero() || b.is_zero()) continue;
        IdealHNF Ia = K.principal_ideal(a), Ib = K.principal_ideal(b);
        CHECK(K.ideal_norm_rat(K.ideal_mul(Ia, Ib)) ==
              K.ideal_norm_rat(Ia) * K.ideal_norm_rat(Ib));
        CHECK(K.ideal_mul(Ia, K.ideal_inverse(Ia)) == K.unit_ideal());
    }
    // product of the primes above 1129 with multiplicity recovers (1129)
    auto p1129 = K.factor_prime(Int(1129));
    IdealHNF prod = K.unit_ideal();
    for (auto& P : p1129) prod = K.ideal_mul(prod, K.ideal_pow(P.ideal, P.e));
    CHECK(prod == K.principal_ideal(K.from_int(1129)));
}

TEST_CASE("signature_of fixtures") {
    CubicField K(IntPoly{3, -7, 0, 1});
    CHECK(K.signature_of(K.one()) == std::vector<int>{1, 1, 1});
    CHECK(K.signature_of(K.neg(K.one())) == std::vector<int>{-1, -1, -1});
    // theta^2 - 8 has signs (+, -, -) at the ordered real places
    Elem a = K.sub(K.mul(K.theta(), K.theta()), K.from_int(8));
    CHECK(K.signature_of(a) == std::vector<int>{1, -1, -1});
    // theta^2 - 8 is a unit of norm 1
    CHECK(K.norm(a) == 1);
    // multiplicativity of signatures
    std::mt19937 rng(77);
    for (int t = 0; t < 10; ++t) {
        Elem x, y;
        for (int i = 0; i < 3; ++i) {
            x.v[i] = Rat((long)(rng() % 9) - 4);
            y.v[i] = Rat((long)(rng() % 9) - 4);
        }
        if (x.is_zero() || y.is_zero()) continue;
        auto sx = K.signature_of(x), sy = K.signature_of(y);
        auto sxy = K.signature_of(K.mul(x, y));
        for (int i = 0; i < 3; ++i) CHECK(sxy[i] == sx[i] * sy[i]);
    }
}

TEST_CASE("element valuations against ideal valuations") {
    CubicField K(IntPoly{3, -7, 0, 1});
    std::mt19937 rng(99);
    for (long p : {2L, 3L, 5L, 1129L}) {
        auto primes = K.factor_prime(Int(p));
        for (int t = 0; t < 6; ++t) {
            Elem x;
            for (int i = 0; i < 3; ++i) x.v[i] = Rat((long)(rng() % 13) - 6);
            if (x.is_zero()) continue;
            auto vals = K.element_valuations_above(x, Int(p));
            IdealHNF I = K.principal_ideal(x);
            for (size_t i = 0; i < primes.size(); ++i)
                CHECK(vals[i] == K.ideal_valuation(I, primes[i]));
        }
    }
}

TEST_CASE("norm and trace agree with the power basis") {
    CubicField K(IntPoly{3, 1, 0, 1});
    Elem th = K.theta();
    CHECK(K.norm(th) == -3);
    CHECK(K.trace(th) == 0);
    Elem s = K.add(th, K.from_int(2));  // N(theta + 2) = -F(-2)
    CHECK(K.norm(s) == Rat(7));
}

TEST_CASE("is_square recognizes squares and rejects non-squares") {
    for (auto coeffs : {IntPoly{3, -7, 0, 1}, IntPoly{3, 1, 0, 1}}) {
        CubicField K(coeffs);
        std::mt19937 rng(3);
        for (int t = 0; t < 12; ++t) {
            Elem x;
            for (int i = 0; i < 3; ++i) x.v[i] = Rat((long)(rng() % 9) - 4);
            if (x.is_zero()) continue;
            Elem sq = K.mul(x, x);
            Elem root;
            CHECK(K.is_square(sq, &root));
            CHECK(K.mul(root, root) == sq);
            Elem ns = K.mul(sq, K.theta());
            Elem dummy;
            bool th_sq = K.is_square(K.theta(), &dummy);
            CHECK(K.is_square(ns) == th_sq);
        }
        CHECK(K.is_square(K.from_int(49)));
        CHECK(!K.is_square(K.from_int(2)));
        CHECK(!K.is_square(K.neg(K.one())));
    }
}

TEST_CASE("is_kth_power_odd") {
    CubicField K(IntPoly{3, -7, 0, 1});
    Elem u = K.sub(K.mul(K.theta(), K.theta()), K.from_int(8));  // unit
    for (unsigned k : {3u, 5u, 7u}) {
        Elem cube = K.pow(u, (long)k);
        Elem root;
        CHECK(K.is_kth_power_odd(cube, k, &root));
        CHECK(K.pow(root, (long)k) == cube);
        CHECK(!K.is_kth_power_odd(K.mul(cube, u), k));
    }
}

TEST_CASE("fractional ideal normalization") {
    CubicField K(IntPoly{3, -7, 0, 1});
    Elem half = K.mul_scalar(K.one(), Rat(1, 2));
    IdealHNF I = K.principal_ideal(half);
    CHECK(K.ideal_norm_rat(I) == Rat(1, 8));
    CHECK(!K.ideal_is_integral(I));
    IdealHNF J = K.ideal_mul(I, K.principal_ideal(K.from_int(2)));
    CHECK(J == K.unit_ideal());
}
