#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selmer2/class_group.hpp"

using namespace selmer2;

TEST_CASE("class and narrow class groups of the 9032 field") {
    CubicField K(IntPoly{3, -7, 0, 1});
    ClassData cd = compute_class_data(K);
    CHECK(cd.cl.order == 1);
    CHECK(cd.cl.divisors.empty());
    // narrow class group has order 2
    CHECK(cd.cl_plus.order == 2);
    REQUIRE(cd.cl_plus.divisors.size() == 1);
    CHECK(cd.cl_plus.divisors[0] == 2);
    CHECK(cd.certified);
    CHECK(cd.units.certified);
    // two fundamental units, both of norm +-1
    REQUIRE(cd.units.fundamental.size() == 2);
    for (auto& u : cd.units.fundamental) {
        Rat n = K.norm(u);
        CHECK(den(n) == 1);
        CHECK(abs(num(n)) == 1);
    }
    // [Cl_+ : Cl] * |sgn(units)| = 2^{r1}
    Mat sigmat;
    std::vector<int> allminus(K.r1(), -1);
    auto to_row = [&](const std::vector<int>& s) {
        std::vector<Int> row;
        for (int x : s) row.push_back(x < 0 ? 1 : 0);
        return row;
    };
    sigmat.push_back(to_row(allminus));
    for (auto& s : cd.units.signatures) sigmat.push_back(to_row(s));
    int rank = 0;
    {
        Mat m = sigmat;
        size_t rows = m.size();
        for (int c = 0; c < K.r1(); ++c) {
            size_t piv = rows;
            for (size_t i = rank; i < rows; ++i)
                if (m[i][c] % 2 != 0) {
                    piv = i;
                    break;
                }
            if (piv == rows) continue;
            std::swap(m[piv], m[rank]);
            for (size_t i = 0; i < rows; ++i) {
                if ((int)i == rank || m[i][c] % 2 == 0) continue;
                for (int j = 0; j < K.r1(); ++j) m[i][j] = (m[i][j] + m[rank][j]) % 2;
            }
            ++rank;
        }
    }
    Int sgn_order = Int(1) << rank;
    Int narrow_index = cd.cl_plus.order / cd.cl.order;
    CHECK(narrow_index * sgn_order == Int(1) << K.r1());
}

TEST_CASE("class group of the 106276 field is Z/2 x Z/2 = narrow") {
    CubicField K(IntPoly{169, -54, -1, 1});
    ClassData cd = compute_class_data(K);
    REQUIRE(cd.cl.divisors.size() == 2);
    CHECK(cd.cl.divisors[0] == 2);
    CHECK(cd.cl.divisors[1] == 2);
    CHECK(cd.cl.order == 4);
    CHECK(cd.cl_plus.divisors == cd.cl.divisors);
    CHECK(cd.cl.two_rank() == 2);
    CHECK(cd.certified);
}

TEST_CASE("signature (1,1) fields have Cl_+ = Cl") {
    for (auto f : {IntPoly{3, 1, 0, 1}, IntPoly{11, 1, 0, 1}, IntPoly{1, 1, -1, 1}}) {
        CubicField K(f);
        ClassData cd = compute_class_data(K);
        CHECK(cd.cl_plus.divisors == cd.cl.divisors);
        CHECK(cd.units.fundamental.size() == 1);
    }
}

TEST_CASE("is_principal round trips and definite negatives") {
    CubicField K(IntPoly{169, -54, -1, 1});
    ClassData cd = compute_class_data(K);
    auto g0 = is_principal(K, cd, K.unit_ideal());
    REQUIRE(g0.has_value());
    Elem th = K.theta();
    auto g1 = is_principal(K, cd, K.principal_ideal(th));
    REQUIRE(g1.has_value());
    Elem q = K.mul(th, K.inv(*g1));
    Rat nq = K.norm(q);
    CHECK(abs(num(nq)) == 1);
    CHECK(den(nq) == 1);
    auto p163 = K.factor_prime(Int(163));
    REQUIRE(p163.size() == 1);
    auto coords = ideal_class_coords(K, cd, p163[0].ideal);
    auto gen = is_principal(K, cd, p163[0].ideal);
    CHECK(cd.cl.coords_trivial(coords) == gen.has_value());
    IdealHNF sq = K.ideal_mul(p163[0].ideal, p163[0].ideal);
    CHECK(is_principal(K, cd, sq).has_value());
}

TEST_CASE("discrete log is a homomorphism") {
    CubicField K(IntPoly{169, -54, -1, 1});
    ClassData cd = compute_class_data(K);
    auto p5 = K.factor_prime(Int(5));
    auto p7 = K.factor_prime(Int(7));
    IdealHNF a = p5[0].ideal, b = p7[0].ideal;
    auto ca = ideal_class_coords(K, cd, a);
    auto cb = ideal_class_coords(K, cd, b);
    auto cab = ideal_class_coords(K, cd, K.ideal_mul(a, b));
    for (size_t i = 0; i < ca.size(); ++i) {
        Int d = cd.cl.snf_diag[i];
        Int expect = d == 0 ? ca[i] + cb[i] : mod_reduce(ca[i] + cb[i], d);
        CHECK(cab[i] == expect);
    }
}

TEST_CASE("principal_generator_search agrees with the dlog route") {
    CubicField K(IntPoly{3, -7, 0, 1});
    ClassData cd = compute_class_data(K);
    for (long p : {3L, 5L, 7L, 11L}) {
        for (auto& P : K.factor_prime(Int(p))) {
            auto ga = is_principal(K, cd, P.ideal);
            auto gb = principal_generator_search(K, cd.units, P.ideal);
            CHECK(ga.has_value() == gb.has_value());
        }
    }
}

TEST_CASE("two_rank") {
    AbelianGroupPresentation g;
    g.divisors = {Int(2), Int(2)};
    CHECK(g.two_rank() == 2);
    g.divisors = {};
    CHECK(g.two_rank() == 0);
    g.divisors = {Int(6)};
    CHECK(g.two_rank() == 1);
}

TEST_CASE("prime representative finder lands in the right class") {
    CubicField K(IntPoly{169, -54, -1, 1});
    ClassData cd = compute_class_data(K);
    std::vector<Int> target(cd.cl.snf_diag.size(), Int(0));
    for (size_t i = 0; i < cd.cl.snf_diag.size(); ++i) {
        if (cd.cl.snf_diag[i] == 2) {
            target[i] = 1;
            auto P = find_prime_representative(K, cd, target, Int(2000));
            REQUIRE(P.has_value());
            CHECK(P->p % 2 == 1);
            CHECK(ideal_class_coords(K, cd, P->ideal) == target);
            target[i] = 0;
        }
    }
}
