// The sandwich and index properties across 200 random monic irreducible
// cubics with |coefficients| <= 20 and squarefree discriminant.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "oracle.hpp"
#include "selmer2/selmer.hpp"

using namespace selmer2;

TEST_CASE("fuzz corpus invariants") {
    auto corpus = oracle::fuzz_corpus(200);
    REQUIRE(corpus.size() == 200);
    int n = 0;
    for (const IntPoly& F : corpus) {
        CAPTURE(to_string(F));
        CurveModel E{F, ""};
        // squarefree discriminant forces index 1, so the monogenic condition
        // holds at every prime and the hypotheses pass outright
        HypothesesReport hyp = hypotheses_check(E);
        CHECK(hyp.pass);
        for (auto& v : hyp.verdicts)
            if (v.p != 2) CHECK(v.result != DaggerCase::fail);

        CubicField K(F);
        CHECK(K.index() == 1);
        ClassData cd = compute_class_data(K);
        // [Cl_+ : Cl] * |sgn(units)| = 2^{r1}
        {
            int rank = 0;
            std::vector<std::vector<int>> sigs = cd.units.signatures;
            sigs.push_back(std::vector<int>(K.r1(), -1));
            std::vector<unsigned> echelon;
            for (auto& s : sigs) {
                unsigned m = 0;
                for (int i = 0; i < K.r1(); ++i)
                    if (s[i] < 0) m |= 1u << i;
                for (unsigned b : echelon) m = std::min(m, m ^ b);
                if (m) echelon.push_back(m);
            }
            rank = (int)echelon.size();
            Int narrow_index = cd.cl_plus.order / cd.cl.order;
            CHECK(narrow_index * (Int(1) << rank) == Int(1) << K.r1());
        }
        for (int dist : (K.r1() == 3 ? std::vector<int>{0, 2} : std::vector<int>{0})) {
            StarClassGroup star = star_class_group(K, cd, dist);
            auto cs = c_star_subgroup(K, cd, dist);
            auto ct = c_tilde_subgroup(K, cd, dist);
            // two independent computations of one number
            CHECK((int)cs.size() == star.presentation.two_rank());
            // containment and the bounded gap
            std::vector<Elem> tgens;
            for (auto& s : ct) tgens.push_back(s.representative);
            for (auto& s : cs) CHECK(in_square_class_span(K, tgens, s.representative));
            int gap = (int)ct.size() - (int)cs.size();
            CHECK(gap >= 0);
            CHECK(gap <= 1);
        }
        if (++n % 20 == 0) std::cout << "fuzz: " << n << "/200 fields done\n";
    }
}
