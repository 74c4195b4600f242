#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "selmer2/lattice.hpp"

using namespace selmer2;

namespace {

Mat random_mat(std::mt19937& rng, size_t m, size_t n, long range) {
    Mat a(m, std::vector<Int>(n));
    for (auto& row : a)
        for (auto& v : row) v = (long)(rng() % (2 * range + 1)) - range;
    return a;
}

bool is_unimodular(const Mat& u) {
    if (u.size() != 3) {
        // generic: |det| == 1 via fraction-free elimination would be overkill;
        // tests only use 3x3 and smaller here
        if (u.size() == 2) {
            Int d = u[0][0] * u[1][1] - u[0][1] * u[1][0];
            return d == 1 || d == -1;
        }
        if (u.size() == 1) return u[0][0] == 1 || u[0][0] == -1;
        return true;
    }
    Int d = mat_det3(u);
    return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("hnf basics") {
    Mat a = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}};
    Mat h = hnf(a);
    REQUIRE(h.size() == 3);
    CHECK(h[0][0] == 1);
    // determinant of the lattice is 4
    Int det = h[0][0] * h[1][1] * h[2][2];
    CHECK(det == 4);
}

TEST_CASE("hnf is canonical under row shuffles") {
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
        Mat a = random_mat(rng, 5, 3, 9);
        Mat h1 = hnf(a);
        std::shuffle(a.begin(), a.end(), rng);
        Mat h2 = hnf(a);
        CHECK(h1 == h2);
    }
}

TEST_CASE("smith_form diagonalizes with unimodular transforms") {
    std::mt19937 rng(9);
    for (int t = 0; t < 40; ++t) {
        Mat a = random_mat(rng, 3, 3, 12);
        SmithForm sf = smith_form(a);
        Mat ua = mat_mul(sf.u, a);
        Mat uav = mat_mul(ua, sf.v);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                CHECK(uav[i][j] == (i == j ? sf.diag[i] : Int(0)));
        for (size_t i = 0; i + 1 < 3; ++i)
            if (sf.diag[i] != 0 && sf.diag[i + 1] != 0)
                CHECK(sf.diag[i + 1] % sf.diag[i] == 0);
        CHECK(is_unimodular(sf.u));
        CHECK(is_unimodular(sf.v));
    }
}

TEST_CASE("solve_left") {
    Mat a = {{2, 1, 0}, {0, 3, 1}, {0, 0, 5}};
    std::vector<Int> x0 = {3, -2, 7};
    std::vector<Int> b = vec_mat(x0, a);
    auto x = solve_left(a, b);
    REQUIRE(x.has_value());
    CHECK(vec_mat(*x, a) == b);
    // unsolvable case
    Mat a2 = {{2, 0}, {0, 2}};
    auto none = solve_left(a2, {1, 0});
    CHECK(!none.has_value());
}

TEST_CASE("left_kernel") {
    Mat a = {{1, 2}, {2, 4}, {3, 6}};
    Mat k = left_kernel(a);
    REQUIRE(k.size() == 2);
    for (auto& row : k) {
        auto z = vec_mat(row, a);
        for (auto& v : z) CHECK(v == 0);
    }
}

TEST_CASE("lll_gram reduces a skewed gram") {
    // basis (1, 0), (1000, 1): gram entries get reduced
    QMat g = {{Rat(1), Rat(1000)}, {Rat(1000), Rat(1000001)}};
    Mat u = lll_gram(g);
    CHECK(is_unimodular(u));
    // reduced first vector should have norm 1
    // g' = u g u^T
    Rat n00 = 0;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) n00 += Rat(u[0][i]) * g[i][j] * Rat(u[0][j]);
    CHECK(n00 == 1);
}

TEST_CASE("fincke_pohst enumerates exactly the short vectors") {
    // identity form in 3 vars, bound 4: vectors with |x|^2 <= 4
    QMat g = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    int count = 0;
    fincke_pohst(g, Rat(4), [&](const std::vector<Int>& x) {
        Int n = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        CHECK(n <= 4);
        CHECK(n > 0);
        ++count;
        return true;
    });
    // half of the 32 vectors of norm 1,2,3 plus norm-4 axis vectors:
    // norms: 1 -> 6, 2 -> 12, 3 -> 8, 4 -> 6 (axis doubles) + 24 (2,0,0)-type?
    // brute force check instead:
    int brute = 0;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c) {
                int n = a * a + b * b + c * c;
                if (n >= 1 && n <= 4) ++brute;
            }
    CHECK(count * 2 == brute);
}

TEST_CASE("fincke_pohst on a skewed exact form agrees with brute force") {
    std::mt19937 rng(17);
    for (int t = 0; t < 10; ++t) {
        // random SPD gram: A^T A + I for random integer A
        Mat a = random_mat(rng, 3, 3, 4);
        QMat g(3, std::vector<Rat>(3, Rat(0)));
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                Int s = 0;
                for (size_t k = 0; k < 3; ++k) s += a[i][k] * a[j][k];
                g[i][j] = Rat(s) + (i == j ? Rat(1) : Rat(0));
            }
        Rat bound(50);
        std::vector<std::vector<Int>> found;
        fincke_pohst(g, bound, [&](const std::vector<Int>& x) {
            found.push_back(x);
            return true;
        });
        int brute = 0;
        for (int x = -12; x <= 12; ++x)
            for (int y = -12; y <= 12; ++y)
                for (int z = -12; z <= 12; ++z) {
                    if (x == 0 && y == 0 && z == 0) continue;
                    Rat q = 0;
                    Rat v[3] = {Rat(x), Rat(y), Rat(z)};
                    for (size_t i = 0; i < 3; ++i)
                        for (size_t j = 0; j < 3; ++j) q += v[i] * g[i][j] * v[j];
                    if (q <= bound) ++brute;
                }
        CHECK((int)found.size() * 2 == brute);
        for (auto& x : found) {
            Rat q = 0;
            for (size_t i = 0; i < 3; ++i)
                for (size_t j = 0; j < 3; ++j) q += Rat(x[i]) * g[i][j] * Rat(x[j]);
            CHECK(q <= bound);
        }
    }
}
