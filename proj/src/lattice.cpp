#include "selmer2/lattice.hpp"

#include <algorithm>

namespace selmer2 {

Mat identity_mat(size_t n) {
    Mat m(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    Mat c(m, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

std::vector<Int> vec_mat(const std::vector<Int>& v, const Mat& m) {
    size_t n = m.empty() ? 0 : m[0].size();
    std::vector<Int> r(n, Int(0));
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) r[j] += v[i] * m[i][j];
    }
    return r;
}

Int mat_det3(const Mat& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Rat qmat_det3(const QMat& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    QMat c(m, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

QMat qmat_inverse(const QMat& a) {
    size_t n = a.size();
    QMat m(a);
    QMat inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw internal_inconsistency("qmat_inverse: singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

namespace {

// in-place row HNF; also applies the same row operations to *u when given
void hnf_inplace(Mat& a, Mat* u) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // gcd-eliminate column c among rows >= r
        while (true) {
            size_t piv = rows;
            for (size_t i = r; i < rows; ++i)
                if (a[i][c] != 0 && (piv == rows || abs(a[i][c]) < abs(a[piv][c]))) piv = i;
            if (piv == rows) break;
            std::swap(a[piv], a[r]);
            if (u) std::swap((*u)[piv], (*u)[r]);
            bool done = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                if (q != 0) {
                    for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                    if (u)
                        for (size_t j = 0; j < (*u)[i].size(); ++j) (*u)[i][j] -= q * (*u)[r][j];
                }
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0) {
            for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
            if (u)
                for (auto& x : (*u)[r]) x = -x;
        }
        // reduce entries above the pivot
        for (size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (q != 0) {
                for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                if (u)
                    for (size_t j = 0; j < (*u)[i].size(); ++j) (*u)[i][j] -= q * (*u)[r][j];
            }
        }
        ++r;
    }
    a.resize(r);
}

}  // namespace

Mat hnf(const Mat& a) {
    Mat m(a);
    hnf_inplace(m, nullptr);
    return m;
}

Mat left_kernel(const Mat& a) {
    size_t rows = a.size();
    // HNF with transform, keeping the rows that became zero
    {
        Mat copy(a);
        Mat uu = identity_mat(rows);
        size_t cols = rows ? copy[0].size() : 0;
        size_t r = 0;
        for (size_t c = 0; c < cols && r < rows; ++c) {
            while (true) {
                size_t piv = rows;
                for (size_t i = r; i < rows; ++i)
                    if (copy[i][c] != 0 && (piv == rows || abs(copy[i][c]) < abs(copy[piv][c])))
                        piv = i;
                if (piv == rows) break;
                std::swap(copy[piv], copy[r]);
                std::swap(uu[piv], uu[r]);
                bool done = true;
                for (size_t i = r + 1; i < rows; ++i) {
                    if (copy[i][c] == 0) continue;
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), copy[i][c].get_mpz_t(), copy[r][c].get_mpz_t());
                    if (q != 0) {
                        for (size_t j = 0; j < cols; ++j) copy[i][j] -= q * copy[r][j];
                        for (size_t j = 0; j < rows; ++j) uu[i][j] -= q * uu[r][j];
                    }
                    if (copy[i][c] != 0) done = false;
                }
                if (done) break;
            }
            if (copy[r][c] != 0) ++r;
        }
        Mat kern;
        for (size_t i = r; i < rows; ++i) kern.push_back(uu[i]);
        return kern;
    }
}

SmithForm smith_form(const Mat& a0) {
    size_t m = a0.size(), n = a0.empty() ? 0 : a0[0].size();
    Mat a(a0);
    Mat u = identity_mat(m), v = identity_mat(n);
    size_t t = std::min(m, n);
    for (size_t k = 0; k < t; ++k) {
        // move smallest nonzero entry of the trailing block to (k, k)
        while (true) {
            size_t bi = m, bj = n;
            for (size_t i = k; i < m; ++i)
                for (size_t j = k; j < n; ++j)
                    if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) break;  // trailing block zero
            std::swap(a[bi], a[k]);
            std::swap(u[bi], u[k]);
            for (size_t i = 0; i < m; ++i) std::swap(a[i][bj], a[i][k]);
            for (size_t i = 0; i < n; ++i) std::swap(v[i][bj], v[i][k]);
            bool clean = true;
            for (size_t i = k + 1; i < m; ++i) {
                if (a[i][k] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k].get_mpz_t());
                for (size_t j = 0; j < n; ++j) a[i][j] -= q * a[k][j];
                for (size_t j = 0; j < m; ++j) u[i][j] -= q * u[k][j];
                if (a[i][k] != 0) clean = false;
            }
            for (size_t j = k + 1; j < n; ++j) {
                if (a[k][j] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[k][j].get_mpz_t(), a[k][k].get_mpz_t());
                for (size_t i = 0; i < m; ++i) a[i][j] -= q * a[i][k];
                for (size_t i = 0; i < n; ++i) v[i][j] -= q * v[i][k];
                if (a[k][j] != 0) clean = false;
            }
            if (clean) {
                // ensure divisibility into the rest of the block
                bool divides = true;
                for (size_t i = k + 1; i < m && divides; ++i)
                    for (size_t j = k + 1; j < n && divides; ++j)
                        if (a[i][j] % a[k][k] != 0) {
                            // add row i to row k to pull the entry in
                            for (size_t l = 0; l < n; ++l) a[k][l] += a[i][l];
                            for (size_t l = 0; l < m; ++l) u[k][l] += u[i][l];
                            divides = false;
                        }
                if (divides) break;
            }
        }
        if (a[k][k] < 0) {
            for (size_t j = 0; j < n; ++j) a[k][j] = -a[k][j];
            for (size_t j = 0; j < m; ++j) u[k][j] = -u[k][j];
        }
    }
    SmithForm sf;
    sf.diag.resize(t);
    for (size_t k = 0; k < t; ++k) sf.diag[k] = a[k][k];
    sf.u = std::move(u);
    sf.v = std::move(v);
    return sf;
}

std::optional<std::vector<Int>> solve_left(const Mat& a, const std::vector<Int>& b) {
    // x a = b ; with u a v = d: (x u^{-1}) d = b v
    size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
    if (b.size() != n) throw input_error("solve_left: dimension mismatch");
    SmithForm sf = smith_form(a);
    std::vector<Int> bv = vec_mat(b, sf.v);
    std::vector<Int> z(m, Int(0));
    size_t t = std::min(m, n);
    for (size_t i = 0; i < t; ++i) {
        if (sf.diag[i] == 0) {
            if (bv[i] != 0) return std::nullopt;
        } else {
            if (bv[i] % sf.diag[i] != 0) return std::nullopt;
            z[i] = bv[i] / sf.diag[i];
        }
    }
    for (size_t i = t; i < n; ++i)
        if (bv[i] != 0) return std::nullopt;
    return vec_mat(z, sf.u);
}

Mat lll_gram(QMat g, const Rat& delta) {
    size_t n = g.size();
    Mat u = identity_mat(n);
    // exact Gram-Schmidt data recomputed incrementally
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    auto recompute = [&]() {
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < i; ++j) {
                Rat s = g[i][j];
                for (size_t k = 0; k < j; ++k) s -= mu[i][k] * mu[j][k] * B[k];
                mu[i][j] = B[j] == 0 ? Rat(0) : s / B[j];
            }
            Rat s = g[i][i];
            for (size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * B[k];
            B[i] = s;
        }
    };
    auto apply_rowop = [&](size_t i, size_t j, const Int& q) {
        if (q == 0) return;
        // compute new gram entries from old: g'_ik = g_ik - q g_jk, g'_ii =
        // g_ii - 2 q g_ij + q^2 g_jj
        Rat qq(q);
        Rat gii = g[i][i] - 2 * qq * g[i][j] + qq * qq * g[j][j];
        std::vector<Rat> newrow(n);
        for (size_t k = 0; k < n; ++k) newrow[k] = g[i][k] - qq * g[j][k];
        newrow[i] = gii;
        for (size_t k = 0; k < n; ++k) {
            g[i][k] = newrow[k];
            g[k][i] = newrow[k];
        }
        g[i][i] = gii;
        for (size_t k = 0; k < n; ++k) u[i][k] -= q * u[j][k];
    };
    recompute();
    size_t k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 100000) throw internal_inconsistency("lll_gram failed to converge");
        // size-reduce b_k against b_{k-1}..b_0
        for (size_t j = k; j-- > 0;) {
            Int q = rat_round(mu[k][j]);
            if (q != 0) {
                apply_rowop(k, j, q);
                recompute();
            }
        }
        if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            std::swap(g[k], g[k - 1]);
            for (size_t i = 0; i < n; ++i) std::swap(g[i][k], g[i][k - 1]);
            std::swap(u[k], u[k - 1]);
            recompute();
            k = k > 1 ? k - 1 : 1;
        }
    }
    return u;
}

void fincke_pohst(const QMat& gram, const Rat& bound,
                  const std::function<bool(const std::vector<Int>&)>& cb) {
    size_t n = gram.size();
    // Cholesky-style completion: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    QMat q(gram);
    for (size_t i = 0; i < n; ++i) {
        if (q[i][i] <= 0) throw internal_inconsistency("fincke_pohst: form not positive definite");
        for (size_t j = i + 1; j < n; ++j) {
            Rat t = q[i][j] / q[i][i];
            for (size_t k = j; k < n; ++k) q[j][k] -= t * q[i][k];
            q[i][j] = t;
        }
    }
    std::vector<Int> x(n, Int(0));
    std::vector<Rat> center(n, Rat(0));
    std::vector<Rat> budget(n, Rat(0));
    bool stop = false;

    // enumerate level i given budgets/centers computed from levels > i
    std::function<void(size_t)> rec = [&](size_t lvl) {
        if (stop) return;
        size_t i = lvl;
        Rat c = center[i];
        Rat T = budget[i];
        auto descend = [&](const Int& xi) -> bool {
            // returns false if xi out of range
            Rat d = Rat(xi) - c;
            Rat used = q[i][i] * d * d;
            if (used > T) return false;
            x[i] = xi;
            if (i == 0) {
                bool nonzero = false;
                for (auto& v : x)
                    if (v != 0) nonzero = true;
                if (nonzero) {
                    // canonical sign: highest-index nonzero coordinate positive
                    size_t h = n;
                    for (size_t k = n; k-- > 0;)
                        if (x[k] != 0) {
                            h = k;
                            break;
                        }
                    if (x[h] > 0) {
                        if (!cb(x)) stop = true;
                    }
                }
                return true;
            }
            budget[i - 1] = T - used;
            Rat cc(0);
            for (size_t j = i; j < n; ++j) cc -= q[i - 1][j] * Rat(x[j]);
            center[i - 1] = cc;
            rec(i - 1);
            return true;
        };
        Int start = rat_round(c);
        for (Int xi = start;; ++xi) {
            if (stop) return;
            if (!descend(xi)) break;
        }
        for (Int xi = start - 1;; --xi) {
            if (stop) return;
            if (!descend(xi)) break;
        }
    };
    budget[n - 1] = bound;
    center[n - 1] = 0;
    rec(n - 1);
}

QMat rational_solution_lattice(const QMat& p) {
    size_t n = p.size(), m = p.empty() ? 0 : p[0].size();
    Int d = 1;
    for (auto& row : p)
        for (auto& v : row) d = lcm(d, den(v));
    Mat pi(n, std::vector<Int>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) pi[i][j] = num(p[i][j] * Rat(d));
    // x * pi ≡ 0 (mod d); with u pi v = D this is y_i D_i ≡ 0 (mod d)
    SmithForm sf = smith_form(pi);
    QMat out(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        if (i >= sf.diag.size() || sf.diag[i] == 0)
            throw internal_inconsistency("rational_solution_lattice: rank deficient input");
        Rat scale(d, sf.diag[i]);
        scale.canonicalize();
        for (size_t j = 0; j < n; ++j) out[i][j] = scale * Rat(sf.u[i][j]);
    }
    return out;
}

}  // namespace selmer2
