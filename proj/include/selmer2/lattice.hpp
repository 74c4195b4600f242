#pragma once

#include <functional>

#include "selmer2/interval.hpp"

namespace selmer2 {

using Mat = std::vector<std::vector<Int>>;   // rows of integers
using QMat = std::vector<std::vector<Rat>>;  // rows of rationals

Mat identity_mat(size_t n);
Mat mat_mul(const Mat& a, const Mat& b);
std::vector<Int> vec_mat(const std::vector<Int>& v, const Mat& m);
Int mat_det3(const Mat& a);
Rat qmat_det3(const QMat& a);
QMat qmat_inverse(const QMat& a);  // square, invertible
QMat qmat_mul(const QMat& a, const QMat& b);

// Row-style Hermite normal form: returns the echelon basis of the row lattice
// (zero rows dropped). Pivot columns increase left to right, pivots positive,
// entries above pivots reduced into [0, pivot).
Mat hnf(const Mat& a);

// HNF together with a left kernel basis: rows k with k * a = 0.
Mat left_kernel(const Mat& a);

// Smith normal form: u * a * v = d with u, v unimodular and d diagonal
// (d_i | d_{i+1}).
struct SmithForm {
    std::vector<Int> diag;  // min(m,n) entries, trailing zeros possible
    Mat u;                  // m x m
    Mat v;                  // n x n
};
SmithForm smith_form(const Mat& a);

// Solve x * a = b over the integers; nullopt when unsolvable.
std::optional<std::vector<Int>> solve_left(const Mat& a, const std::vector<Int>& b);

// LLL reduction given an exact positive-definite Gram matrix. Returns the
// unimodular transform u (new basis = u * old basis rows).
Mat lll_gram(QMat gram, const Rat& delta = Rat(99, 100));

// Enumerate nonzero integer vectors x with x^T gram x <= bound, one vector
// per +-pair. Callback returns false to stop early. Exact rational arithmetic.
void fincke_pohst(const QMat& gram, const Rat& bound,
                  const std::function<bool(const std::vector<Int>&)>& cb);

// Basis of the lattice {x in Q^n : x * p is integral} for a full-row-rank
// rational n x m matrix p.
QMat rational_solution_lattice(const QMat& p);

}  // namespace selmer2
