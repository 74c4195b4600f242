#include "selmer2/star_class.hpp"

#include <algorithm>
#include <functional>

namespace selmer2 {

DistinguishedData distinguished_place(const IntPoly& G) {
    if (G.degree() != 3 || !G.is_monic())
        throw input_error("distinguished_place: monic cubic required");
    Int d = poly_disc(G);
    if (d == 0) throw input_error("distinguished_place: singular model");
    DistinguishedData out;
    out.curve_cubic = G;
    out.place_index = 0;
    out.type = d > 0 ? ArchType::three_real : ArchType::one_real;
    return out;
}

int distinguished_index_in_base(int r1, int sign_of_d) {
    if (sign_of_d == 0) throw input_error("twist by zero");
    if (r1 == 1) return 0;
    return sign_of_d > 0 ? 0 : r1 - 1;
}

SquareClass make_square_class(const CubicField& K, const Elem& alpha) {
    if (alpha.is_zero()) throw input_error("square class of zero");
    SquareClass sc;
    sc.representative = alpha;
    sc.signature = K.signature_of(alpha);
    Rat n = K.norm(alpha);
    sc.norm_is_square = is_rational_square(n);
    Int support = abs(num(n)) * den(n);
    if (support != 1) {
        for (auto& [p, e] : factor_integer(support)) {
            auto vals = K.element_valuations_above(alpha, p);
            for (size_t i = 0; i < vals.size(); ++i)
                if (vals[i] % 2 != 0) sc.odd_valuations.emplace_back(p, (int)i);
        }
    }
    return sc;
}

bool is_square_mod_4(const CubicField& K, const Elem& alpha) {
    if (!K.is_integral(alpha)) throw input_error("is_square_mod_4: integral element required");
    Elem a4 = K.reduce_coords_mod(alpha, Int(4));
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2) {
                Elem beta;
                beta.v = {Rat(b0), Rat(b1), Rat(b2)};
                Elem b_sq = K.reduce_coords_mod(K.mul(beta, beta), Int(4));
                if (b_sq == a4) return true;
            }
    return false;
}

std::vector<Elem> even_valuation_generators(const CubicField& K, const ClassData& cd) {
    std::vector<Elem> gens;
    gens.push_back(K.neg(K.one()));
    for (auto& u : cd.units.fundamental) gens.push_back(u);
    // one virtual unit per 2-torsion basis class of Cl
    for (size_t i = 0; i < cd.cl.snf_diag.size(); ++i) {
        const Int& d = cd.cl.snf_diag[i];
        if (d == 0 || d % 2 != 0) continue;
        std::vector<Int> target(cd.cl.snf_diag.size(), Int(0));
        target[i] = d / 2;
        Elem gamma;
        auto P = find_prime_representative(K, cd, target, Int(4000));
        if (P) {
            auto g = is_principal(K, cd, K.ideal_mul(P->ideal, P->ideal));
            if (!g) throw internal_inconsistency("square of a 2-torsion prime not principal");
            gamma = *g;
        } else {
            // fall back to a factor-base product representative
            std::vector<Int> w = vec_mat(target, cd.cl.snf_v_inv);
            for (size_t j = 0; j < cd.factor_base.size(); ++j) {
                while (w[j] < 0)
                    for (size_t k = 0; k < cd.factor_base.size(); ++k)
                        if (cd.factor_base[k].p == cd.factor_base[j].p)
                            w[k] += cd.factor_base[k].e;
            }
            IdealHNF I = K.unit_ideal();
            for (size_t j = 0; j < cd.factor_base.size(); ++j)
                if (w[j] > 0)
                    I = K.ideal_mul(I, K.ideal_pow(cd.factor_base[j].ideal, w[j].get_si()));
            auto g = is_principal(K, cd, K.ideal_mul(I, I));
            if (!g) throw internal_inconsistency("square of a 2-torsion ideal not principal");
            // ensure the representative is a 2-adic unit for the mod-4 test
            Elem gamma2 = *g;
            auto v2 = K.element_valuations_above(gamma2, Int(2));
            for (int v : v2)
                if (v != 0)
                    throw internal_inconsistency(
                        "virtual unit representative not coprime to 2");
            gamma = gamma2;
        }
        gens.push_back(gamma);
    }
    return gens;
}

namespace {

// enumerate the subgroup of F_2^k combos passing `accept` on the product,
// returning an F_2-basis of it (as exponent masks with their elements)
std::vector<std::pair<unsigned, Elem>> passing_subgroup_basis(
    const CubicField& K, const std::vector<Elem>& gens,
    const std::function<bool(const Elem&)>& accept) {
    size_t k = gens.size();
    std::vector<unsigned> passing;
    std::vector<Elem> products(1u << k);
    products[0] = K.one();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        unsigned low = mask & (mask - 1);
        int bit = __builtin_ctz(mask);
        products[mask] = K.mul(products[low], gens[bit]);
    }
    for (unsigned mask = 1; mask < (1u << k); ++mask)
        if (accept(products[mask])) passing.push_back(mask);
    // Gaussian elimination over F_2 on the masks
    std::vector<std::pair<unsigned, Elem>> basis;
    std::vector<unsigned> echelon;
    for (unsigned mask : passing) {
        unsigned m = mask;
        for (unsigned b : echelon) m = std::min(m, m ^ b);
        if (m) {
            echelon.push_back(m);
            basis.emplace_back(mask, products[mask]);
        }
    }
    return basis;
}

}  // namespace

std::vector<SquareClass> c_star_subgroup(const CubicField& K, const ClassData& cd,
                                         int dist_index) {
    std::vector<Elem> gens = even_valuation_generators(K, cd);
    auto accept = [&](const Elem& x) {
        auto sig = K.signature_of(x);
        if (sig[dist_index] < 0) return false;
        Rat n = K.norm(x);
        if (n < 0) return false;
        if (K.r1() == 3) {
            // sign vector must land in {(+,+,+), (+,-,-)} around the
            // distinguished place; equivalent to dist > 0 and N > 0
            int prod = 1;
            for (int s : sig) prod *= s;
            if (prod < 0) return false;
        }
        return is_square_mod_4(K, x);
    };
    std::vector<SquareClass> out;
    for (auto& [mask, elem] : passing_subgroup_basis(K, gens, accept))
        out.push_back(make_square_class(K, elem));
    return out;
}

std::vector<SquareClass> c_tilde_subgroup(const CubicField& K, const ClassData& cd,
                                          int dist_index) {
    std::vector<Elem> gens = even_valuation_generators(K, cd);
    auto accept = [&](const Elem& x) {
        auto sig = K.signature_of(x);
        if (sig[dist_index] < 0) return false;
        return is_rational_square(K.norm(x));
    };
    std::vector<SquareClass> out;
    for (auto& [mask, elem] : passing_subgroup_basis(K, gens, accept))
        out.push_back(make_square_class(K, elem));
    return out;
}

StarClassGroup star_class_group(const CubicField& K, const ClassData& cd, int dist_index) {
    if (dist_index != 0 && dist_index != K.r1() - 1)
        throw input_error("distinguished place must be the first or last real place");
    StarClassGroup out;
    size_t nfb = cd.factor_base.size();
    size_t cols = nfb + K.r1();
    Mat rel;
    for (size_t i = 0; i < cd.rel_vectors.size(); ++i) {
        std::vector<Int> row(cols, Int(0));
        for (size_t j = 0; j < nfb; ++j) row[j] = cd.rel_vectors[i][j];
        for (int l = 0; l < K.r1(); ++l) row[nfb + l] = cd.rel_signs[i][l] < 0 ? 1 : 0;
        rel.push_back(row);
    }
    auto sign_row = [&](const std::vector<int>& sig) {
        std::vector<Int> row(cols, Int(0));
        for (int l = 0; l < K.r1(); ++l) row[nfb + l] = sig[l] < 0 ? 1 : 0;
        rel.push_back(row);
    };
    std::vector<int> allminus(K.r1(), -1);
    sign_row(allminus);
    for (auto& sig : cd.units.signatures) sign_row(sig);
    for (int l = 0; l < K.r1(); ++l) {
        std::vector<Int> row(cols, Int(0));
        row[nfb + l] = 2;
        rel.push_back(row);
    }
    if (K.r1() == 3) {
        // the admissible sign class (+,-,-) around the distinguished place
        std::vector<Int> row(cols, Int(0));
        for (int l = 0; l < 3; ++l)
            if (l != dist_index) row[nfb + l] = 1;
        rel.push_back(row);
        // realize it by theta - c with c strictly between consecutive roots
        long prec = 32;
        for (;; prec *= 2) {
            if (prec > (1 << 14)) throw precision_error("root separation for realizer");
            int lo = dist_index == 0 ? 0 : 1;
            RatInterval a = K.root_enclosure(lo, prec);
            RatInterval b = K.root_enclosure(lo + 1, prec);
            if (a.hi < b.lo) {
                Rat c = (a.hi + b.lo) / 2;
                // theta - c is negative exactly at the places left of the gap
                Elem alpha = K.sub(K.theta(), K.mul_scalar(K.one(), c));
                if (dist_index == 0) alpha = K.neg(alpha);
                auto sig = K.signature_of(alpha);
                int expected_minus = 0;
                for (int l = 0; l < 3; ++l) {
                    if (l == dist_index) {
                        if (sig[l] < 0)
                            throw internal_inconsistency("realizer negative at distinguished");
                    } else if (sig[l] < 0) {
                        ++expected_minus;
                    }
                }
                if (expected_minus != 2)
                    throw internal_inconsistency("realizer has the wrong sign class");
                out.sign_kernel_generators.push_back(alpha);
                break;
            }
        }
    }
    std::vector<IdealHNF> gens;
    for (auto& P : cd.factor_base) gens.push_back(P.ideal);
    out.presentation = presentation_from_relations(gens, K.r1(), rel);
    out.presentation.certified = cd.certified;
    return out;
}

bool in_square_class_span(const CubicField& K, const std::vector<Elem>& gens, const Elem& x) {
    size_t k = gens.size();
    std::vector<Elem> products(1u << k);
    products[0] = K.one();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        unsigned low = mask & (mask - 1);
        int bit = __builtin_ctz(mask);
        products[mask] = K.mul(products[low], gens[bit]);
    }
    for (unsigned mask = 0; mask < (1u << k); ++mask)
        if (K.is_square(K.mul(x, products[mask]))) return true;
    return false;
}

}  // namespace selmer2
