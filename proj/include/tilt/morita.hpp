/*
 * Two-sided tilting complexes, the derived Picard group operations, and
 * dualizing/rigidity verifiers.
 *
 * Elements are carried as minimal tagged bimodule complexes.  A complex T
 * over env(B, A) is certified by exhibiting T_dual = RHom_B(T, B) together
 * with both compositions: T_dual (x)^L_B T concentrated in degree 0 and
 * isomorphic to the diagonal A-bimodule, and T (x)^L_A T_dual likewise for
 * B.  All verdicts carry the witnesses they were decided by.
 */
#pragma once

#include "derived.hpp"

namespace tilt {

inline ComplexRep diagonal_complex(const AlgebraRef& a) {
    return complex_from_module(regular_bimodule(a, envelope(a, a)), 0);
}

inline ComplexRep dual_diagonal_complex(const AlgebraRef& a) {
    return complex_from_module(dual_regular_bimodule(a, envelope(a, a)), 0);
}

inline int center_dimension(const AlgebraRef& a) {
    const int ng = (int)a->generators.size();
    MatrixE sys(ng * a->dim, a->dim, a->field);
    for (int g = 0; g < ng; ++g)
        sys.set_block(g * a->dim, 0,
                      a->left_mult(a->generators[g]) - a->right_mult(a->generators[g]));
    return (int)kernel_basis(sys).cols();
}

// ---------------------------------------------------------------- elements

struct DPicElement {
    ComplexRep complex;                  // minimal tagged complex over env(B, A)
    std::optional<ComplexRep> inverse;   // over env(A, B), cached by certification
    bool certified = false;

    AlgebraRef left_base() const { return complex.alg->env->left; }
    AlgebraRef right_base() const { return complex.alg->env->right_base; }
};

inline DPicElement dpic_element(const ComplexRep& c) {
    if (!c.alg->env) throw error("dpic_element: bimodule complex required");
    DPicElement e;
    e.complex = projective_replacement(c).p;
    e.complex.alg = c.alg;
    return e;
}

// RHom_B(T, B) for T over env(B, A), minimized.
inline ComplexRep inverse_candidate(const ComplexRep& t, int max_len = 64) {
    if (!t.alg->env) throw error("inverse_candidate: bimodule complex required");
    const AlgebraRef B = t.alg->env->left;
    auto h = derived_hom(t, diagonal_complex(B), max_len);
    return projective_replacement(h.c, max_len).p;
}

struct TiltingCertificate {
    bool tilting = false;
    ComplexRep dual;          // the inverse candidate
    ConcentratedIso left;     // dual (x)^L_B T against the diagonal A-bimodule
    ConcentratedIso right;    // T (x)^L_A dual against the diagonal B-bimodule
};

inline TiltingCertificate is_tilting_cert(const ComplexRep& t, std::uint64_t seed = 1,
                                          int trials = 8, int max_len = 64) {
    if (!t.alg->env) throw error("is_tilting: bimodule complex required");
    const AlgebraRef B = t.alg->env->left;
    const AlgebraRef A = t.alg->env->right_base;
    TiltingCertificate cert;
    cert.dual = inverse_candidate(t, max_len);
    auto lhs = derived_tensor(B, cert.dual, t, Side::left, max_len);
    cert.left = concentrated_iso(lhs.c, regular_bimodule(A, envelope(A, A)), 0, seed, trials);
    auto rhs = derived_tensor(A, t, cert.dual, Side::right, max_len);
    cert.right = concentrated_iso(rhs.c, regular_bimodule(B, envelope(B, B)), 0, seed, trials);
    cert.tilting = cert.left.holds() && cert.right.holds();
    return cert;
}

inline DPicElement is_tilting(const ComplexRep& t, std::uint64_t seed = 1, int trials = 8,
                              int max_len = 64) {
    DPicElement e = dpic_element(t);
    TiltingCertificate cert = is_tilting_cert(e.complex, seed, trials, max_len);
    if (cert.tilting) {
        e.certified = true;
        e.inverse = cert.dual;
    }
    return e;
}

inline DPicElement shift_element(const AlgebraRef& a, int k, std::uint64_t seed = 1) {
    return is_tilting(shift(diagonal_complex(a), k), seed);
}

// class of the dual bimodule; certification is the caller's business
inline DPicElement dual_element(const AlgebraRef& a) {
    return dpic_element(dual_diagonal_complex(a));
}

inline DPicElement dpic_mul(const DPicElement& x, const DPicElement& y, int max_len = 64) {
    if (!x.certified || !y.certified) throw error("dpic_mul: uncertified input");
    const AlgebraRef mid = x.right_base();
    if (!same_algebra(mid, y.left_base())) throw error("dpic_mul: algebra mismatch");
    auto t = derived_tensor(mid, x.complex, y.complex, Side::left, max_len);
    DPicElement e = dpic_element(t.c);
    e.certified = true;  // products of certified elements stay invertible
    if (x.inverse && y.inverse) {
        auto inv = derived_tensor(mid, *y.inverse, *x.inverse, Side::left, max_len);
        e.inverse = projective_replacement(inv.c, max_len).p;
    }
    return e;
}

inline DPicElement dpic_inverse(const DPicElement& x) {
    if (!x.certified || !x.inverse) throw error("dpic_inverse: no cached inverse");
    DPicElement e;
    e.complex = *x.inverse;
    e.inverse = x.complex;
    e.certified = true;
    return e;
}

inline DPicElement dpic_pow(const DPicElement& x, int k, int max_len = 64) {
    if (!x.certified) throw error("dpic_pow: uncertified input");
    if (k == 0) return shift_element(x.left_base(), 0);
    DPicElement base = k > 0 ? x : dpic_inverse(x);
    DPicElement acc = base;
    for (int i = 1; i < std::abs(k); ++i) acc = dpic_mul(acc, base, max_len);
    return acc;
}

// --------------------------------------------------------- endomorphism end

struct CenterEndResult {
    int end_dim = -1;          // dim H^0 of the hom complex over the whole envelope
    int center_left = -1;      // dim of the center of the left base
    int center_right = -1;     // dim of the center of the right base
    bool lower_vanishes = false;

    bool ok() const {
        return end_dim == center_left && end_dim == center_right && lower_vanishes;
    }
};

inline CenterEndResult center_end_check(const ComplexRep& t, int max_len = 64) {
    if (!t.alg->env) throw error("center_end_check: bimodule complex required");
    CenterEndResult r;
    r.center_left = center_dimension(t.alg->env->left);
    r.center_right = center_dimension(t.alg->env->right_base);
    auto fh = hom_full_complex(t, AuxComplex{t, nullptr, {}}, max_len);
    r.end_dim = 0;
    r.lower_vanishes = true;
    for (int p = fh.c.lo; p <= fh.c.hi(); ++p) {
        int d = cohomology(fh.c, p).h.dim;
        if (p == 0) r.end_dim = d;
        if (p < 0 && d != 0) r.lower_vanishes = false;
    }
    return r;
}

// -------------------------------------------------------------- dualizing

// Largest degree of the minimal injective resolution, read off from a
// projective replacement of the dual complex.
inline int injective_length(const ComplexRep& c) {
    auto r = projective_replacement(dual_complex(c));
    if (r.p.empty()) return -1;
    return -r.p.lo;
}

struct DualizingCertificate {
    int inj_dim_left = -1;
    int inj_dim_right = -1;
    ConcentratedIso left_end;   // RHom over A of (R, R) against the diagonal
    ConcentratedIso right_end;  // same on the opposite side
    bool dualizing = false;
};

inline DualizingCertificate is_dualizing(const ComplexRep& r, std::uint64_t seed = 1,
                                         int trials = 8, int max_len = 64) {
    if (!r.alg->env) throw error("is_dualizing: bimodule complex required");
    const AlgebraRef A = r.alg->env->left;
    if (!same_algebra(A, r.alg->env->right_base))
        throw error("is_dualizing: two-sided complex over one algebra required");
    DualizingCertificate cert;
    cert.inj_dim_left = injective_length(restrict_complex(r, Side::left));
    cert.inj_dim_right = injective_length(restrict_complex(r, Side::right));
    auto hl = derived_hom(r, r, max_len);
    cert.left_end = concentrated_iso(hl.c, regular_bimodule(A, envelope(A, A)), 0, seed, trials);
    ComplexRep rs = swap_complex(r);
    auto hr = derived_hom(rs, rs, max_len);
    const AlgebraRef Ao = rs.alg->env->left;
    cert.right_end =
        concentrated_iso(hr.c, regular_bimodule(Ao, envelope(Ao, Ao)), 0, seed, trials);
    cert.dualizing = cert.inj_dim_left >= 0 && cert.inj_dim_right >= 0 &&
                     cert.left_end.holds() && cert.right_end.holds();
    return cert;
}

inline ComplexRep twist_dualizing(const ComplexRep& r, const DPicElement& t, int max_len = 64) {
    if (!t.certified) throw error("twist_dualizing: uncertified tilting input");
    const AlgebraRef A = t.left_base();
    auto prod = derived_tensor(A, r, t.complex, Side::right, max_len);
    ComplexRep out = projective_replacement(prod.c, max_len).p;
    out.alg = prod.c.alg;
    return out;
}

// -------------------------------------------------- degreewise comparisons

struct DegreewiseIso {
    bool ok = true;
    std::vector<int> dims_left, dims_right;
    int lo = 0;
    std::string reason;
};

inline DegreewiseIso degreewise_iso(const ComplexRep& x, const ComplexRep& y,
                                    std::uint64_t seed = 1, int trials = 8) {
    DegreewiseIso r;
    int lo = std::min(x.lo, y.lo), hi = std::max(x.hi(), y.hi());
    if (x.empty()) lo = y.lo, hi = y.hi();
    if (y.empty()) lo = x.lo, hi = x.hi();
    if (x.empty() && y.empty()) return r;
    r.lo = lo;
    for (int p = lo; p <= hi; ++p) {
        Module hx = (p >= x.lo && p <= x.hi()) ? cohomology(x, p).h : zero_module(x.alg);
        Module hy = (p >= y.lo && p <= y.hi()) ? cohomology(y, p).h : zero_module(y.alg);
        r.dims_left.push_back(hx.dim);
        r.dims_right.push_back(hy.dim);
        if (hx.dim != hy.dim) {
            r.ok = false;
            r.reason = "cohomology dimension mismatch at degree " + std::to_string(p);
        } else if (hx.dim > 0 && r.ok) {
            auto iso = is_isomorphic(hx, hy, seed + (std::uint64_t)(p - lo), trials);
            if (!iso.is_yes()) {
                r.ok = false;
                r.reason = "no cohomology isomorphism at degree " + std::to_string(p);
            }
        }
    }
    return r;
}

// ----------------------------------------------------------------- rigidity

// R against RHom over the enveloping algebra of (diagonal, R (x)_k R with
// the outside structure), compared degreewise.
inline DegreewiseIso is_rigid(const ComplexRep& r, std::uint64_t seed = 1, int trials = 8,
                              int max_len = 64) {
    if (!r.alg->env) throw error("is_rigid: bimodule complex required");
    const AlgebraRef A = r.alg->env->left;
    if (!same_algebra(A, r.alg->env->right_base))
        throw error("is_rigid: two-sided complex over one algebra required");
    KTensor rr = tensor_over_field(r, r);
    auto fh = hom_full_complex(diagonal_complex(A), AuxComplex{rr.c, rr.inner, rr.ops},
                               max_len);
    return degreewise_iso(fh.c, r, seed, trials);
}

// RHom over A of (R, A) against RHom over the enveloping algebra of
// (diagonal, enveloping algebra), compared degreewise.
inline DegreewiseIso vdb_formula_check(const ComplexRep& r, std::uint64_t seed = 1,
                                       int trials = 8, int max_len = 64) {
    if (!r.alg->env) throw error("vdb_formula_check: bimodule complex required");
    const AlgebraRef A = r.alg->env->left;
    if (!same_algebra(A, r.alg->env->right_base))
        throw error("vdb_formula_check: two-sided complex over one algebra required");
    auto lhs = derived_hom(r, diagonal_complex(A), max_len);

    const AlgebraRef e = envelope(A, A);
    const int glc = e->env->gens_left_count;
    std::vector<MatrixE> ops;
    for (int g = 0; g < (int)e->generators.size(); ++g) {
        int other = g < glc ? glc + g : g - glc;
        ops.push_back(e->right_mult(e->generators[other]));
    }
    ComplexRep reg = complex_from_module(regular_module(e), 0);
    auto rhs = hom_full_complex(diagonal_complex(A), AuxComplex{reg, e, {ops}}, max_len);
    return degreewise_iso(lhs.c, rhs.c, seed, trials);
}

}  // namespace tilt
