/*
 * Projective replacements, minimal complexes, and the derived tensor and
 * hom functors built on them.
 *
 * projective_replacement(X) produces a bounded complex P of tagged
 * standard projectives with a chain map aug : P -> X whose cone is exact.
 * It proceeds downward: at each degree the pairs
 *     Z^p = { (x, c) in P^{p+1} + X^p : d x = 0, aug x = -d c }
 * form a module; a projective cover phi = (phi1, phi2) of Z^p defines
 * d^p := phi1 and aug^p := -phi2.  Once the degree drops below the
 * support of X, the recursion stops as soon as Z vanishes.  A Gaussian
 * pass then cancels invertible differential components between like
 * summands, leaving d(P) <= rad P ("minimal").
 */
#pragma once

#include "complex.hpp"

namespace tilt {

// ------------------------------------------------------------ summand data

namespace detail {

struct IdemData {
    Module proj;          // the standard projective
    MatrixE basis;        // its canonical basis, columns = algebra elements
    Vec gen_coords;       // coordinates of the idempotent inside it
    QuotientData top;     // its one-dimensional top
    Scalar top_unit;      // image of the generator in the top
};

inline const IdemData& idem_data(const AlgebraRef& alg, int idem) {
    static std::map<std::pair<const Algebra*, int>, IdemData> cache;
    static std::vector<AlgebraRef> keep;
    auto key = std::make_pair(alg.get(), idem);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    IdemData d;
    d.proj = projective_module(alg, idem);
    d.basis = std_projective_basis(alg, idem);
    auto c = solve(d.basis, alg->idempotents[idem]);
    if (!c) throw error("idem_data: idempotent not inside its projective");
    d.gen_coords = *c;
    d.top = top_of(d.proj);
    if (d.top.q.dim != 1) throw error("idem_data: top is not simple");
    d.top_unit = d.top.project(d.gen_coords)[0];
    if (d.top_unit.is_zero()) throw error("idem_data: generator lies in the radical");
    keep.push_back(alg);
    return cache.emplace(key, std::move(d)).first->second;
}

inline MatrixE block_of(const MatrixE& m, const StdSummand& row, const StdSummand& col) {
    MatrixE b(row.dim, col.dim, m.field());
    for (int i = 0; i < row.dim; ++i)
        for (int j = 0; j < col.dim; ++j) b.at(i, j) = m.at(row.offset + i, col.offset + j);
    return b;
}

inline Module remove_coords(const Module& m, int offset, int len) {
    Module r;
    r.alg = m.alg;
    r.dim = m.dim - len;
    auto keep = [&](int i) { return i < offset || i >= offset + len; };
    for (const auto& a : m.gen_act) {
        MatrixE g(r.dim, r.dim, m.alg->field);
        int ri = 0;
        for (int i = 0; i < m.dim; ++i) {
            if (!keep(i)) continue;
            int rj = 0;
            for (int j = 0; j < m.dim; ++j) {
                if (!keep(j)) continue;
                g.at(ri, rj) = a.at(i, j);
                ++rj;
            }
            ++ri;
        }
        r.gen_act.push_back(std::move(g));
    }
    for (const auto& s : m.std_proj) {
        if (s.offset == offset && s.dim == len) continue;
        StdSummand t = s;
        if (t.offset > offset) t.offset -= len;
        r.std_proj.push_back(t);
    }
    return r;
}

inline MatrixE drop_rows(const MatrixE& m, int offset, int len) {
    MatrixE r(m.rows() - len, m.cols(), m.field());
    int ri = 0;
    for (int i = 0; i < m.rows(); ++i) {
        if (i >= offset && i < offset + len) continue;
        for (int j = 0; j < m.cols(); ++j) r.at(ri, j) = m.at(i, j);
        ++ri;
    }
    return r;
}

inline MatrixE drop_cols(const MatrixE& m, int offset, int len) {
    MatrixE r(m.rows(), m.cols() - len, m.field());
    for (int i = 0; i < m.rows(); ++i) {
        int rj = 0;
        for (int j = 0; j < m.cols(); ++j) {
            if (j >= offset && j < offset + len) continue;
            r.at(i, rj) = m.at(i, j);
            ++rj;
        }
    }
    return r;
}

inline MatrixE take_rows(const MatrixE& m, int offset, int len) {
    MatrixE r(len, m.cols(), m.field());
    for (int i = 0; i < len; ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(offset + i, j);
    return r;
}

inline MatrixE take_cols(const MatrixE& m, int offset, int len) {
    MatrixE r(m.rows(), len, m.field());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < len; ++j) r.at(i, j) = m.at(i, offset + j);
    return r;
}

}  // namespace detail

// ------------------------------------------------------------- minimality

inline bool is_tagged_projective(const ComplexRep& c) {
    for (const auto& t : c.terms)
        if (!t.is_std_proj()) return false;
    return true;
}

// d(P) <= rad P in every degree
inline bool is_minimal_complex(const ComplexRep& c) {
    for (int p = c.lo; p < c.hi(); ++p) {
        if (c.term_dim(p) == 0 || c.term_dim(p + 1) == 0) continue;
        Subspace rad = radical_subspace(c.term(p + 1));
        MatrixE d = c.d(p);
        for (int j = 0; j < d.cols(); ++j)
            if (!rad.contains(d.col(j))) return false;
    }
    return true;
}

struct MinimizeResult {
    ComplexRep c;
    ComplexMap to_orig;  // homotopy equivalence c -> original
};

// Cancel invertible components of the differentials of a complex of
// tagged projective sums.  Each step removes a summand S from a term and
// a like summand T from the next one; the differential becomes
// e - c a^{-1} b for the block decomposition [[a, b], [c, e]] of d.
inline MinimizeResult minimize_complex(const ComplexRep& input) {
    if (!is_tagged_projective(input)) throw error("minimize_complex: untagged terms");
    const FieldSpec f = input.alg->field;
    ComplexRep cur = input;
    std::vector<MatrixE> tot;  // tot[i] : cur.terms[i] -> input.terms[i]
    for (const auto& t : cur.terms) tot.push_back(MatrixE::identity(t.dim, f));

    for (;;) {
        bool cancelled = false;
        for (int p = cur.lo; p < cur.hi() && !cancelled; ++p) {
            const int pi = p - cur.lo;
            if (cur.terms[pi].dim == 0 || cur.terms[pi + 1].dim == 0) continue;
            StdSummand s, t;
            MatrixE ainv(0, 0, f);
            bool found = false;
            for (const auto& si : cur.terms[pi].std_proj) {
                const auto& sd = detail::idem_data(cur.alg, si.idem);
                for (const auto& ti : cur.terms[pi + 1].std_proj) {
                    if (ti.idem != si.idem) continue;
                    MatrixE a = detail::block_of(cur.diff[pi], ti, si);
                    Vec img = mat_vec(a, sd.gen_coords);
                    if ((sd.top.project(img)[0] / sd.top_unit).is_zero()) continue;
                    auto inv = inverse(a);
                    if (!inv) throw error("minimize_complex: unit component not invertible");
                    s = si;
                    t = ti;
                    ainv = std::move(*inv);
                    found = true;
                    break;
                }
                if (found) break;
            }
            if (!found) continue;

            const MatrixE& d = cur.diff[pi];
            MatrixE b = detail::drop_cols(detail::take_rows(d, t.offset, t.dim), s.offset, s.dim);
            MatrixE cc = detail::drop_rows(detail::take_cols(d, s.offset, s.dim), t.offset, t.dim);
            MatrixE e = detail::drop_cols(detail::drop_rows(d, t.offset, t.dim), s.offset, s.dim);
            MatrixE corr = -(ainv * b);  // complement-of-S coords -> S coords

            tot[pi] = detail::drop_cols(tot[pi], s.offset, s.dim) +
                      detail::take_cols(tot[pi], s.offset, s.dim) * corr;
            tot[pi + 1] = detail::drop_cols(tot[pi + 1], t.offset, t.dim);

            cur.terms[pi] = detail::remove_coords(cur.terms[pi], s.offset, s.dim);
            cur.terms[pi + 1] = detail::remove_coords(cur.terms[pi + 1], t.offset, t.dim);
            cur.diff[pi] = e - cc * (ainv * b);
            if (pi - 1 >= 0)
                cur.diff[pi - 1] = detail::drop_rows(cur.diff[pi - 1], s.offset, s.dim);
            if (pi + 1 < (int)cur.diff.size())
                cur.diff[pi + 1] = detail::drop_cols(cur.diff[pi + 1], t.offset, t.dim);
            cancelled = true;
        }
        if (!cancelled) break;
    }
    ComplexRep out = trimmed(cur);
    ComplexMap g;
    g.from = out;
    g.to = input;
    g.lo = out.lo;
    for (int p = out.lo; p <= out.hi(); ++p) g.comps.push_back(tot[p - cur.lo]);
    return {std::move(out), std::move(g)};
}

// --------------------------------------------------------- replacements

struct Replacement {
    ComplexRep p;     // minimal complex of tagged projectives
    ComplexMap aug;   // p -> x with exact cone
};

inline Replacement projective_replacement(const ComplexRep& x, int max_len = 64) {
    const AlgebraRef alg = x.alg;
    const FieldSpec f = alg->field;
    if (x.empty()) {
        Replacement r{empty_complex(alg), {}};
        r.aug.from = r.p;
        r.aug.to = x;
        return r;
    }
    if (is_tagged_projective(x)) {
        MinimizeResult m = minimize_complex(x);
        return {m.c, m.to_orig};
    }

    std::map<int, Module> P;
    std::map<int, MatrixE> dP;   // d^p : P^p -> P^{p+1}
    std::map<int, MatrixE> pim;  // aug^p : P^p -> X^p
    int p = x.hi();
    for (;;) {
        if (x.hi() - p > max_len)
            throw error("projective_replacement: length cap exceeded");
        Module pnext = P.count(p + 1) ? P[p + 1] : zero_module(alg);
        const int pnext2_dim = P.count(p + 2) ? P[p + 2].dim : 0;
        Module xt = term_or_zero(x, p);
        MatrixE dmat = dP.count(p + 1) ? dP[p + 1] : MatrixE(pnext2_dim, pnext.dim, f);
        MatrixE pimat =
            pim.count(p + 1) ? pim[p + 1] : MatrixE(x.term_dim(p + 1), pnext.dim, f);
        MatrixE dx = x.d(p);
        // pairs (xv, cv) with d xv = 0 and (aug xv) + d cv = 0
        MatrixE K(dmat.rows() + pimat.rows(), pnext.dim + xt.dim, f);
        K.set_block(0, 0, dmat);
        K.set_block(dmat.rows(), 0, pimat);
        K.set_block(dmat.rows(), pnext.dim, dx);
        Subspace Z = Subspace::from_span(kernel_basis(K));
        if (Z.dim() == 0 && p < x.lo) break;
        Module D = direct_sum({pnext, xt});
        Module zmod = submodule(D, Z);
        CoverData cov = projective_cover(zmod);
        MatrixE into_d = Z.basis() * cov.map;  // cover composed into D coordinates
        P[p] = cov.p;
        dP[p] = detail::take_rows(into_d, 0, pnext.dim);
        pim[p] = -detail::take_rows(into_d, pnext.dim, xt.dim);
        --p;
    }
    ComplexRep prep;
    prep.alg = alg;
    prep.lo = p + 1;
    if (prep.lo > x.hi()) {
        // nothing was needed: x is exact
        Replacement r{empty_complex(alg), {}};
        r.aug.from = r.p;
        r.aug.to = x;
        return r;
    }
    for (int q = prep.lo; q <= x.hi(); ++q) {
        prep.terms.push_back(P[q]);
        if (q < x.hi()) prep.diff.push_back(MatrixE(0, 0, f));
    }
    for (int q = prep.lo; q < x.hi(); ++q) prep.diff[q - prep.lo] = dP[q];
    ComplexMap aug;
    aug.from = prep;
    aug.to = x;
    aug.lo = prep.lo;
    for (int q = prep.lo; q <= x.hi(); ++q) aug.comps.push_back(pim[q]);
    MinimizeResult m = minimize_complex(prep);
    Replacement out;
    out.p = m.c;
    out.aug = compose(aug, m.to_orig);
    return out;
}

inline Replacement projective_resolution(const Module& m, int degree = 0,
                                         int max_len = 64) {
    return projective_replacement(complex_from_module(m, degree), max_len);
}

inline int projective_dimension(const Module& m) {
    auto r = projective_resolution(m);
    if (r.p.empty()) return -1;  // zero module
    return -r.p.lo;
}

// Dual complex: D(C)^p = (C^{-p})^*, differentials transposed.
inline ComplexRep dual_complex(const ComplexRep& c) {
    ComplexRep d;
    if (c.empty()) {
        d.alg = c.alg->env ? envelope(c.alg->env->right_base, c.alg->env->left)
                           : opposite(c.alg);
        return d;
    }
    d.lo = -c.hi();
    const int n = (int)c.terms.size();
    for (int k = 0; k < n; ++k) {
        Module t = dual_module(c.terms[n - 1 - k]);
        if (k == 0) d.alg = t.alg;
        t.alg = d.alg;
        d.terms.push_back(std::move(t));
    }
    for (int k = 0; k + 1 < n; ++k) d.diff.push_back(c.diff[n - 2 - k].transpose());
    return d;
}

inline int injective_dimension(const Module& m) {
    if (m.dim == 0) return -1;
    auto r = projective_replacement(dual_complex(complex_from_module(m, 0)));
    return -r.p.lo;
}

// --------------------------------------------------------- derived tensor

enum class Side { left, right };

struct DerivedTensor {
    ComplexRep c;
    Replacement rep;  // the side that was replaced
};

inline DerivedTensor derived_tensor(const AlgebraRef& mid, const ComplexRep& x,
                                    const ComplexRep& y, Side side = Side::left,
                                    int max_len = 64) {
    DerivedTensor out;
    if (side == Side::left) {
        out.rep = projective_replacement(x, max_len);
        out.c = tensor_total(mid, out.rep.p, y).c;
    } else {
        out.rep = projective_replacement(y, max_len);
        out.c = tensor_total(mid, x, out.rep.p).c;
    }
    return out;
}

// H^{-1} of (dual bimodule) (x)^L m, the Auslander-Reiten translate for
// modules without projective summands.
inline Module ar_translate(const AlgebraRef& a, const Module& m) {
    auto e = envelope(a, a);
    auto t = derived_tensor(a, complex_from_module(dual_regular_bimodule(a, e), 0),
                            complex_from_module(m, 0));
    return cohomology(t.c, -1).h;
}

// ------------------------------------------------------------ derived hom
//
// RHom over the left factor: X a complex over env(A, B), Y over env(A, C)
// or plain over A.  X is replaced by tagged projectives P; each summand
// P_(a,b) = A e_a (x) e_b B gives Hom_A(P_(a,b), N) = (e_a N) (x) (e_b B)^*
// with basis f_{v,w}, f_{v,w}(alpha (x) w') = [w' = w] alpha v.  Residual
// actions: b.f = f(- . b) is I (x) N_b^T, f.c is M_c (x) I.  The result is
// a complex over env(B, C), or plain over B when y has no right side.

struct DerivedHom {
    ComplexRep c;
    Replacement rep;
};

namespace detail {

struct HomBlock {
    int q = 0;        // degree in P
    int summand = 0;  // index into P^q tags
    int offset = 0;   // offset inside the result term
    int vdim = 0, wdim = 0;
};

}  // namespace detail

inline DerivedHom derived_hom(const ComplexRep& x, const ComplexRep& y, int max_len = 64) {
    if (!x.alg->env) throw error("derived_hom: x must be a bimodule complex");
    const AlgebraRef A = x.alg->env->left;
    const AlgebraRef B = x.alg->env->right_base;
    const bool y_env = y.alg->env.has_value();
    const AlgebraRef C = y_env ? y.alg->env->right_base : nullptr;
    if (y_env ? !same_algebra(y.alg->env->left, A) : !same_algebra(y.alg, A))
        throw error("derived_hom: y is not a module over the hom base");
    const FieldSpec f = A->field;

    DerivedHom out;
    out.rep = projective_replacement(x, max_len);
    const ComplexRep& P = out.rep.p;
    AlgebraRef res_alg = y_env ? envelope(B, C) : B;
    if (P.empty() || y.empty()) {
        out.c = empty_complex(res_alg);
        return out;
    }

    const int nb = B->n_idem();
    // slices e_a Y^m
    std::vector<std::vector<Subspace>> yslice(y.terms.size());
    for (size_t m = 0; m < y.terms.size(); ++m) {
        BimodView v(y.terms[m]);
        for (int a = 0; a < A->n_idem(); ++a)
            yslice[m].push_back(
                Subspace::from_span(image_basis(v.left_matrix(A->idempotents[a]))));
    }
    // spaces A e_a and e_b B with idempotent coordinates
    std::vector<Subspace> aslice;
    std::vector<Vec> agen;
    for (int a = 0; a < A->n_idem(); ++a) {
        Subspace s = Subspace::from_span(image_basis(A->right_mult(A->idempotents[a])));
        agen.push_back(s.coords(A->idempotents[a]));
        aslice.push_back(std::move(s));
    }
    std::vector<Subspace> wspace;
    for (int b = 0; b < nb; ++b)
        wspace.push_back(
            Subspace::from_span(image_basis(B->left_mult(B->idempotents[b]))));

    out.c.alg = res_alg;
    out.c.lo = y.lo - P.hi();
    const int nhi = y.hi() - P.lo;
    std::vector<std::vector<detail::HomBlock>> layout;
    for (int n = out.c.lo; n <= nhi; ++n) {
        std::vector<detail::HomBlock> blocks;
        int dim = 0;
        for (int q = P.lo; q <= P.hi(); ++q) {
            int m = q + n;
            if (m < y.lo || m > y.hi()) continue;
            const Module& pq = P.term(q);
            for (int si = 0; si < (int)pq.std_proj.size(); ++si) {
                const auto& s = pq.std_proj[si];
                detail::HomBlock hb;
                hb.q = q;
                hb.summand = si;
                hb.offset = dim;
                hb.vdim = yslice[m - y.lo][s.idem / nb].dim();
                hb.wdim = wspace[s.idem % nb].dim();
                dim += hb.vdim * hb.wdim;
                blocks.push_back(hb);
            }
        }
        Module t;
        t.alg = res_alg;
        t.dim = dim;
        const int ngb = (int)B->generators.size();
        const int ngc = y_env ? (int)C->generators.size() : 0;
        for (int g = 0; g < ngb + ngc; ++g) {
            MatrixE act(dim, dim, f);
            for (const auto& hb : blocks) {
                const auto& s = P.term(hb.q).std_proj[hb.summand];
                int a = s.idem / nb, b = s.idem % nb;
                int m = hb.q + n;
                if (g < ngb) {
                    MatrixE nbm =
                        restrict_matrix(B->right_mult(B->generators[g]), wspace[b])
                            .transpose();
                    for (int v = 0; v < hb.vdim; ++v)
                        for (int i = 0; i < hb.wdim; ++i)
                            for (int j = 0; j < hb.wdim; ++j)
                                if (!nbm.at(i, j).is_zero())
                                    act.at(hb.offset + v * hb.wdim + i,
                                           hb.offset + v * hb.wdim + j) = nbm.at(i, j);
                } else {
                    const Module& ym = y.terms[m - y.lo];
                    MatrixE mc = restrict_matrix(
                        ym.gen_act[y.alg->env->gens_left_count + (g - ngb)],
                        yslice[m - y.lo][a]);
                    for (int v1 = 0; v1 < hb.vdim; ++v1)
                        for (int v2 = 0; v2 < hb.vdim; ++v2)
                            if (!mc.at(v1, v2).is_zero())
                                for (int w = 0; w < hb.wdim; ++w)
                                    act.at(hb.offset + v1 * hb.wdim + w,
                                           hb.offset + v2 * hb.wdim + w) = mc.at(v1, v2);
                }
            }
            t.gen_act.push_back(std::move(act));
        }
        out.c.terms.push_back(std::move(t));
        layout.push_back(std::move(blocks));
    }

    for (int n = out.c.lo; n < nhi; ++n) {
        const int ni = n - out.c.lo;
        MatrixE d(out.c.terms[ni + 1].dim, out.c.terms[ni].dim, f);
        for (const auto& src : layout[ni]) {
            const auto& s = P.term(src.q).std_proj[src.summand];
            const int a = s.idem / nb;
            const int m = src.q + n;
            if (src.vdim == 0 || src.wdim == 0) continue;
            // (a) d_Y o f : same summand, next Y degree
            if (m + 1 <= y.hi()) {
                for (const auto& dst : layout[ni + 1]) {
                    if (dst.q != src.q || dst.summand != src.summand) continue;
                    const MatrixE& dy = y.diff[m - y.lo];
                    MatrixE da(dst.vdim, src.vdim, f);
                    for (int v = 0; v < src.vdim; ++v)
                        da.set_col(v, yslice[m + 1 - y.lo][a].coords(mat_vec(
                                          dy, yslice[m - y.lo][a].basis().col(v))));
                    for (int v1 = 0; v1 < dst.vdim; ++v1)
                        for (int v2 = 0; v2 < src.vdim; ++v2)
                            if (!da.at(v1, v2).is_zero())
                                for (int w = 0; w < src.wdim; ++w)
                                    d.at(dst.offset + v1 * src.wdim + w,
                                         src.offset + v2 * src.wdim + w) += da.at(v1, v2);
                    break;
                }
            }
            // (b) -(-1)^n f o d_P : previous P degree, same Y degree
            if (src.q - 1 >= P.lo) {
                const MatrixE& dp = P.diff[src.q - 1 - P.lo];
                const Module& ym = y.terms[m - y.lo];
                BimodView vy(ym);
                const Scalar sgn =
                    (n % 2 == 0) ? -Scalar::one(f) : Scalar::one(f);
                const int adim = aslice[a].dim();
                for (const auto& dst : layout[ni + 1]) {
                    if (dst.q != src.q - 1) continue;
                    if (dst.vdim == 0 || dst.wdim == 0) continue;
                    const auto& s2 = P.term(src.q - 1).std_proj[dst.summand];
                    const int a2 = s2.idem / nb;
                    const Vec& ag = agen[a2];
                    for (int jp = 0; jp < dst.wdim; ++jp) {
                        // generator e_{a2} (x) w'_{jp} of the target summand
                        Vec full = zero_vec(P.term_dim(src.q - 1), f);
                        for (int i = 0; i < (int)ag.size(); ++i)
                            if (!ag[i].is_zero())
                                full[s2.offset + i * dst.wdim + jp] = ag[i];
                        Vec img = mat_vec(dp, full);
                        for (int w = 0; w < src.wdim; ++w) {
                            // u = sum_i img[(i, w)] alpha_i, an element of A
                            Vec u = zero_vec(A->dim, f);
                            bool nz = false;
                            for (int i = 0; i < adim; ++i) {
                                const Scalar& cf = img[s.offset + i * src.wdim + w];
                                if (cf.is_zero()) continue;
                                nz = true;
                                Vec col = aslice[a].basis().col(i);
                                for (int r = 0; r < A->dim; ++r)
                                    if (!col[r].is_zero()) u[r] += cf * col[r];
                            }
                            if (!nz) continue;
                            for (int v = 0; v < src.vdim; ++v) {
                                Vec val =
                                    vy.left_act(u, yslice[m - y.lo][a].basis().col(v));
                                Vec cv = yslice[m - y.lo][a2].coords(val);
                                for (int vp = 0; vp < dst.vdim; ++vp)
                                    if (!cv[vp].is_zero())
                                        d.at(dst.offset + vp * dst.wdim + jp,
                                             src.offset + v * src.wdim + w) +=
                                            sgn * cv[vp];
                            }
                        }
                    }
                }
            }
        }
        out.c.diff.push_back(std::move(d));
    }
    return out;
}

// -------------------------------------------------- hom over the whole ring
//
// RHom_L(X, Y) where X and Y are complexes over the same algebra L and the
// result keeps only auxiliary structure: a list of operators on each Y-term
// commuting with the L-action (e.g. the inner actions of a two-sided tensor,
// or right multiplication on a regular module).  Summands L e of the
// replacement give Hom_L(L e, N) = e N, so each result term is a sum of
// idempotent slices of Y-terms, and the auxiliary operators restrict to them.

struct AuxComplex {
    ComplexRep y;                            // complex over some algebra L
    AlgebraRef aux;                          // algebra the hom result is a module over
    std::vector<std::vector<MatrixE>> ops;   // per Y-term, per aux generator
};

struct FullHom {
    ComplexRep c;  // over aux, or over field_algebra when aux is null
    Replacement rep;
};

inline FullHom hom_full_complex(const ComplexRep& x, const AuxComplex& ax, int max_len = 64) {
    const ComplexRep& y = ax.y;
    if (!same_algebra(x.alg, y.alg)) throw error("hom_full_complex: algebra mismatch");
    const AlgebraRef L = x.alg;
    const FieldSpec f = L->field;
    AlgebraRef res_alg = ax.aux ? ax.aux : field_algebra(f);

    FullHom out;
    out.rep = projective_replacement(x, max_len);
    const ComplexRep& P = out.rep.p;
    if (P.empty() || y.empty()) {
        out.c = empty_complex(res_alg);
        return out;
    }

    std::vector<std::vector<Subspace>> eslice(y.terms.size());
    std::vector<std::vector<MatrixE>> yfull(y.terms.size());
    for (size_t m = 0; m < y.terms.size(); ++m) {
        for (int i = 0; i < L->n_idem(); ++i)
            eslice[m].push_back(Subspace::from_span(
                image_basis(act_element_matrix(y.terms[m], L->idempotents[i]))));
        yfull[m] = full_actions(y.terms[m]);
    }

    out.c.alg = res_alg;
    out.c.lo = y.lo - P.hi();
    const int nhi = y.hi() - P.lo;
    std::vector<std::vector<detail::HomBlock>> layout;
    for (int n = out.c.lo; n <= nhi; ++n) {
        std::vector<detail::HomBlock> blocks;
        int dim = 0;
        for (int q = P.lo; q <= P.hi(); ++q) {
            int m = q + n;
            if (m < y.lo || m > y.hi()) continue;
            const Module& pq = P.term(q);
            for (int si = 0; si < (int)pq.std_proj.size(); ++si) {
                detail::HomBlock hb;
                hb.q = q;
                hb.summand = si;
                hb.offset = dim;
                hb.vdim = eslice[m - y.lo][pq.std_proj[si].idem].dim();
                hb.wdim = 1;
                dim += hb.vdim;
                blocks.push_back(hb);
            }
        }
        Module t;
        t.alg = res_alg;
        t.dim = dim;
        for (int g = 0; g < (int)res_alg->generators.size(); ++g) {
            MatrixE act(dim, dim, f);
            for (const auto& hb : blocks) {
                int m = hb.q + n;
                int idem = P.term(hb.q).std_proj[hb.summand].idem;
                MatrixE op = ax.aux
                                 ? restrict_matrix(ax.ops[m - y.lo][g], eslice[m - y.lo][idem])
                                 : MatrixE::identity(hb.vdim, f);
                for (int v1 = 0; v1 < hb.vdim; ++v1)
                    for (int v2 = 0; v2 < hb.vdim; ++v2)
                        if (!op.at(v1, v2).is_zero())
                            act.at(hb.offset + v1, hb.offset + v2) = op.at(v1, v2);
            }
            t.gen_act.push_back(std::move(act));
        }
        out.c.terms.push_back(std::move(t));
        layout.push_back(std::move(blocks));
    }

    for (int n = out.c.lo; n < nhi; ++n) {
        const int ni = n - out.c.lo;
        MatrixE d(out.c.terms[ni + 1].dim, out.c.terms[ni].dim, f);
        for (const auto& src : layout[ni]) {
            const auto& s = P.term(src.q).std_proj[src.summand];
            const int m = src.q + n;
            if (src.vdim == 0) continue;
            if (m + 1 <= y.hi()) {
                for (const auto& dst : layout[ni + 1]) {
                    if (dst.q != src.q || dst.summand != src.summand) continue;
                    const MatrixE& dy = y.diff[m - y.lo];
                    for (int v = 0; v < src.vdim; ++v) {
                        Vec cv = eslice[m + 1 - y.lo][s.idem].coords(
                            mat_vec(dy, eslice[m - y.lo][s.idem].basis().col(v)));
                        for (int v1 = 0; v1 < dst.vdim; ++v1)
                            if (!cv[v1].is_zero())
                                d.at(dst.offset + v1, src.offset + v) += cv[v1];
                    }
                    break;
                }
            }
            if (src.q - 1 >= P.lo) {
                const MatrixE& dp = P.diff[src.q - 1 - P.lo];
                const auto& sd = detail::idem_data(L, s.idem);
                const Scalar sgn = (n % 2 == 0) ? -Scalar::one(f) : Scalar::one(f);
                for (const auto& dst : layout[ni + 1]) {
                    if (dst.q != src.q - 1 || dst.vdim == 0) continue;
                    const auto& s2 = P.term(src.q - 1).std_proj[dst.summand];
                    const auto& sd2 = detail::idem_data(L, s2.idem);
                    Vec full = zero_vec(P.term_dim(src.q - 1), f);
                    for (int i = 0; i < (int)sd2.gen_coords.size(); ++i)
                        if (!sd2.gen_coords[i].is_zero())
                            full[s2.offset + i] = sd2.gen_coords[i];
                    Vec img = mat_vec(dp, full);
                    // lam = image of the target generator inside the source summand
                    Vec lam = zero_vec(L->dim, f);
                    bool nz = false;
                    for (int i = 0; i < s.dim; ++i) {
                        const Scalar& cf = img[s.offset + i];
                        if (cf.is_zero()) continue;
                        nz = true;
                        for (int r = 0; r < L->dim; ++r)
                            if (!sd.basis.at(r, i).is_zero()) lam[r] += cf * sd.basis.at(r, i);
                    }
                    if (!nz) continue;
                    MatrixE U(y.terms[m - y.lo].dim, y.terms[m - y.lo].dim, f);
                    for (int r = 0; r < L->dim; ++r)
                        if (!lam[r].is_zero()) U = U + lam[r] * yfull[m - y.lo][r];
                    for (int v = 0; v < src.vdim; ++v) {
                        Vec cv = eslice[m - y.lo][s2.idem].coords(
                            mat_vec(U, eslice[m - y.lo][s.idem].basis().col(v)));
                        for (int vp = 0; vp < dst.vdim; ++vp)
                            if (!cv[vp].is_zero())
                                d.at(dst.offset + vp, src.offset + v) += sgn * cv[vp];
                    }
                }
            }
        }
        out.c.diff.push_back(std::move(d));
    }
    return out;
}

// --------------------------------------------- tensor over the ground field
//
// X (x)_k Y for bimodule complexes.  The result is a complex over
// envelope(left(X), right(Y)) — the outside actions — while the two middle
// actions (right on the X factor, left on the Y factor) are returned as
// commuting operators over envelope(left(Y), right(X)): generator (a (x) 1)
// acts through the Y factor and (1 (x) b°) through the X factor, which is
// the module structure a hom out of the outside actions inherits.

struct KTensor {
    ComplexRep c;
    AlgebraRef inner;
    std::vector<std::vector<MatrixE>> ops;  // per term, per inner generator
};

inline KTensor tensor_over_field(const ComplexRep& x, const ComplexRep& y) {
    if (!x.alg->env || !y.alg->env) throw error("tensor_over_field: bimodule complexes required");
    const AlgebraRef A1 = x.alg->env->left, B1 = x.alg->env->right_base;
    const AlgebraRef A2 = y.alg->env->left, B2 = y.alg->env->right_base;
    const FieldSpec f = x.alg->field;
    KTensor out;
    out.c.alg = envelope(A1, B2);
    out.inner = envelope(A2, B1);
    if (x.empty() || y.empty()) {
        out.c = empty_complex(out.c.alg);
        return out;
    }
    const int xglc = x.alg->env->gens_left_count;
    const int yglc = y.alg->env->gens_left_count;
    const int n1 = (int)A1->generators.size(), nb2 = (int)B2->generators.size();
    const int n2 = (int)A2->generators.size(), nb1 = (int)B1->generators.size();
    out.c.lo = x.lo + y.lo;
    const int hi = x.hi() + y.hi();

    struct Block {
        int p, q, offset, dx, dy;
    };
    std::vector<std::vector<Block>> layout;
    for (int n = out.c.lo; n <= hi; ++n) {
        std::vector<Block> blocks;
        int dim = 0;
        for (int p = x.lo; p <= x.hi(); ++p) {
            int q = n - p;
            if (q < y.lo || q > y.hi()) continue;
            Block b{p, q, dim, x.term_dim(p), y.term_dim(q)};
            dim += b.dx * b.dy;
            blocks.push_back(b);
        }
        Module t;
        t.alg = out.c.alg;
        t.dim = dim;
        for (int g = 0; g < n1 + nb2; ++g) {
            MatrixE act(dim, dim, f);
            for (const auto& b : blocks) {
                MatrixE k = g < n1
                                ? kronecker(x.term(b.p).gen_act[g], MatrixE::identity(b.dy, f))
                                : kronecker(MatrixE::identity(b.dx, f),
                                            y.term(b.q).gen_act[yglc + (g - n1)]);
                act.set_block(b.offset, b.offset, k);
            }
            t.gen_act.push_back(std::move(act));
        }
        std::vector<MatrixE> ops;
        for (int g = 0; g < n2 + nb1; ++g) {
            MatrixE op(dim, dim, f);
            for (const auto& b : blocks) {
                MatrixE k = g < n2
                                ? kronecker(MatrixE::identity(b.dx, f), y.term(b.q).gen_act[g])
                                : kronecker(x.term(b.p).gen_act[xglc + (g - n2)],
                                            MatrixE::identity(b.dy, f));
                op.set_block(b.offset, b.offset, k);
            }
            ops.push_back(std::move(op));
        }
        out.c.terms.push_back(std::move(t));
        out.ops.push_back(std::move(ops));
        layout.push_back(std::move(blocks));
    }
    for (int n = out.c.lo; n < hi; ++n) {
        const int ni = n - out.c.lo;
        MatrixE d(out.c.terms[ni + 1].dim, out.c.terms[ni].dim, f);
        for (const auto& src : layout[ni]) {
            for (const auto& dst : layout[ni + 1]) {
                if (dst.p == src.p + 1 && dst.q == src.q) {
                    d.set_block(dst.offset, src.offset,
                                kronecker(x.d(src.p), MatrixE::identity(src.dy, f)));
                } else if (dst.p == src.p && dst.q == src.q + 1) {
                    MatrixE k = kronecker(MatrixE::identity(src.dx, f), y.d(src.q));
                    if (src.p % 2 != 0) k = -k;
                    d.set_block(dst.offset, src.offset, k);
                }
            }
        }
        out.c.diff.push_back(std::move(d));
    }
    return out;
}

// ------------------------------------------------------- side restrictions

inline Module left_restriction(const Module& m) {
    if (!m.alg->env) throw error("left_restriction: not a bimodule");
    Module r;
    r.alg = m.alg->env->left;
    r.dim = m.dim;
    const int glc = m.alg->env->gens_left_count;
    for (int g = 0; g < glc; ++g) r.gen_act.push_back(m.gen_act[g]);
    return r;
}

inline Module right_restriction(const Module& m) {
    if (!m.alg->env) throw error("right_restriction: not a bimodule");
    Module r;
    r.alg = opposite(m.alg->env->right_base);
    r.dim = m.dim;
    const int glc = m.alg->env->gens_left_count;
    for (int g = glc; g < (int)m.gen_act.size(); ++g) r.gen_act.push_back(m.gen_act[g]);
    return r;
}

inline ComplexRep restrict_complex(const ComplexRep& c, Side side) {
    ComplexRep r;
    r.lo = c.lo;
    r.diff = c.diff;
    for (const auto& t : c.terms)
        r.terms.push_back(side == Side::left ? left_restriction(t) : right_restriction(t));
    r.alg = c.empty() ? (side == Side::left ? c.alg->env->left : opposite(c.alg->env->right_base))
                      : r.terms[0].alg;
    return r;
}

inline ComplexRep swap_complex(const ComplexRep& c) {
    ComplexRep r;
    r.lo = c.lo;
    r.diff = c.diff;
    for (const auto& t : c.terms) r.terms.push_back(swap_sides(t));
    if (!c.empty())
        r.alg = r.terms[0].alg;
    else if (c.alg->env)
        r.alg = envelope(opposite(c.alg->env->right_base), opposite(c.alg->env->left));
    return r;
}

// ------------------------------------------------------------ concentrated

struct ConcentratedIso {
    bool concentrated = false;  // cohomology vanishes away from the degree
    IsoResult iso{IsoResult::Verdict::no, MatrixE(0, 0, field_q()), ""};
    std::vector<int> h_dims;
    int lo = 0;
    Module h;  // the cohomology at the requested degree

    bool holds() const { return concentrated && iso.is_yes(); }
};

// Does c have cohomology concentrated in `degree` and isomorphic to m?
inline ConcentratedIso concentrated_iso(const ComplexRep& c, const Module& m, int degree,
                                        std::uint64_t seed = 1, int trials = 8) {
    ConcentratedIso out;
    out.lo = c.lo;
    out.concentrated = true;
    for (int p = c.lo; p <= c.hi(); ++p) {
        auto h = cohomology(c, p);
        out.h_dims.push_back(h.h.dim);
        if (p == degree)
            out.h = h.h;
        else if (h.h.dim != 0)
            out.concentrated = false;
    }
    if (degree < c.lo || degree > c.hi()) out.h = zero_module(c.alg);
    out.iso = is_isomorphic(out.h, m, seed, trials);
    return out;
}

}  // namespace tilt
