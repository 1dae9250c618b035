/*
 * Bounded cochain complexes of modules.  Grading is cohomological:
 * differentials raise degree by one, d^p : C^p -> C^{p+1}.
 *
 * Sign conventions, fixed once and used everywhere:
 *   shift      (M[n])^p = M^{n+p},  d_{M[n]} = (-1)^n d_M
 *   cone       cone(f)^p = X^{p+1} + Y^p,  d(x,y) = (-d x, f x + d y)
 *   tensor     d(x (x) y) = dx (x) y + (-1)^p x (x) dy       (x in deg p)
 *   hom        (df)(x) = d(f x) - (-1)^n f(dx)                (f in deg n)
 */
#pragma once

#include <algorithm>

#include "module.hpp"

namespace tilt {

struct ComplexRep {
    AlgebraRef alg;
    int lo = 0;
    std::vector<Module> terms;           // degrees lo, lo+1, ...
    std::vector<MatrixE> diff;           // diff[i] : terms[i] -> terms[i+1]

    int hi() const { return lo + (int)terms.size() - 1; }
    bool empty() const { return terms.empty(); }
    int term_dim(int p) const {
        return (p < lo || p > hi()) ? 0 : terms[p - lo].dim;
    }
    const Module& term(int p) const {
        if (p < lo || p > hi()) throw error("complex: degree out of range");
        return terms[p - lo];
    }
    MatrixE d(int p) const {
        int i = p - lo;
        if (i < 0 || i + 1 >= (int)terms.size())
            return MatrixE(term_dim(p + 1), term_dim(p), alg->field);
        return diff[i];
    }
    int total_dim() const {
        int s = 0;
        for (const auto& t : terms) s += t.dim;
        return s;
    }
};

inline Module term_or_zero(const ComplexRep& c, int p) {
    if (p < c.lo || p > c.hi()) return zero_module(c.alg);
    return c.terms[p - c.lo];
}

inline ComplexRep complex_from_module(const Module& m, int degree = 0) {
    ComplexRep c;
    c.alg = m.alg;
    c.lo = degree;
    c.terms.push_back(m);
    return c;
}

inline ComplexRep empty_complex(const AlgebraRef& a) {
    ComplexRep c;
    c.alg = a;
    return c;
}

// Drop zero terms at both ends (inner zero terms stay).
inline ComplexRep trimmed(const ComplexRep& c) {
    int a = 0, b = (int)c.terms.size();
    while (a < b && c.terms[a].dim == 0) ++a;
    while (b > a && c.terms[b - 1].dim == 0) --b;
    ComplexRep r;
    r.alg = c.alg;
    r.lo = c.lo + a;
    r.terms.assign(c.terms.begin() + a, c.terms.begin() + b);
    if (b - a > 1) r.diff.assign(c.diff.begin() + a, c.diff.begin() + (b - 1));
    return r;
}

inline VerifyResult validate_complex(const ComplexRep& c) {
    for (const auto& t : c.terms)
        if (!same_algebra(t.alg, c.alg)) return {false, "term over wrong algebra"};
    if (!c.terms.empty() && c.diff.size() + 1 != c.terms.size())
        return {false, "differential count mismatch"};
    for (size_t i = 0; i < c.diff.size(); ++i) {
        if (c.diff[i].rows() != c.terms[i + 1].dim || c.diff[i].cols() != c.terms[i].dim)
            return {false, "differential shape mismatch at index " + std::to_string(i)};
        if (!is_module_hom(c.terms[i], c.terms[i + 1], c.diff[i]))
            return {false, "differential is not a module map at degree " +
                               std::to_string(c.lo + (int)i)};
    }
    for (size_t i = 0; i + 1 < c.diff.size(); ++i)
        if (!(c.diff[i + 1] * c.diff[i]).is_zero())
            return {false, "d^2 != 0 at degree " + std::to_string(c.lo + (int)i)};
    return {};
}

inline ComplexRep shift(const ComplexRep& c, int n) {
    ComplexRep r = c;
    r.lo = c.lo - n;
    if (n % 2 != 0)
        for (auto& d : r.diff) d = -d;
    return r;
}

struct ComplexMap {
    ComplexRep from, to;
    int lo = 0;                      // degree of comps[0]
    std::vector<MatrixE> comps;      // comps[i] : from.term(lo+i) -> to.term(lo+i)

    MatrixE comp(int p) const {
        int i = p - lo;
        if (i < 0 || i >= (int)comps.size())
            return MatrixE(to.term_dim(p), from.term_dim(p), from.alg->field);
        return comps[i];
    }
};

inline VerifyResult validate_map(const ComplexMap& f) {
    int a = std::min(f.from.lo, f.to.lo) - 1;
    int b = std::max(f.from.hi(), f.to.hi()) + 1;
    for (int p = a; p <= b; ++p) {
        MatrixE fp = f.comp(p);
        if (fp.rows() != f.to.term_dim(p) || fp.cols() != f.from.term_dim(p))
            return {false, "component shape mismatch at degree " + std::to_string(p)};
        if (f.from.term_dim(p) > 0 && f.to.term_dim(p) > 0 &&
            !is_module_hom(f.from.term(p), f.to.term(p), fp))
            return {false, "component is not a module map at degree " + std::to_string(p)};
        if (p < b) {
            MatrixE lhs = f.to.d(p) * fp;
            MatrixE rhs = f.comp(p + 1) * f.from.d(p);
            if (lhs != rhs)
                return {false, "map does not commute with d at degree " + std::to_string(p)};
        }
    }
    return {};
}

inline ComplexMap identity_map(const ComplexRep& c) {
    ComplexMap f;
    f.from = c;
    f.to = c;
    f.lo = c.lo;
    for (const auto& t : c.terms) f.comps.push_back(MatrixE::identity(t.dim, c.alg->field));
    return f;
}

inline ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
    // g after f
    ComplexMap h;
    h.from = f.from;
    h.to = g.to;
    h.lo = f.from.lo;
    for (int p = h.from.lo; p <= h.from.hi(); ++p)
        h.comps.push_back(g.comp(p) * f.comp(p));
    return h;
}

inline ComplexRep cone(const ComplexMap& f) {
    const ComplexRep& X = f.from;
    const ComplexRep& Y = f.to;
    const AlgebraRef& alg = X.alg;
    if (X.empty() && Y.empty()) return empty_complex(alg);
    int a = X.empty() ? Y.lo : (Y.empty() ? X.lo - 1 : std::min(X.lo - 1, Y.lo));
    int b = X.empty() ? Y.hi() : (Y.empty() ? X.hi() - 1 : std::max(X.hi() - 1, Y.hi()));
    ComplexRep c;
    c.alg = alg;
    c.lo = a;
    auto xterm = [&](int p) {
        return (p >= X.lo && p <= X.hi()) ? X.term(p) : zero_module(alg);
    };
    auto yterm = [&](int p) {
        return (p >= Y.lo && p <= Y.hi()) ? Y.term(p) : zero_module(alg);
    };
    for (int p = a; p <= b; ++p) c.terms.push_back(direct_sum({xterm(p + 1), yterm(p)}));
    for (int p = a; p < b; ++p) {
        int xd = X.term_dim(p + 1), yd = Y.term_dim(p);
        int xd2 = X.term_dim(p + 2), yd2 = Y.term_dim(p + 1);
        MatrixE d(xd2 + yd2, xd + yd, alg->field);
        d.set_block(0, 0, -X.d(p + 1));
        d.set_block(xd2, 0, f.comp(p + 1));
        d.set_block(xd2, xd, Y.d(p));
        c.diff.push_back(std::move(d));
    }
    return c;
}

// ------------------------------------------------------------ cohomology

struct CohomologyData {
    Module h;
    Subspace cycles;      // basis of ker d^p in term coordinates
    QuotientData quo;     // boundaries inside the cycle module
    MatrixE include;      // term.dim x h.dim section of the projection

    Vec project(const Vec& term_vec) const { return quo.project(cycles.coords(term_vec)); }
};

inline CohomologyData cohomology(const ComplexRep& c, int p) {
    const FieldSpec f = c.alg->field;
    CohomologyData out;
    if (p < c.lo || p > c.hi()) {
        out.h = zero_module(c.alg);
        out.include = MatrixE(0, 0, f);
        return out;
    }
    const Module& t = c.term(p);
    out.cycles = Subspace::from_span(kernel_basis(c.d(p)));
    Module zmod = submodule(t, out.cycles);
    MatrixE prev = c.d(p - 1);
    MatrixE bcoords(out.cycles.dim(), prev.cols(), f);
    for (int j = 0; j < prev.cols(); ++j) bcoords.set_col(j, out.cycles.coords(prev.col(j)));
    out.quo = quotient_module(zmod, Subspace::from_span(bcoords));
    out.h = out.quo.q;
    out.include = MatrixE(t.dim, out.h.dim, f);
    for (int k = 0; k < out.h.dim; ++k)
        out.include.set_col(k, mat_vec(out.cycles.basis(),
                                       out.quo.lift(k, f, out.cycles.dim())));
    return out;
}

inline std::vector<int> cohomology_dims(const ComplexRep& c) {
    std::vector<int> out;
    for (int p = c.lo; p <= c.hi(); ++p) out.push_back(cohomology(c, p).h.dim);
    return out;
}

inline bool is_exact(const ComplexRep& c) {
    for (int p = c.lo; p <= c.hi(); ++p)
        if (cohomology(c, p).h.dim != 0) return false;
    return true;
}

inline int euler_char(const ComplexRep& c) {
    int s = 0;
    for (int p = c.lo; p <= c.hi(); ++p) {
        int v = c.term_dim(p);
        s += (p % 2 == 0) ? v : -v;
    }
    return s;
}

// -------------------------------------------------------- tensor complex

struct TensorTotal {
    ComplexRep c;
    int xlo = 0, ylo = 0;
    // real[xi][yi]: realization of X^{xlo+xi} (x) Y^{ylo+yi}
    std::vector<std::vector<TensorRealization>> real;
    // offset of block (xi, yi) inside its total-degree term
    std::vector<std::vector<int>> offset;
};

inline TensorTotal tensor_total(const AlgebraRef& mid, const ComplexRep& X,
                                const ComplexRep& Y) {
    TensorTotal t;
    t.xlo = X.lo;
    t.ylo = Y.lo;
    const FieldSpec f = mid->field;
    if (X.empty() || Y.empty()) {
        AlgebraRef res = X.empty() ? X.alg : Y.alg;  // best effort for emptiness
        t.c = empty_complex(res);
        return t;
    }
    const int nx = (int)X.terms.size(), ny = (int)Y.terms.size();
    t.real.resize(nx);
    t.offset.assign(nx, std::vector<int>(ny, 0));
    for (int xi = 0; xi < nx; ++xi)
        for (int yi = 0; yi < ny; ++yi)
            t.real[xi].push_back(tensor_over(mid, X.terms[xi], Y.terms[yi]));
    AlgebraRef res_alg = t.real[0][0].result.alg;
    t.c.alg = res_alg;
    t.c.lo = X.lo + Y.lo;
    const int ndeg = nx + ny - 1;
    // terms: blocks with xi ascending inside each total degree
    std::vector<std::vector<std::pair<int, int>>> layout(ndeg);
    for (int n = 0; n < ndeg; ++n) {
        std::vector<Module> parts;
        for (int xi = std::max(0, n - ny + 1); xi <= std::min(nx - 1, n); ++xi) {
            int yi = n - xi;
            t.offset[xi][yi] = 0;
            for (const auto& pr : parts) t.offset[xi][yi] += pr.dim;
            parts.push_back(t.real[xi][yi].result);
            layout[n].push_back({xi, yi});
        }
        t.c.terms.push_back(parts.empty() ? zero_module(res_alg) : direct_sum(parts));
    }
    for (int n = 0; n + 1 < ndeg; ++n) {
        MatrixE d(t.c.terms[n + 1].dim, t.c.terms[n].dim, f);
        for (auto [xi, yi] : layout[n]) {
            int p = X.lo + xi;
            if (xi + 1 < nx) {
                MatrixE blk = tensor_map_left(t.real[xi][yi], t.real[xi + 1][yi], X.diff[xi]);
                d.set_block(t.offset[xi + 1][yi], t.offset[xi][yi], blk);
            }
            if (yi + 1 < ny) {
                MatrixE blk =
                    tensor_map_right(t.real[xi][yi], t.real[xi][yi + 1], Y.diff[yi]);
                if (p % 2 != 0) blk = -blk;
                d.set_block(t.offset[xi][yi + 1], t.offset[xi][yi], blk);
            }
        }
        t.c.diff.push_back(std::move(d));
    }
    return t;
}

// ----------------------------------------------------------- hom complex
//
// Generic total hom complex of two complexes over the same algebra; the
// terms are plain vector spaces (modules over the one-dimensional algebra)
// with bases the intertwiner spaces Hom(X^q, Y^{q+n}).

struct HomTotal {
    ComplexRep c;  // over field_algebra
    int xlo = 0;
    // basis[ni][qi]: matrices spanning Hom(X^{q}, Y^{q+n}), block order
    std::vector<std::vector<std::vector<MatrixE>>> basis;
    std::vector<std::vector<int>> offset;  // block offsets, aligned with basis
};

namespace detail {

inline Vec hom_coords(const std::vector<MatrixE>& basis, const MatrixE& target,
                      FieldSpec f) {
    if (basis.empty()) {
        if (!target.is_zero()) throw error("hom_coords: target outside span");
        return {};
    }
    const int r = basis[0].rows(), c = basis[0].cols();
    MatrixE sys(r * c, (int)basis.size(), f);
    for (int j = 0; j < (int)basis.size(); ++j)
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < c; ++k) sys.at(i * c + k, j) = basis[j].at(i, k);
    Vec rhs(r * c, Scalar::zero(f));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) rhs[i * c + k] = target.at(i, k);
    auto x = solve(sys, rhs);
    if (!x) throw error("hom_coords: target outside span");
    return *x;
}

}  // namespace detail

inline HomTotal hom_total(const ComplexRep& X, const ComplexRep& Y) {
    if (!same_algebra(X.alg, Y.alg)) throw error("hom_total: algebra mismatch");
    const FieldSpec f = X.alg->field;
    HomTotal t;
    t.xlo = X.lo;
    AlgebraRef ground = field_algebra(f);
    if (X.empty() || Y.empty()) {
        t.c = empty_complex(ground);
        return t;
    }
    const int nlo = Y.lo - X.hi(), nhi = Y.hi() - X.lo;
    t.c.alg = ground;
    t.c.lo = nlo;
    for (int n = nlo; n <= nhi; ++n) {
        std::vector<std::vector<MatrixE>> blocks;
        std::vector<int> offs;
        int dim = 0;
        for (int q = X.lo; q <= X.hi(); ++q) {
            if (q + n < Y.lo || q + n > Y.hi()) continue;
            auto b = hom_space(X.term(q), Y.term(q + n));
            offs.push_back(dim);
            dim += (int)b.size();
            blocks.push_back(std::move(b));
        }
        Module m;
        m.alg = ground;
        m.dim = dim;
        m.gen_act.push_back(MatrixE::identity(dim, f));
        t.c.terms.push_back(std::move(m));
        t.basis.push_back(std::move(blocks));
        t.offset.push_back(std::move(offs));
    }
    for (int n = nlo; n < nhi; ++n) {
        const int ni = n - nlo;
        MatrixE d(t.c.terms[ni + 1].dim, t.c.terms[ni].dim, f);
        // walk blocks of degree n: block index bi corresponds to some q
        int bi = 0;
        for (int q = X.lo; q <= X.hi(); ++q) {
            if (q + n < Y.lo || q + n > Y.hi()) continue;
            const auto& bas = t.basis[ni][bi];
            for (int j = 0; j < (int)bas.size(); ++j) {
                const MatrixE& F = bas[j];
                int col = t.offset[ni][bi] + j;
                // d_Y o F lands in Hom(X^q, Y^{q+n+1})
                if (q + n + 1 <= Y.hi() && q + n + 1 >= Y.lo) {
                    MatrixE img = Y.d(q + n) * F;
                    // locate block for q in degree n+1
                    int bj = 0;
                    for (int q2 = X.lo; q2 < q; ++q2)
                        if (q2 + n + 1 >= Y.lo && q2 + n + 1 <= Y.hi()) ++bj;
                    Vec coords = detail::hom_coords(t.basis[ni + 1][bj], img, f);
                    for (int k = 0; k < (int)coords.size(); ++k)
                        d.at(t.offset[ni + 1][bj] + k, col) += coords[k];
                }
                // -(-1)^n F o d_X lands in Hom(X^{q-1}, Y^{q+n})
                if (q - 1 >= X.lo && q + n >= Y.lo && q + n <= Y.hi()) {
                    MatrixE img = F * X.d(q - 1);
                    if (n % 2 == 0) img = -img;
                    int bj = 0;
                    for (int q2 = X.lo; q2 < q - 1; ++q2)
                        if (q2 + n + 1 >= Y.lo && q2 + n + 1 <= Y.hi()) ++bj;
                    Vec coords = detail::hom_coords(t.basis[ni + 1][bj], img, f);
                    for (int k = 0; k < (int)coords.size(); ++k)
                        d.at(t.offset[ni + 1][bj] + k, col) += coords[k];
                }
            }
            ++bi;
        }
        t.c.diff.push_back(std::move(d));
    }
    return t;
}

}  // namespace tilt
