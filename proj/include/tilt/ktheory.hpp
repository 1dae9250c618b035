/*
 * Grothendieck-group bookkeeping in the simple-module basis.
 *
 * Classes are integer row vectors; matrices act on the right, so the row j
 * of a transformation is the image of [S_j].  The Coxeter matrix is the
 * unique integer solution of [P_i] * c = -[I_i] for every i, verified
 * entrywise after the rational solve.
 */
#pragma once

#include "morita.hpp"

namespace tilt {

using K0Vec = std::vector<long long>;
using IntMat = std::vector<K0Vec>;

inline IntMat int_identity(int n) {
    IntMat m(n, K0Vec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMat int_mul(const IntMat& a, const IntMat& b) {
    int n = (int)a.size(), k = (int)b.size(), c = k ? (int)b[0].size() : 0;
    IntMat r(n, K0Vec(c, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            if (a[i][j])
                for (int l = 0; l < c; ++l) r[i][l] += a[i][j] * b[j][l];
    return r;
}

inline IntMat int_neg(IntMat a) {
    for (auto& row : a)
        for (auto& x : row) x = -x;
    return a;
}

inline K0Vec row_times(const K0Vec& v, const IntMat& m) {
    K0Vec r(m.empty() ? 0 : m[0].size(), 0);
    for (size_t j = 0; j < v.size(); ++j)
        if (v[j])
            for (size_t l = 0; l < r.size(); ++l) r[l] += v[j] * m[j][l];
    return r;
}

inline int order_of(const IntMat& m, int cap = 64) {
    IntMat id = int_identity((int)m.size());
    IntMat p = m;
    for (int k = 1; k <= cap; ++k) {
        if (p == id) return k;
        p = int_mul(p, m);
    }
    throw error("order_of: exceeded the power cap");
}

inline std::string int_mat_str(const IntMat& m) {
    std::string s = "[";
    for (size_t i = 0; i < m.size(); ++i) {
        s += i ? ", [" : "[";
        for (size_t j = 0; j < m[i].size(); ++j)
            s += (j ? ", " : "") + std::to_string(m[i][j]);
        s += "]";
    }
    return s + "]";
}

// ------------------------------------------------------------------ classes

// Composition multiplicities through the radical filtration: each layer is
// semisimple, and the multiplicity of S_i in it is the rank of e_i on it.
inline K0Vec class_of(const Module& m) {
    if (m.alg->env) throw error("class_of: module over the base algebra expected");
    const int n = m.alg->n_idem();
    K0Vec v(n, 0);
    Module cur = m;
    while (cur.dim > 0) {
        QuotientData t = top_of(cur);
        for (int i = 0; i < n; ++i)
            v[i] += image_basis(act_element_matrix(t.q, m.alg->idempotents[i])).cols();
        cur = radical_of(cur);
    }
    return v;
}

inline K0Vec class_of_complex(const ComplexRep& c) {
    const int n = c.alg->n_idem();
    K0Vec v(n, 0);
    for (int p = c.lo; p <= c.hi(); ++p) {
        K0Vec h = class_of(cohomology(c, p).h);
        for (int i = 0; i < n; ++i) v[i] += (p % 2 == 0 ? 1 : -1) * h[i];
    }
    return v;
}

// ------------------------------------------------------- cartan and coxeter

// columns = classes of the projectives
inline IntMat cartan_matrix(const AlgebraRef& a) {
    const int n = a->n_idem();
    IntMat c(n, K0Vec(n, 0));
    for (int j = 0; j < n; ++j) {
        K0Vec cls = class_of(projective_module(a, j));
        for (int i = 0; i < n; ++i) c[i][j] = cls[i];
    }
    return c;
}

inline IntMat coxeter(const AlgebraRef& a) {
    const int n = a->n_idem();
    const FieldSpec f = field_q();
    MatrixE r(n, n, f), nm(n, n, f);
    IntMat pr(n), in(n);
    for (int i = 0; i < n; ++i) {
        pr[i] = class_of(projective_module(a, i));
        in[i] = class_of(injective_module(a, i));
        for (int j = 0; j < n; ++j) {
            r.at(i, j) = Scalar::from_int(pr[i][j], f);
            nm.at(i, j) = Scalar::from_int(in[i][j], f);
        }
    }
    auto rinv = inverse(r);
    if (!rinv) throw error("coxeter: the Cartan matrix is not invertible");
    MatrixE cm = -(*rinv * nm);
    IntMat c(n, K0Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!cm.at(i, j).is_integer()) throw error("coxeter: non-integer entry");
            c[i][j] = cm.at(i, j).as_int();
        }
    for (int i = 0; i < n; ++i) {
        K0Vec want = in[i];
        for (auto& x : want) x = -x;
        if (row_times(pr[i], c) != want) throw error("coxeter: row verification failed");
    }
    return c;
}

// ----------------------------------------------------------- the chi_0 map

// row j = class of T tensored against S_j
inline IntMat chi0_of(const DPicElement& t, int max_len = 64) {
    if (!t.certified) throw error("chi0_of: uncertified element");
    const AlgebraRef a = t.left_base();
    if (!same_algebra(a, t.right_base())) throw error("chi0_of: two-sided element required");
    const int n = a->n_idem();
    IntMat m(n);
    for (int j = 0; j < n; ++j) {
        auto dt = derived_tensor(a, t.complex, complex_from_module(simple_module(a, j), 0),
                                 Side::left, max_len);
        m[j] = class_of_complex(dt.c);
    }
    return m;
}

}  // namespace tilt
