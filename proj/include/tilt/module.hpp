/*
 * Finite-dimensional left modules, given by action matrices for the
 * algebra's distinguished generators; the action of any basis element
 * is recovered through its word.  Modules over an envelope algebra
 * env(B, A) = B (x) A^op are (B, A)-bimodules: (b (x) a^op) m = b m a.
 *
 * Tensor over the middle algebra is the vertex-matched coequalizer:
 * X (x)_A Y is realized on ⊕_v (X e_v) (x) (e_v Y) over the primitive
 * idempotents e_v, modulo balancing relations indexed by non-semisimple
 * generators; relations for semisimple generators vanish identically in
 * this model, and relations for products decompose through generators.
 *
 * Standard projective modules Λ ε (ε primitive) carry a `std_proj` tag;
 * over an envelope, their basis is the Kronecker pair basis of
 * (left factor) e_u  x  e_v (right factor), which the derived layer's
 * closed-form hom realization relies on.
 */
#pragma once

#include <string>

#include "algebra.hpp"

namespace tilt {

struct StdSummand {
    int idem = 0;    // index into alg->idempotents
    int offset = 0;  // first coordinate of this summand
    int dim = 0;
};

struct Module {
    AlgebraRef alg;
    int dim = 0;
    std::vector<MatrixE> gen_act;       // aligned with alg->generators
    std::vector<StdSummand> std_proj;   // nonempty: module is ⊕ Λ e_s on canonical bases

    bool is_std_proj() const { return !std_proj.empty() || dim == 0; }
};

inline void check_same_algebra(const Module& x, const Module& y, const char* who) {
    if (!same_algebra(x.alg, y.alg)) throw error(std::string(who) + ": algebra mismatch");
}

// Apply the basis element b_i through its word.
inline Vec act_basis_vec(const Module& m, int i, Vec v) {
    const Word& w = m.alg->words[i];
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) v = mat_vec(m.gen_act[*it], v);
    if (!w.coeff.is_one())
        for (auto& s : v) s *= w.coeff;
    return v;
}

// Apply an arbitrary algebra element (coordinate vector) to v.
inline Vec act_element_vec(const Module& m, const Vec& elem, const Vec& v) {
    Vec r = zero_vec(m.dim, m.alg->field);
    for (int i = 0; i < m.alg->dim; ++i) {
        if (elem[i].is_zero()) continue;
        Vec t = act_basis_vec(m, i, v);
        for (int j = 0; j < m.dim; ++j)
            if (!t[j].is_zero()) r[j] += elem[i] * t[j];
    }
    return r;
}

inline MatrixE act_element_matrix(const Module& m, const Vec& elem) {
    MatrixE r(m.dim, m.dim, m.alg->field);
    for (int c = 0; c < m.dim; ++c)
        r.set_col(c, act_element_vec(m, elem, unit_vec(m.dim, c, m.alg->field)));
    return r;
}

// Dense action matrix of every basis element (exports, verification).
inline std::vector<MatrixE> full_actions(const Module& m) {
    std::vector<MatrixE> out;
    out.reserve(m.alg->dim);
    for (int i = 0; i < m.alg->dim; ++i) {
        MatrixE a(m.dim, m.dim, m.alg->field);
        for (int c = 0; c < m.dim; ++c)
            a.set_col(c, act_basis_vec(m, i, unit_vec(m.dim, c, m.alg->field)));
        out.push_back(std::move(a));
    }
    return out;
}

struct VerifyModuleResult {
    bool ok = true;
    std::string message;
};

// Action respects unit and all structure constants.
inline VerifyModuleResult verify_module(const Module& m) {
    const Algebra& a = *m.alg;
    auto acts = full_actions(m);
    MatrixE u(m.dim, m.dim, a.field);
    for (int i = 0; i < a.dim; ++i)
        if (!a.unit[i].is_zero()) u = u + a.unit[i] * acts[i];
    if (u != MatrixE::identity(m.dim, a.field)) return {false, "unit does not act as identity"};
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            MatrixE lhs = acts[i] * acts[j];
            MatrixE rhs(m.dim, m.dim, a.field);
            for (const auto& [k, c] : a.mult[i][j]) rhs = rhs + c * acts[k];
            if (lhs != rhs)
                return {false, "action breaks product of basis elements (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")"};
        }
    return {};
}

/*
 * View of a module as a (left, right) bimodule.  Plain modules have no
 * right side; envelope modules split their generators between factors.
 */
struct BimodView {
    const Module* m;

    explicit BimodView(const Module& mod) : m(&mod) {}

    bool has_right() const { return m->alg->env.has_value(); }
    const AlgebraRef& left_alg() const {
        return m->alg->env ? m->alg->env->left : m->alg;
    }
    const AlgebraRef& right_alg() const {
        if (!m->alg->env) throw error("module has no right action");
        return m->alg->env->right_base;
    }

    // action of (elem (x) 1), elem over the left factor
    Vec left_act(const Vec& elem, Vec v) const {
        if (!m->alg->env) return act_element_vec(*m, elem, std::move(v));
        const Algebra& l = *m->alg->env->left;
        Vec r = zero_vec(m->dim, m->alg->field);
        for (int i = 0; i < l.dim; ++i) {
            if (elem[i].is_zero()) continue;
            Vec t = v;
            const Word& w = l.words[i];
            for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it)
                t = mat_vec(m->gen_act[*it], t);
            Scalar c = elem[i] * w.coeff;
            for (int j = 0; j < m->dim; ++j)
                if (!t[j].is_zero()) r[j] += c * t[j];
        }
        return r;
    }

    // action of (1 (x) elem^op), elem over the right factor: v -> v * elem
    Vec right_act(const Vec& elem, Vec v) const {
        if (!m->alg->env) throw error("module has no right action");
        const EnvelopeInfo& e = *m->alg->env;
        const Algebra& r_alg = *e.right_base;
        Vec r = zero_vec(m->dim, m->alg->field);
        for (int j = 0; j < r_alg.dim; ++j) {
            if (elem[j].is_zero()) continue;
            Vec t = v;
            const Word& w = r_alg.words[j];
            // (1 (x) (g1 g2 ... gk)^op) = (1 (x) gk^op) ... (1 (x) g1^op)
            for (int g : w.gens) t = mat_vec(m->gen_act[e.gens_left_count + g], t);
            Scalar c = elem[j] * w.coeff;
            for (int i = 0; i < m->dim; ++i)
                if (!t[i].is_zero()) r[i] += c * t[i];
        }
        return r;
    }

    MatrixE left_matrix(const Vec& elem) const {
        MatrixE r(m->dim, m->dim, m->alg->field);
        for (int c = 0; c < m->dim; ++c)
            r.set_col(c, left_act(elem, unit_vec(m->dim, c, m->alg->field)));
        return r;
    }

    MatrixE right_matrix(const Vec& elem) const {
        MatrixE r(m->dim, m->dim, m->alg->field);
        for (int c = 0; c < m->dim; ++c)
            r.set_col(c, right_act(elem, unit_vec(m->dim, c, m->alg->field)));
        return r;
    }
};

// ---------------------------------------------------------------- families

inline Module regular_module(const AlgebraRef& a) {
    Module m;
    m.alg = a;
    m.dim = a->dim;
    for (const auto& g : a->generators) m.gen_act.push_back(a->left_mult(g));
    return m;
}

// A as a bimodule over env(A, A).
inline Module regular_bimodule(const AlgebraRef& a, const AlgebraRef& e) {
    Module m;
    m.alg = e;
    m.dim = a->dim;
    for (const auto& g : a->generators) m.gen_act.push_back(a->left_mult(g));
    for (const auto& g : a->generators) m.gen_act.push_back(a->right_mult(g));
    return m;
}

// A^* = Hom_k(A, k) as a bimodule: (a f b)(x) = f(b x a).
inline Module dual_regular_bimodule(const AlgebraRef& a, const AlgebraRef& e) {
    Module m;
    m.alg = e;
    m.dim = a->dim;
    for (const auto& g : a->generators) m.gen_act.push_back(a->right_mult(g).transpose());
    for (const auto& g : a->generators) m.gen_act.push_back(a->left_mult(g).transpose());
    return m;
}

inline Module simple_module(const AlgebraRef& a, int i) {
    Module m;
    m.alg = a;
    m.dim = 1;
    for (const auto& g : a->generators) {
        MatrixE act(1, 1, a->field);
        act.at(0, 0) = a->semisimple_coords(g)[i];
        m.gen_act.push_back(std::move(act));
    }
    return m;
}

// Canonical basis of Λ e_s as columns in Λ-coordinates.  Over an envelope
// the columns are the Kronecker pairs (basis of B e_u) x (basis of e_v A),
// ordered pair-major, which the hom realization depends on.
inline MatrixE std_projective_basis(const AlgebraRef& alg, int idem) {
    if (alg->env) {
        const Algebra& b = *alg->env->left;
        const Algebra& a = *alg->env->right_base;
        int u = idem / (int)a.idempotents.size();
        int v = idem % (int)a.idempotents.size();
        MatrixE left = image_basis(b.right_mult(b.idempotents[u]));    // B e_u
        MatrixE right = image_basis(a.left_mult(a.idempotents[v]));    // e_v A
        MatrixE out(alg->dim, left.cols() * right.cols(), alg->field);
        for (int i = 0; i < left.cols(); ++i)
            for (int j = 0; j < right.cols(); ++j) {
                Vec col = zero_vec(alg->dim, alg->field);
                for (int x = 0; x < b.dim; ++x) {
                    if (left.at(x, i).is_zero()) continue;
                    for (int y = 0; y < a.dim; ++y)
                        if (!right.at(y, j).is_zero())
                            col[x * a.dim + y] = left.at(x, i) * right.at(y, j);
                }
                out.set_col(i * right.cols() + j, col);
            }
        return out;
    }
    return image_basis(alg->right_mult(alg->idempotents[idem]));
}

// Restrict a square matrix to an invariant subspace (columns of basis).
inline MatrixE restrict_matrix(const MatrixE& m, const Subspace& s) {
    MatrixE out(s.dim(), s.dim(), m.field());
    for (int j = 0; j < s.dim(); ++j) out.set_col(j, s.coords(mat_vec(m, s.basis().col(j))));
    return out;
}

inline Module std_projective(const AlgebraRef& alg, int idem) {
    Module m;
    m.alg = alg;
    if (alg->env) {
        const Algebra& b = *alg->env->left;
        const Algebra& a = *alg->env->right_base;
        int u = idem / a.n_idem();
        int v = idem % a.n_idem();
        Subspace sl = Subspace::from_span(image_basis(b.right_mult(b.idempotents[u])));
        Subspace sr = Subspace::from_span(image_basis(a.left_mult(a.idempotents[v])));
        m.dim = sl.dim() * sr.dim();
        MatrixE il = MatrixE::identity(sl.dim(), alg->field);
        MatrixE ir = MatrixE::identity(sr.dim(), alg->field);
        for (const auto& g : b.generators)
            m.gen_act.push_back(kronecker(restrict_matrix(b.left_mult(g), sl), ir));
        for (const auto& g : a.generators)
            m.gen_act.push_back(kronecker(il, restrict_matrix(a.right_mult(g), sr)));
    } else {
        Subspace s =
            Subspace::from_span(image_basis(alg->right_mult(alg->idempotents[idem])));
        m.dim = s.dim();
        for (const auto& g : alg->generators)
            m.gen_act.push_back(restrict_matrix(alg->left_mult(g), s));
    }
    m.std_proj = {StdSummand{idem, 0, m.dim}};
    return m;
}

inline Module projective_module(const AlgebraRef& a, int i) { return std_projective(a, i); }

inline std::vector<Module> projectives(const AlgebraRef& a) {
    std::vector<Module> out;
    for (int i = 0; i < a->n_idem(); ++i) out.push_back(projective_module(a, i));
    return out;
}

inline std::vector<Module> simples(const AlgebraRef& a) {
    std::vector<Module> out;
    for (int i = 0; i < a->n_idem(); ++i) out.push_back(simple_module(a, i));
    return out;
}

// Injective I_i = (e_i A)^*: left action (a f)(x) = f(x a).
inline Module injective_module(const AlgebraRef& a, int i) {
    MatrixE basis = image_basis(a->left_mult(a->idempotents[i]));  // e_i A
    Subspace s = Subspace::from_span(basis);
    Module m;
    m.alg = a;
    m.dim = s.dim();
    for (const auto& g : a->generators)
        m.gen_act.push_back(restrict_matrix(a->right_mult(g), s).transpose());
    return m;
}

inline std::vector<Module> injectives(const AlgebraRef& a) {
    std::vector<Module> out;
    for (int i = 0; i < a->n_idem(); ++i) out.push_back(injective_module(a, i));
    return out;
}

// Interval module I^i_j over triangular(n), 1-based, rows i..j of the
// column model: e_uv sends basis row r to row u when v = r and u lands
// inside [i, j], else to zero.
inline Module interval_module(const AlgebraRef& a, int i, int j) {
    const int n = a->n_idem();
    if (a->name.rfind("triangular(", 0) != 0)
        throw error("interval_module: algebra is not triangular");
    if (i < 1 || j < i || j > n) throw error("interval_module: bad interval");
    Module m;
    m.alg = a;
    m.dim = j - i + 1;
    auto inside = [&](int r) { return r >= i && r <= j; };
    // generators: idempotents e_11..e_nn then arrows e_12, e_23, ...
    for (int u = 1; u <= n; ++u) {
        MatrixE act(m.dim, m.dim, a->field);
        if (inside(u)) act.at(u - i, u - i) = Scalar::one(a->field);
        m.gen_act.push_back(std::move(act));
    }
    for (int u = 1; u < n; ++u) {
        // arrow e_{u,u+1}: row u+1 -> row u
        MatrixE act(m.dim, m.dim, a->field);
        if (inside(u + 1) && inside(u)) act.at(u - i, u + 1 - i) = Scalar::one(a->field);
        m.gen_act.push_back(std::move(act));
    }
    return m;
}

inline Module direct_sum(const std::vector<Module>& parts) {
    if (parts.empty()) throw error("direct_sum: empty");
    Module m;
    m.alg = parts[0].alg;
    for (const auto& p : parts) {
        check_same_algebra(parts[0], p, "direct_sum");
        m.dim += p.dim;
    }
    for (size_t g = 0; g < m.alg->generators.size(); ++g) {
        MatrixE act(m.dim, m.dim, m.alg->field);
        int off = 0;
        for (const auto& p : parts) {
            act.set_block(off, off, p.gen_act[g]);
            off += p.dim;
        }
        m.gen_act.push_back(std::move(act));
    }
    bool all_std = true;
    for (const auto& p : parts) all_std &= p.is_std_proj();
    if (all_std) {
        int off = 0;
        for (const auto& p : parts) {
            for (StdSummand s : p.std_proj) {
                s.offset += off;
                m.std_proj.push_back(s);
            }
            off += p.dim;
        }
    }
    return m;
}

inline Module zero_module(const AlgebraRef& a) {
    Module m;
    m.alg = a;
    m.dim = 0;
    for (size_t g = 0; g < a->generators.size(); ++g) m.gen_act.emplace_back(0, 0, a->field);
    return m;
}

// Dual: plain m over A gives m^* over A^op; a (B,A)-bimodule gives an
// (A,B)-bimodule over env(A, B).  (a f)(x) = f(x a) etc.
inline Module dual_module(const Module& m) {
    Module d;
    d.dim = m.dim;
    if (m.alg->env) {
        const EnvelopeInfo& e = *m.alg->env;
        d.alg = envelope(e.right_base, e.left);
        const int gl = e.gens_left_count;
        const int gr = (int)m.alg->generators.size() - gl;
        for (int g = 0; g < gr; ++g) d.gen_act.push_back(m.gen_act[gl + g].transpose());
        for (int g = 0; g < gl; ++g) d.gen_act.push_back(m.gen_act[g].transpose());
    } else {
        d.alg = opposite(m.alg);
        for (const auto& a : m.gen_act) d.gen_act.push_back(a.transpose());
    }
    return d;
}

// Reinterpret a (B,A)-bimodule as an (A^op, B^op)-bimodule.
inline Module swap_sides(const Module& m) {
    if (!m.alg->env) throw error("swap_sides: not a bimodule");
    const EnvelopeInfo& e = *m.alg->env;
    Module s;
    s.alg = envelope(opposite(e.right_base), opposite(e.left));
    s.dim = m.dim;
    const int gl = e.gens_left_count;
    const int gr = (int)m.alg->generators.size() - gl;
    for (int g = 0; g < gr; ++g) s.gen_act.push_back(m.gen_act[gl + g]);
    for (int g = 0; g < gl; ++g) s.gen_act.push_back(m.gen_act[g]);
    return s;
}

// ------------------------------------------------------------------- hom

namespace detail {

struct PeirceBlocks {
    std::vector<MatrixE> basis;          // column bases, jointly spanning the module
    std::vector<std::uint64_t> pattern;  // image bit per accepted idempotent
};

// Refine the module along a family of commuting idempotent generator actions.
inline std::optional<PeirceBlocks> peirce_blocks(const Module& m, const std::vector<int>& idem) {
    PeirceBlocks out;
    out.basis.push_back(MatrixE::identity(m.dim, m.alg->field));
    out.pattern.push_back(0);
    for (size_t t = 0; t < idem.size(); ++t) {
        const MatrixE& act = m.gen_act[idem[t]];
        PeirceBlocks next;
        for (size_t s = 0; s < out.basis.size(); ++s) {
            const MatrixE& b = out.basis[s];
            auto r = solve_matrix(b, act * b);  // restriction to the invariant block
            if (!r) return std::nullopt;
            MatrixE img = image_basis(*r), ker = kernel_basis(*r);
            if (img.cols() + ker.cols() != b.cols()) return std::nullopt;
            if (img.cols() > 0) {
                next.basis.push_back(b * img);
                next.pattern.push_back(out.pattern[s] | (std::uint64_t{1} << t));
            }
            if (ker.cols() > 0) {
                next.basis.push_back(b * ker);
                next.pattern.push_back(out.pattern[s]);
            }
        }
        out = std::move(next);
    }
    return out;
}

// A hom must match the joint eigenspaces of the idempotent generators, so it
// is block diagonal in adapted coordinates; solving there shrinks the system
// by roughly the square of the number of vertices.
inline std::optional<std::vector<MatrixE>> hom_space_blocked(const Module& x, const Module& y) {
    const AlgebraRef& a = x.alg;
    const FieldSpec f = a->field;
    if ((long long)x.dim * (long long)y.dim <= 64) return std::nullopt;

    std::vector<int> idem;
    for (int g = 0; g < (int)a->generators.size() && (int)idem.size() < 64; ++g) {
        if (g >= (int)a->gen_semisimple.size() || !a->gen_semisimple[g]) continue;
        const MatrixE &xg = x.gen_act[g], &yg = y.gen_act[g];
        if (!(xg * xg == xg) || !(yg * yg == yg)) continue;
        bool commutes = true;
        for (int h : idem)
            if (!(xg * x.gen_act[h] == x.gen_act[h] * xg) ||
                !(yg * y.gen_act[h] == y.gen_act[h] * yg)) {
                commutes = false;
                break;
            }
        if (commutes) idem.push_back(g);
    }
    if (idem.empty()) return std::nullopt;

    auto bx = peirce_blocks(x, idem), by = peirce_blocks(y, idem);
    if (!bx || !by) return std::nullopt;
    if (bx->basis.size() <= 1 && by->basis.size() <= 1) return std::nullopt;

    MatrixE u(x.dim, x.dim, f), v(y.dim, y.dim, f);
    std::vector<std::uint64_t> xpat(x.dim), ypat(y.dim);
    int col = 0;
    for (size_t s = 0; s < bx->basis.size(); ++s)
        for (int j = 0; j < bx->basis[s].cols(); ++j, ++col) {
            u.set_col(col, bx->basis[s].col(j));
            xpat[col] = bx->pattern[s];
        }
    if (col != x.dim) return std::nullopt;
    col = 0;
    for (size_t s = 0; s < by->basis.size(); ++s)
        for (int j = 0; j < by->basis[s].cols(); ++j, ++col) {
            v.set_col(col, by->basis[s].col(j));
            ypat[col] = by->pattern[s];
        }
    if (col != y.dim) return std::nullopt;
    auto ui = inverse(u), vi = inverse(v);
    if (!ui || !vi) return std::nullopt;

    std::vector<int> vid((size_t)x.dim * y.dim, -1);
    int nvars = 0;
    for (int r = 0; r < y.dim; ++r)
        for (int c = 0; c < x.dim; ++c)
            if (ypat[r] == xpat[c]) vid[(size_t)r * x.dim + c] = nvars++;
    if (nvars == 0) return std::vector<MatrixE>{};

    // constraints from the remaining generators, in adapted coordinates; the
    // accepted idempotents are exactly captured by the variable support
    std::vector<Vec> rows;
    for (int g = 0; g < (int)a->generators.size(); ++g) {
        if (std::find(idem.begin(), idem.end(), g) != idem.end()) continue;
        MatrixE xg = (*ui) * x.gen_act[g] * u;
        MatrixE yg = (*vi) * y.gen_act[g] * v;
        for (int r = 0; r < y.dim; ++r)
            for (int c = 0; c < x.dim; ++c) {
                Vec row = zero_vec(nvars, f);
                bool any = false;
                for (int k = 0; k < x.dim; ++k) {
                    int id = vid[(size_t)r * x.dim + k];
                    if (id < 0 || xg.at(k, c).is_zero()) continue;
                    row[id] += xg.at(k, c);
                    any = true;
                }
                for (int k = 0; k < y.dim; ++k) {
                    int id = vid[(size_t)k * x.dim + c];
                    if (id < 0 || yg.at(r, k).is_zero()) continue;
                    row[id] -= yg.at(r, k);
                    any = true;
                }
                if (any) rows.push_back(std::move(row));
            }
    }
    MatrixE sys((int)rows.size(), nvars, f);
    for (int i = 0; i < (int)rows.size(); ++i)
        for (int j = 0; j < nvars; ++j) sys.at(i, j) = rows[i][j];
    MatrixE ker = kernel_basis(sys);

    std::vector<MatrixE> out;
    for (int j = 0; j < ker.cols(); ++j) {
        MatrixE fp(y.dim, x.dim, f);
        for (int r = 0; r < y.dim; ++r)
            for (int c = 0; c < x.dim; ++c) {
                int id = vid[(size_t)r * x.dim + c];
                if (id >= 0) fp.at(r, c) = ker.at(id, j);
            }
        out.push_back(v * fp * (*ui));
    }
    return out;
}

}  // namespace detail

// Basis of Hom_Λ(x, y) as matrices (columns act on x-coordinates).
inline std::vector<MatrixE> hom_space(const Module& x, const Module& y) {
    check_same_algebra(x, y, "hom_space");
    const FieldSpec f = x.alg->field;
    const int nm = x.dim * y.dim;
    if (nm == 0) return {};
    if (auto fast = detail::hom_space_blocked(x, y)) return std::move(*fast);
    const int ngen = (int)x.alg->generators.size();
    MatrixE sys(ngen * nm, nm, f);
    // unknown F (y.dim x x.dim), vectorized row-major: F_{ij} at i*x.dim+j.
    // Constraint per generator g: F act_x(g) - act_y(g) F = 0.
    for (int g = 0; g < ngen; ++g) {
        const MatrixE& mx = x.gen_act[g];
        const MatrixE& my = y.gen_act[g];
        for (int i = 0; i < y.dim; ++i)
            for (int j = 0; j < x.dim; ++j) {
                int row = g * nm + i * x.dim + j;
                for (int k = 0; k < x.dim; ++k)
                    if (!mx.at(k, j).is_zero()) sys.at(row, i * x.dim + k) += mx.at(k, j);
                for (int k = 0; k < y.dim; ++k)
                    if (!my.at(i, k).is_zero()) sys.at(row, k * x.dim + j) -= my.at(i, k);
            }
    }
    MatrixE ker = kernel_basis(sys);
    std::vector<MatrixE> out;
    for (int c = 0; c < ker.cols(); ++c) {
        MatrixE F(y.dim, x.dim, f);
        for (int i = 0; i < y.dim; ++i)
            for (int j = 0; j < x.dim; ++j) F.at(i, j) = ker.at(i * x.dim + j, c);
        out.push_back(std::move(F));
    }
    return out;
}

inline bool is_module_hom(const Module& x, const Module& y, const MatrixE& F) {
    if (F.rows() != y.dim || F.cols() != x.dim) return false;
    for (size_t g = 0; g < x.gen_act.size(); ++g)
        if (F * x.gen_act[g] != y.gen_act[g] * F) return false;
    return true;
}

// ------------------------------------------------------- sub/quotient/top

inline Module submodule(const Module& m, const Subspace& s) {
    Module r;
    r.alg = m.alg;
    r.dim = s.dim();
    for (const auto& a : m.gen_act) r.gen_act.push_back(restrict_matrix(a, s));
    return r;
}

struct QuotientData {
    Module q;
    Subspace sub;            // the subspace quotiented out
    std::vector<int> comp;   // complement coordinate positions in the ambient

    Vec project(const Vec& full) const {
        Vec red = sub.reduce(full);
        Vec out;
        out.reserve(comp.size());
        for (int c : comp) out.push_back(red[c]);
        return out;
    }
    Vec lift(int k, FieldSpec f, int ambient) const { return unit_vec(ambient, comp[k], f); }
};

inline QuotientData quotient_module(const Module& m, const Subspace& s) {
    QuotientData qd;
    qd.sub = s;
    std::vector<bool> is_pivot(m.dim, false);
    for (int p : s.pivots()) is_pivot[p] = true;
    for (int c = 0; c < m.dim; ++c)
        if (!is_pivot[c]) qd.comp.push_back(c);
    qd.q.alg = m.alg;
    qd.q.dim = (int)qd.comp.size();
    for (const auto& a : m.gen_act) {
        MatrixE act(qd.q.dim, qd.q.dim, m.alg->field);
        for (int k = 0; k < qd.q.dim; ++k)
            act.set_col(k, qd.project(mat_vec(a, unit_vec(m.dim, qd.comp[k], m.alg->field))));
        qd.q.gen_act.push_back(std::move(act));
    }
    return qd;
}

// rad * M = sum of images of the radical generators (see algebra.hpp).
inline Subspace radical_subspace(const Module& m) {
    BimodView v(m);
    std::vector<Vec> span;
    auto absorb = [&](const MatrixE& act) {
        for (int c = 0; c < m.dim; ++c) {
            Vec w = act.col(c);
            if (!vec_is_zero(w)) span.push_back(std::move(w));
        }
    };
    if (m.alg->env) {
        for (const auto& g : m.alg->env->left->radical_generators) absorb(v.left_matrix(g));
        for (const auto& g : m.alg->env->right_base->radical_generators)
            absorb(v.right_matrix(g));
    } else {
        for (const auto& g : m.alg->radical_generators) absorb(act_element_matrix(m, g));
    }
    MatrixE sp(m.dim, (int)span.size(), m.alg->field);
    for (int j = 0; j < (int)span.size(); ++j) sp.set_col(j, span[j]);
    return Subspace::from_span(sp);
}

inline Module radical_of(const Module& m) { return submodule(m, radical_subspace(m)); }

inline QuotientData top_of(const Module& m) { return quotient_module(m, radical_subspace(m)); }

// Module hom from a standard projective sum determined by generator images:
// column for summand basis vector λ (an element of Λ e_s) is λ * image_s.
inline MatrixE hom_from_generator_images(const Module& p, const Module& target,
                                         const std::vector<Vec>& images) {
    if (!p.is_std_proj()) throw error("hom_from_generator_images: untagged projective");
    if (images.size() != p.std_proj.size()) throw error("hom_from_generator_images: arity");
    MatrixE F(target.dim, p.dim, target.alg->field);
    for (size_t s = 0; s < p.std_proj.size(); ++s) {
        MatrixE basis = std_projective_basis(p.alg, p.std_proj[s].idem);
        if (basis.cols() != p.std_proj[s].dim) throw error("hom_from_generator_images: basis");
        for (int j = 0; j < basis.cols(); ++j)
            F.set_col(p.std_proj[s].offset + j,
                      act_element_vec(target, basis.col(j), images[s]));
    }
    return F;
}

struct CoverData {
    Module p;        // standard projective sum
    MatrixE map;     // p -> m, surjective with superfluous kernel
};

inline CoverData projective_cover(const Module& m) {
    QuotientData top = top_of(m);
    const FieldSpec f = m.alg->field;
    std::vector<Module> parts;
    std::vector<Vec> images;
    for (int i = 0; i < m.alg->n_idem(); ++i) {
        const Vec& e = m.alg->idempotents[i];
        // slice e_i * top
        MatrixE slice_act = act_element_matrix(top.q, e);
        MatrixE slice = image_basis(slice_act);
        for (int c = 0; c < slice.cols(); ++c) {
            // lift the slice vector to m and force it into e_i * m
            Vec lift = zero_vec(m.dim, f);
            Vec tv = slice.col(c);
            for (int k = 0; k < top.q.dim; ++k) lift[top.comp[k]] = tv[k];
            lift = act_element_vec(m, e, lift);
            parts.push_back(projective_module(m.alg, i));
            images.push_back(std::move(lift));
        }
    }
    if (parts.empty()) {
        return {zero_module(m.alg), MatrixE(m.dim, 0, f)};
    }
    Module p = direct_sum(parts);
    CoverData cd{std::move(p), MatrixE(0, 0, f)};
    cd.map = hom_from_generator_images(cd.p, m, images);
    return cd;
}

// ------------------------------------------------------- balanced tensor

struct TensorRealization {
    Module result;
    AlgebraRef mid;
    std::vector<Subspace> xv, yv;   // X e_v and e_v Y bases per idempotent
    std::vector<int> offset;        // V0 block offsets
    int v0_dim = 0;
    Subspace relations;             // subspace W of V0
    std::vector<int> comp;          // complement coordinates: result basis

    Vec project(const Vec& v0) const {
        Vec red = relations.reduce(v0);
        Vec out;
        out.reserve(comp.size());
        for (int c : comp) out.push_back(red[c]);
        return out;
    }

    // image of a pure tensor x (x) y in the realization
    Vec pure_tensor(const BimodView& x, const BimodView& y, const Vec& vx, const Vec& vy) const {
        const FieldSpec f = result.alg ? result.alg->field : mid->field;
        Vec v0 = zero_vec(v0_dim, f);
        for (int v = 0; v < (int)xv.size(); ++v) {
            if (xv[v].dim() == 0 || yv[v].dim() == 0) continue;
            Vec px = xv[v].coords(x.right_act(mid->idempotents[v], vx));
            Vec py = yv[v].coords(y.left_act(mid->idempotents[v], vy));
            for (int i = 0; i < (int)px.size(); ++i) {
                if (px[i].is_zero()) continue;
                for (int j = 0; j < (int)py.size(); ++j)
                    if (!py[j].is_zero())
                        v0[offset[v] + i * (int)py.size() + j] += px[i] * py[j];
            }
        }
        return project(v0);
    }
};

// x (x)_mid y: x over env(B, mid), y over env(mid, C) or plain over mid.
// Result over env(B, C) (or plain over B when y is plain).
inline TensorRealization tensor_over(const AlgebraRef& mid, const Module& x, const Module& y) {
    if (!x.alg->env || !same_algebra(x.alg->env->right_base, mid))
        throw error("tensor_over: x is not a right module over the middle algebra");
    const bool y_env = y.alg->env.has_value();
    if (y_env ? !same_algebra(y.alg->env->left, mid) : !same_algebra(y.alg, mid))
        throw error("tensor_over: y is not a left module over the middle algebra");
    const FieldSpec f = mid->field;
    BimodView vx(x), vy(y);
    TensorRealization t;
    t.mid = mid;
    const int nv = mid->n_idem();
    for (int v = 0; v < nv; ++v) {
        t.offset.push_back(t.v0_dim);
        Subspace sx = Subspace::from_span(image_basis(vx.right_matrix(mid->idempotents[v])));
        Subspace sy = Subspace::from_span(image_basis(vy.left_matrix(mid->idempotents[v])));
        t.v0_dim += sx.dim() * sy.dim();
        t.xv.push_back(std::move(sx));
        t.yv.push_back(std::move(sy));
    }

    // balancing relations per non-semisimple generator a of mid:
    // for x in X_w, y in Y_u:  [x (a e_u)] (x) y  -  x (x) [(e_w a) y]
    std::vector<Vec> rels;
    for (size_t gi = 0; gi < mid->generators.size(); ++gi) {
        if (mid->gen_semisimple[gi]) continue;
        const Vec& a = mid->generators[gi];
        for (int u = 0; u < nv; ++u) {
            if (t.yv[u].dim() == 0) continue;
            Vec ae = mid->mul(a, mid->idempotents[u]);
            // right multiplication by ae on x lands in X_u
            MatrixE xmove(t.xv[u].dim(), x.dim, f);
            bool xzero = vec_is_zero(ae);
            if (!xzero) {
                MatrixE full = vx.right_matrix(ae);
                for (int c = 0; c < x.dim; ++c)
                    xmove.set_col(c, t.xv[u].coords(full.col(c)));
                xzero = xmove.is_zero();
            }
            for (int w = 0; w < nv; ++w) {
                if (t.xv[w].dim() == 0) continue;
                Vec ea = mid->mul(mid->idempotents[w], a);
                MatrixE ymove(t.yv[w].dim(), t.yv[u].dim(), f);
                bool yzero = vec_is_zero(ea);
                if (!yzero) {
                    for (int c = 0; c < t.yv[u].dim(); ++c)
                        ymove.set_col(c, t.yv[w].coords(vy.left_act(ea, t.yv[u].basis().col(c))));
                    yzero = ymove.is_zero();
                }
                if (xzero && yzero) continue;
                for (int i = 0; i < t.xv[w].dim(); ++i) {
                    Vec xw = t.xv[w].basis().col(i);
                    Vec xmoved;
                    if (!xzero) xmoved = mat_vec(xmove, xw);
                    for (int j = 0; j < t.yv[u].dim(); ++j) {
                        Vec rel = zero_vec(t.v0_dim, f);
                        bool nonzero = false;
                        if (!xzero)
                            for (int k = 0; k < t.xv[u].dim(); ++k)
                                if (!xmoved[k].is_zero()) {
                                    rel[t.offset[u] + k * t.yv[u].dim() + j] += xmoved[k];
                                    nonzero = true;
                                }
                        if (!yzero)
                            for (int k = 0; k < t.yv[w].dim(); ++k)
                                if (!ymove.at(k, j).is_zero()) {
                                    rel[t.offset[w] + i * t.yv[w].dim() + k] -= ymove.at(k, j);
                                    nonzero = true;
                                }
                        if (nonzero) rels.push_back(std::move(rel));
                    }
                }
            }
        }
    }
    MatrixE relmat(t.v0_dim, (int)rels.size(), f);
    for (int j = 0; j < (int)rels.size(); ++j) relmat.set_col(j, rels[j]);
    t.relations = Subspace::from_span(relmat);
    {
        std::vector<bool> is_pivot(t.v0_dim, false);
        for (int p : t.relations.pivots()) is_pivot[p] = true;
        for (int c = 0; c < t.v0_dim; ++c)
            if (!is_pivot[c]) t.comp.push_back(c);
    }

    // result algebra and generator actions
    const AlgebraRef& B = x.alg->env->left;
    Module res;
    res.alg = y_env ? envelope(B, y.alg->env->right_base) : B;
    res.dim = (int)t.comp.size();
    const int ngl = (int)B->generators.size();
    const int ngen = y_env ? ngl + (int)y.alg->env->right_base->generators.size() : ngl;
    for (int g = 0; g < ngen; ++g) {
        MatrixE act(res.dim, res.dim, f);
        for (int k = 0; k < res.dim; ++k) {
            // lift: unit vector at complement coordinate comp[k]
            int coord = t.comp[k];
            // locate block
            int blk = 0;
            while (blk + 1 < nv && t.offset[blk + 1] <= coord) ++blk;
            int local = coord - t.offset[blk];
            int yd = t.yv[blk].dim();
            int i = local / yd, j = local % yd;
            Vec img = zero_vec(t.v0_dim, f);
            if (g < ngl) {
                // B acts on the x side within the block
                Vec xvec = mat_vec(x.gen_act[g], t.xv[blk].basis().col(i));
                Vec cx = t.xv[blk].coords(xvec);
                for (int k2 = 0; k2 < t.xv[blk].dim(); ++k2)
                    if (!cx[k2].is_zero()) img[t.offset[blk] + k2 * yd + j] = cx[k2];
            } else {
                // C acts on the y side within the block
                const MatrixE& ya = y.gen_act[y.alg->env->gens_left_count + (g - ngl)];
                Vec yvec = mat_vec(ya, t.yv[blk].basis().col(j));
                Vec cy = t.yv[blk].coords(yvec);
                for (int k2 = 0; k2 < yd; ++k2)
                    if (!cy[k2].is_zero()) img[t.offset[blk] + i * yd + k2] = cy[k2];
            }
            act.set_col(k, t.project(img));
        }
        res.gen_act.push_back(std::move(act));
    }
    t.result = std::move(res);
    return t;
}

// Induced map h (x) 1 : (x (x) y) -> (x' (x) y) between realizations.
inline MatrixE tensor_map_left(const TensorRealization& src, const TensorRealization& dst,
                               const MatrixE& h) {
    const FieldSpec f = src.mid->field;
    MatrixE out((int)dst.comp.size(), (int)src.comp.size(), f);
    const int nv = (int)src.xv.size();
    for (int k = 0; k < (int)src.comp.size(); ++k) {
        int coord = src.comp[k];
        int blk = 0;
        while (blk + 1 < nv && src.offset[blk + 1] <= coord) ++blk;
        int local = coord - src.offset[blk];
        int yd = src.yv[blk].dim();
        int i = local / yd, j = local % yd;
        Vec moved = mat_vec(h, src.xv[blk].basis().col(i));
        Vec cx = dst.xv[blk].coords(moved);
        Vec img = zero_vec(dst.v0_dim, f);
        for (int k2 = 0; k2 < (int)cx.size(); ++k2)
            if (!cx[k2].is_zero()) img[dst.offset[blk] + k2 * yd + j] = cx[k2];
        out.set_col(k, dst.project(img));
    }
    return out;
}

// Induced map 1 (x) h : (x (x) y) -> (x (x) y') between realizations.
inline MatrixE tensor_map_right(const TensorRealization& src, const TensorRealization& dst,
                                const MatrixE& h) {
    const FieldSpec f = src.mid->field;
    MatrixE out((int)dst.comp.size(), (int)src.comp.size(), f);
    const int nv = (int)src.xv.size();
    for (int k = 0; k < (int)src.comp.size(); ++k) {
        int coord = src.comp[k];
        int blk = 0;
        while (blk + 1 < nv && src.offset[blk + 1] <= coord) ++blk;
        int local = coord - src.offset[blk];
        int yd = src.yv[blk].dim();
        int i = local / yd, j = local % yd;
        Vec moved = mat_vec(h, src.yv[blk].basis().col(j));
        Vec cy = dst.yv[blk].coords(moved);
        Vec img = zero_vec(dst.v0_dim, f);
        int ydd = dst.yv[blk].dim();
        for (int k2 = 0; k2 < (int)cy.size(); ++k2)
            if (!cy[k2].is_zero()) img[dst.offset[blk] + i * ydd + k2] = cy[k2];
        out.set_col(k, dst.project(img));
    }
    return out;
}

// --------------------------------------------------------- isomorphism

struct IsoResult {
    enum class Verdict { yes, no, inconclusive } verdict;
    MatrixE witness;  // invertible intertwiner when yes
    std::string reason;

    bool is_yes() const { return verdict == Verdict::yes; }
    bool is_no() const { return verdict == Verdict::no; }
};

inline IsoResult is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 1,
                               int trials = 8) {
    check_same_algebra(m, n, "is_isomorphic");
    const FieldSpec f = m.alg->field;
    if (m.dim != n.dim)
        return {IsoResult::Verdict::no, MatrixE(0, 0, f),
                "dimension mismatch: " + std::to_string(m.dim) + " vs " + std::to_string(n.dim)};
    if (m.dim == 0) return {IsoResult::Verdict::yes, MatrixE(0, 0, f), "both zero"};
    auto hom_mn = hom_space(m, n);
    if (hom_mn.empty())
        return {IsoResult::Verdict::no, MatrixE(0, 0, f), "no nonzero homomorphisms"};
    Rng rng(seed);
    const std::int64_t bound = 16;
    for (int t = 0; t < trials; ++t) {
        MatrixE cand(n.dim, m.dim, f);
        for (const auto& h : hom_mn) {
            Scalar c = Scalar::from_int(rng.int_in(bound), f);
            if (!c.is_zero()) cand = cand + c * h;
        }
        if (inverse(cand)) return {IsoResult::Verdict::yes, std::move(cand), "witness found"};
    }
    // necessary-condition screen for an honest "no"
    auto hom_nm = hom_space(n, m);
    if (hom_mn.size() != hom_nm.size())
        return {IsoResult::Verdict::no, MatrixE(0, 0, f),
                "hom-space dimensions differ: " + std::to_string(hom_mn.size()) + " vs " +
                    std::to_string(hom_nm.size())};
    auto end_m = hom_space(m, m);
    auto end_n = hom_space(n, n);
    if (end_m.size() != end_n.size())
        return {IsoResult::Verdict::no, MatrixE(0, 0, f),
                "endomorphism dimensions differ: " + std::to_string(end_m.size()) + " vs " +
                    std::to_string(end_n.size())};
    return {IsoResult::Verdict::inconclusive, MatrixE(0, 0, f),
            "no invertible combination found in " + std::to_string(trials) + " trials"};
}

}  // namespace tilt
