/*
 * Finite-dimensional split basic algebras, given by structure constants
 * on a fixed basis plus distinguished data: unit, a complete set of
 * primitive orthogonal idempotents, a radical basis, and a generating
 * set with per-basis-element words (basis element = coeff * product of
 * generators).  Words let module code store actions for generators only.
 *
 * radical_generators invariant: the set G satisfies
 *   rad = span(G * A) = span(A * G),
 * so rad * M = sum of im(act(g)) over g in G for every left module M.
 * The triangular / path / opposite / envelope constructors guarantee
 * this; generic algebras fall back to G = the whole radical basis.
 */
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace tilt {

using SparseVec = std::vector<std::pair<int, Scalar>>;  // sorted by index

struct Word {
    Scalar coeff;
    std::vector<int> gens;  // product generators[g0] * generators[g1] * ...
};

class Algebra;
using AlgebraRef = std::shared_ptr<const Algebra>;

struct EnvelopeInfo {
    AlgebraRef left;        // B in B (x) A^op
    AlgebraRef right_base;  // A in B (x) A^op
    int gens_left_count;    // generators [0, n) come from B, the rest from A
};

class Algebra {
  public:
    Algebra() = default;
    Algebra(Algebra&&) = default;
    Algebra& operator=(Algebra&&) = default;
    Algebra(const Algebra& o)
        : field(o.field), name(o.name), dim(o.dim), labels(o.labels), mult(o.mult),
          unit(o.unit), idempotents(o.idempotents), radical_basis(o.radical_basis),
          radical_generators(o.radical_generators), generators(o.generators),
          gen_semisimple(o.gen_semisimple), words(o.words), env(o.env) {}
    Algebra& operator=(const Algebra& o) {
        if (this != &o) *this = Algebra(o);
        return *this;
    }

    FieldSpec field;
    std::string name;
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<SparseVec>> mult;  // mult[i][j] = b_i * b_j
    Vec unit;
    std::vector<Vec> idempotents;
    std::vector<Vec> radical_basis;
    std::vector<Vec> radical_generators;
    std::vector<Vec> generators;
    std::vector<bool> gen_semisimple;  // generator lies in span(idempotents)
    std::vector<Word> words;
    std::optional<EnvelopeInfo> env;

    int n_idem() const { return (int)idempotents.size(); }

    Vec mul(const Vec& x, const Vec& y) const {
        Vec r = zero_vec(dim, field);
        for (int i = 0; i < dim; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim; ++j) {
                if (y[j].is_zero()) continue;
                Scalar c = x[i] * y[j];
                for (const auto& [k, s] : mult[i][j]) r[k] += c * s;
            }
        }
        return r;
    }

    // L_v: x -> v * x on coordinates
    MatrixE left_mult(const Vec& v) const {
        MatrixE m(dim, dim, field);
        for (int j = 0; j < dim; ++j) {
            for (int i = 0; i < dim; ++i) {
                if (v[i].is_zero()) continue;
                for (const auto& [k, s] : mult[i][j]) m.at(k, j) += v[i] * s;
            }
        }
        return m;
    }

    // R_v: x -> x * v
    MatrixE right_mult(const Vec& v) const {
        MatrixE m(dim, dim, field);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                if (v[j].is_zero()) continue;
                for (const auto& [k, s] : mult[i][j]) m.at(k, i) += v[j] * s;
            }
        }
        return m;
    }

    Vec basis_vec(int i) const { return unit_vec(dim, i, field); }

    // Coefficients of v along the idempotents modulo the radical.
    Vec semisimple_coords(const Vec& v) const {
        ensure_semisimple_solver();
        Vec full = mat_vec(*ss_solver_, v);
        return Vec(full.begin(), full.begin() + n_idem());
    }

  private:
    void ensure_semisimple_solver() const {
        if (ss_solver_) return;
        MatrixE basis(dim, dim, field);
        int c = 0;
        for (const auto& e : idempotents) basis.set_col(c++, e);
        for (const auto& r : radical_basis) basis.set_col(c++, r);
        if (c != dim) throw error("algebra: idempotents + radical do not span");
        auto inv = inverse(basis);
        if (!inv) throw error("algebra: idempotents + radical are dependent");
        ss_solver_ = std::make_unique<MatrixE>(std::move(*inv));
    }

    mutable std::unique_ptr<MatrixE> ss_solver_;
};

namespace detail {

inline SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (int i = 0; i < (int)v.size(); ++i)
        if (!v[i].is_zero()) s.emplace_back(i, v[i]);
    return s;
}

inline void mark_semisimple_gens(Algebra& a) {
    MatrixE idem(a.dim, a.n_idem(), a.field);
    for (int j = 0; j < a.n_idem(); ++j) idem.set_col(j, a.idempotents[j]);
    Subspace span = Subspace::from_span(idem);
    a.gen_semisimple.clear();
    for (const auto& g : a.generators) a.gen_semisimple.push_back(span.contains(g));
}

}  // namespace detail

// Upper triangular n x n matrices.  Basis e_ij (i <= j, 0-based), ordered
// row-major; e_ij * e_kl = [j == k] e_il.
inline AlgebraRef triangular(int n, FieldSpec f) {
    if (n < 1) throw error("triangular: n must be >= 1");
    auto a = std::make_shared<Algebra>();
    a->field = f;
    a->name = "triangular(" + std::to_string(n) + ")";
    std::vector<std::pair<int, int>> basis;
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            index[{i, j}] = (int)basis.size();
            basis.emplace_back(i, j);
        }
    a->dim = (int)basis.size();
    for (auto [i, j] : basis)
        a->labels.push_back("e_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    a->mult.assign(a->dim, std::vector<SparseVec>(a->dim));
    for (int p = 0; p < a->dim; ++p)
        for (int q = 0; q < a->dim; ++q) {
            auto [i, j] = basis[p];
            auto [k, l] = basis[q];
            if (j == k) a->mult[p][q].emplace_back(index[{i, l}], Scalar::one(f));
        }
    a->unit = zero_vec(a->dim, f);
    for (int i = 0; i < n; ++i) a->unit[index[{i, i}]] = Scalar::one(f);
    for (int i = 0; i < n; ++i) a->idempotents.push_back(a->basis_vec(index[{i, i}]));
    for (auto [i, j] : basis)
        if (i != j) a->radical_basis.push_back(a->basis_vec(index[{i, j}]));
    for (int i = 0; i + 1 < n; ++i)
        a->radical_generators.push_back(a->basis_vec(index[{i, i + 1}]));
    // generators: idempotents then superdiagonal arrows
    for (int i = 0; i < n; ++i) a->generators.push_back(a->basis_vec(index[{i, i}]));
    for (int i = 0; i + 1 < n; ++i) a->generators.push_back(a->basis_vec(index[{i, i + 1}]));
    a->words.resize(a->dim);
    for (int p = 0; p < a->dim; ++p) {
        auto [i, j] = basis[p];
        Word w{Scalar::one(f), {}};
        if (i == j) {
            w.gens = {i};
        } else {
            // e_ij = e_{i,i+1} * e_{i+1,i+2} * ... * e_{j-1,j}
            for (int t = i; t < j; ++t) w.gens.push_back(n + t);
        }
        a->words[p] = std::move(w);
    }
    detail::mark_semisimple_gens(*a);
    return a;
}

inline AlgebraRef field_algebra(FieldSpec f) { return triangular(1, f); }

struct QuiverSpec {
    int vertices = 0;
    std::vector<std::pair<int, int>> arrows;  // (source, target), 0-based
    struct Relation {
        // sum of coeff * path, path = arrow indices in travel order
        std::vector<std::pair<Scalar, std::vector<int>>> terms;
    };
    std::vector<Relation> relations;
};

namespace detail {

struct Path {
    int src, tgt;
    std::vector<int> travel;  // arrow indices, first leaves src
};

inline bool quiver_acyclic(const QuiverSpec& q) {
    std::vector<int> state(q.vertices, 0);
    std::vector<std::vector<int>> out(q.vertices);
    for (auto [s, t] : q.arrows) out[s].push_back(t);
    // iterative DFS, state: 0 unseen, 1 on stack, 2 done
    for (int start = 0; start < q.vertices; ++start) {
        if (state[start] != 0) continue;
        std::vector<std::pair<int, size_t>> stack{{start, 0}};
        state[start] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < out[v].size()) {
                int w = out[v][i++];
                if (state[w] == 1) return false;
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

}  // namespace detail

// Path algebra of a finite acyclic quiver modulo admissible relations.
// Multiplication follows matrix-unit composition: p * q = "first q, then q's
// target feeds p's source"; a path from j to i behaves like e_ij.
inline AlgebraRef path_algebra(const QuiverSpec& quiver, FieldSpec f) {
    if (quiver.vertices < 1) throw error("path_algebra: need at least one vertex");
    for (auto [s, t] : quiver.arrows)
        if (s < 0 || s >= quiver.vertices || t < 0 || t >= quiver.vertices)
            throw error("path_algebra: arrow endpoint out of range");
    if (!detail::quiver_acyclic(quiver)) throw error("path_algebra: quiver has a cycle");

    using detail::Path;
    std::vector<Path> paths;
    std::map<std::vector<int>, int> by_travel;  // non-trivial paths
    for (int v = 0; v < quiver.vertices; ++v) paths.push_back({v, v, {}});
    {
        size_t lo = 0;
        while (lo < paths.size()) {
            size_t hi = paths.size();
            for (size_t i = lo; i < hi; ++i)
                for (int a = 0; a < (int)quiver.arrows.size(); ++a)
                    if (quiver.arrows[a].first == paths[i].tgt) {
                        Path ext = paths[i];
                        ext.travel.push_back(a);
                        ext.tgt = quiver.arrows[a].second;
                        by_travel[ext.travel] = (int)paths.size();
                        paths.push_back(std::move(ext));
                    }
            lo = hi;
        }
    }
    const int npaths = (int)paths.size();
    auto trivial = [&](int v) { return v; };
    auto compose = [&](int p, int q) -> int {
        // p * q, valid when src(p) == tgt(q)
        if (paths[p].src != paths[q].tgt) return -1;
        if (paths[p].travel.empty()) return q;
        if (paths[q].travel.empty()) return p;
        std::vector<int> travel = paths[q].travel;
        travel.insert(travel.end(), paths[p].travel.begin(), paths[p].travel.end());
        return by_travel.at(travel);
    };

    // Relation ideal inside the path space.
    std::vector<Vec> ideal_span;
    for (const auto& rel : quiver.relations) {
        if (rel.terms.empty()) continue;
        int rs = -1, rt = -1;
        for (const auto& [c, travel] : rel.terms) {
            if (travel.size() < 2) throw error("path_algebra: relation path shorter than 2");
            auto it = by_travel.find(travel);
            if (it == by_travel.end()) throw error("path_algebra: relation path does not exist");
            const Path& p = paths[it->second];
            if (rs < 0) {
                rs = p.src;
                rt = p.tgt;
            } else if (rs != p.src || rt != p.tgt) {
                throw error("path_algebra: relation terms are not parallel");
            }
        }
        Vec base = zero_vec(npaths, f);
        for (const auto& [c, travel] : rel.terms) base[by_travel.at(travel)] += c;
        for (int u = 0; u < npaths; ++u) {
            if (paths[u].src != rt) continue;
            for (int w = 0; w < npaths; ++w) {
                if (paths[w].tgt != rs) continue;
                Vec v = zero_vec(npaths, f);
                bool nonzero = false;
                for (int t = 0; t < npaths; ++t) {
                    if (base[t].is_zero()) continue;
                    int uc = compose(u, compose(t, w));
                    if (uc >= 0) {
                        v[uc] += base[t];
                        nonzero = true;
                    }
                }
                if (nonzero) ideal_span.push_back(std::move(v));
            }
        }
    }

    std::vector<int> basis_paths;        // surviving path indices
    std::vector<int> path_to_basis(npaths, -1);
    MatrixE reducer(0, 0, f);
    std::vector<int> red_pivots;
    if (!ideal_span.empty()) {
        MatrixE span(npaths, (int)ideal_span.size(), f);
        for (int j = 0; j < (int)ideal_span.size(); ++j) span.set_col(j, ideal_span[j]);
        Rref rr = rref(span.transpose());
        reducer = std::move(rr.r);
        red_pivots = std::move(rr.pivots);
    }
    {
        std::vector<bool> is_pivot(npaths, false);
        for (int c : red_pivots) is_pivot[c] = true;
        for (int t = 0; t < npaths; ++t)
            if (!is_pivot[t]) {
                path_to_basis[t] = (int)basis_paths.size();
                basis_paths.push_back(t);
            }
    }
    // reduce a path-space vector modulo the ideal, re-coordinatized on basis paths
    auto reduce = [&](Vec v) {
        for (int i = 0; i < (int)red_pivots.size(); ++i) {
            Scalar c = v[red_pivots[i]];
            if (c.is_zero()) continue;
            for (int j = 0; j < npaths; ++j) {
                const Scalar& r = reducer.at(i, j);
                if (!r.is_zero()) v[j] -= c * r;
            }
        }
        SparseVec out;
        for (int t = 0; t < npaths; ++t)
            if (!v[t].is_zero()) out.emplace_back(path_to_basis[t], v[t]);
        return out;
    };

    auto a = std::make_shared<Algebra>();
    a->field = f;
    a->name = "path_algebra(v=" + std::to_string(quiver.vertices) +
              ",a=" + std::to_string(quiver.arrows.size()) +
              (quiver.relations.empty() ? "" : ",rel=" + std::to_string(quiver.relations.size())) +
              ")";
    a->dim = (int)basis_paths.size();
    for (int b : basis_paths) {
        const Path& p = paths[b];
        std::string l;
        if (p.travel.empty()) {
            l = "e" + std::to_string(p.src + 1);
        } else {
            l = "p";
            for (int t : p.travel) l += "_a" + std::to_string(t + 1);
        }
        a->labels.push_back(std::move(l));
    }
    a->mult.assign(a->dim, std::vector<SparseVec>(a->dim));
    for (int i = 0; i < a->dim; ++i)
        for (int j = 0; j < a->dim; ++j) {
            int c = compose(basis_paths[i], basis_paths[j]);
            if (c < 0) continue;
            Vec v = zero_vec(npaths, f);
            v[c] = Scalar::one(f);
            a->mult[i][j] = reduce(std::move(v));
        }
    a->unit = zero_vec(a->dim, f);
    for (int v = 0; v < quiver.vertices; ++v) a->unit[path_to_basis[trivial(v)]] = Scalar::one(f);
    for (int v = 0; v < quiver.vertices; ++v)
        a->idempotents.push_back(a->basis_vec(path_to_basis[trivial(v)]));
    for (int i = 0; i < a->dim; ++i)
        if (!paths[basis_paths[i]].travel.empty()) a->radical_basis.push_back(a->basis_vec(i));
    for (int t = 0; t < (int)quiver.arrows.size(); ++t)
        a->radical_generators.push_back(a->basis_vec(path_to_basis[by_travel.at({t})]));
    for (int v = 0; v < quiver.vertices; ++v)
        a->generators.push_back(a->basis_vec(path_to_basis[trivial(v)]));
    for (int t = 0; t < (int)quiver.arrows.size(); ++t)
        a->generators.push_back(a->basis_vec(path_to_basis[by_travel.at({t})]));
    a->words.resize(a->dim);
    for (int i = 0; i < a->dim; ++i) {
        const Path& p = paths[basis_paths[i]];
        Word w{Scalar::one(f), {}};
        if (p.travel.empty()) {
            w.gens = {p.src};
        } else {
            for (auto it = p.travel.rbegin(); it != p.travel.rend(); ++it)
                w.gens.push_back(quiver.vertices + *it);
        }
        a->words[i] = std::move(w);
    }
    detail::mark_semisimple_gens(*a);
    return a;
}

inline AlgebraRef opposite(const AlgebraRef& a) {
    // memoized; the cache holds the source ref, so its address stays valid
    static std::map<const Algebra*, std::pair<AlgebraRef, AlgebraRef>> cache;
    if (auto it = cache.find(a.get()); it != cache.end()) return it->second.second;
    auto o = std::make_shared<Algebra>();
    o->field = a->field;
    o->name = "op(" + a->name + ")";
    o->dim = a->dim;
    o->labels = a->labels;
    o->mult.assign(a->dim, std::vector<SparseVec>(a->dim));
    for (int i = 0; i < a->dim; ++i)
        for (int j = 0; j < a->dim; ++j) o->mult[i][j] = a->mult[j][i];
    o->unit = a->unit;
    o->idempotents = a->idempotents;
    o->radical_basis = a->radical_basis;
    o->radical_generators = a->radical_generators;
    o->generators = a->generators;
    o->gen_semisimple = a->gen_semisimple;
    o->words.resize(a->dim);
    for (int i = 0; i < a->dim; ++i) {
        Word w = a->words[i];
        std::reverse(w.gens.begin(), w.gens.end());
        o->words[i] = std::move(w);
    }
    cache.emplace(a.get(), std::make_pair(a, o));
    return o;
}

// Enveloping-style tensor: envelope(B, A) = B (x) A^op.  Basis pairs
// (i, j) at index i * dim(A) + j; modules over it are (B, A)-bimodules
// via (b (x) a^op) m = b m a.
inline AlgebraRef envelope(const AlgebraRef& b, const AlgebraRef& a) {
    if (!(b->field == a->field)) throw error("envelope: field mismatch");
    // memoized: the result keeps both inputs alive through EnvelopeInfo, so
    // pointer keys can never be reused by a different algebra
    static std::map<std::pair<const Algebra*, const Algebra*>, AlgebraRef> cache;
    auto key = std::make_pair(b.get(), a.get());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto e = std::make_shared<Algebra>();
    const int nb = b->dim, na = a->dim;
    e->field = a->field;
    e->name = "env(" + b->name + "," + a->name + ")";
    e->dim = nb * na;
    auto idx = [&](int i, int j) { return i * na + j; };
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < na; ++j) e->labels.push_back(b->labels[i] + "(x)" + a->labels[j]);
    e->mult.assign(e->dim, std::vector<SparseVec>(e->dim));
    for (int i1 = 0; i1 < nb; ++i1)
        for (int j1 = 0; j1 < na; ++j1)
            for (int i2 = 0; i2 < nb; ++i2)
                for (int j2 = 0; j2 < na; ++j2) {
                    // (b1 (x) a1^op)(b2 (x) a2^op) = b1 b2 (x) (a2 a1)^op
                    SparseVec& out = e->mult[idx(i1, j1)][idx(i2, j2)];
                    for (const auto& [kb, sb] : b->mult[i1][i2])
                        for (const auto& [ka, sa] : a->mult[j2][j1])
                            out.emplace_back(idx(kb, ka), sb * sa);
                    std::sort(out.begin(), out.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                }
    auto pair_vec = [&](const Vec& vb, const Vec& va) {
        Vec v = zero_vec(e->dim, e->field);
        for (int i = 0; i < nb; ++i) {
            if (vb[i].is_zero()) continue;
            for (int j = 0; j < na; ++j)
                if (!va[j].is_zero()) v[idx(i, j)] = vb[i] * va[j];
        }
        return v;
    };
    e->unit = pair_vec(b->unit, a->unit);
    for (const auto& eb : b->idempotents)
        for (const auto& ea : a->idempotents) e->idempotents.push_back(pair_vec(eb, ea));
    for (const auto& rb : b->radical_basis)
        for (int j = 0; j < na; ++j) e->radical_basis.push_back(pair_vec(rb, a->basis_vec(j)));
    for (const auto& eb : b->idempotents)
        for (const auto& ra : a->radical_basis) e->radical_basis.push_back(pair_vec(eb, ra));
    // rad(B (x) A^op) = radB (x) A^op + B (x) radA^op; the basis above uses
    // that B = span(idempotents) + radB for split basic B.
    for (const auto& g : b->radical_generators)
        e->radical_generators.push_back(pair_vec(g, a->unit));
    for (const auto& g : a->radical_generators)
        e->radical_generators.push_back(pair_vec(b->unit, g));
    for (const auto& g : b->generators) e->generators.push_back(pair_vec(g, a->unit));
    for (const auto& g : a->generators) e->generators.push_back(pair_vec(b->unit, g));
    const int gb = (int)b->generators.size();
    e->words.resize(e->dim);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < na; ++j) {
            Word w{b->words[i].coeff * a->words[j].coeff, {}};
            // b_i (x) a_j^op = (b_i (x) 1) * (1 (x) a_j^op); the right factor
            // reverses because (x y)^op = y^op x^op.
            for (int g : b->words[i].gens) w.gens.push_back(g);
            for (auto it = a->words[j].gens.rbegin(); it != a->words[j].gens.rend(); ++it)
                w.gens.push_back(gb + *it);
            e->words[idx(i, j)] = std::move(w);
        }
    e->env = EnvelopeInfo{b, a, gb};
    detail::mark_semisimple_gens(*e);
    cache.emplace(key, e);
    return e;
}

inline AlgebraRef envelope(const AlgebraRef& a) { return envelope(a, a); }

// Basis of the center: solutions of z b = b z for all generators b.
inline std::vector<Vec> center(const AlgebraRef& a) {
    MatrixE sys((int)a->generators.size() * a->dim, a->dim, a->field);
    int row = 0;
    for (const auto& g : a->generators) {
        MatrixE d = a->left_mult(g) - a->right_mult(g);
        sys.set_block(row, 0, d);
        row += a->dim;
    }
    MatrixE k = kernel_basis(sys);
    std::vector<Vec> out;
    for (int j = 0; j < k.cols(); ++j) out.push_back(k.col(j));
    return out;
}

struct VerifyResult {
    bool ok = true;
    std::string message;
};

inline VerifyResult fail(std::string msg) { return {false, std::move(msg)}; }

// Full presentation check: associativity on every basis triple, unit,
// idempotent axioms, radical is a nilpotent two-sided ideal complementing
// the idempotent span, radical generators generate, words evaluate.
inline VerifyResult verify_presentation(const AlgebraRef& a) {
    const int n = a->dim;
    if ((int)a->mult.size() != n) return fail("mult table has wrong size");
    for (int i = 0; i < n; ++i)
        if ((int)a->mult[i].size() != n) return fail("mult table row " + std::to_string(i));
    // associativity via sparse composition
    auto mul_sparse = [&](const SparseVec& s, int j) {
        SparseVec out;
        std::map<int, Scalar> acc;
        for (const auto& [i, c] : s)
            for (const auto& [k, d] : a->mult[i][j]) {
                auto [it, fresh] = acc.try_emplace(k, c * d);
                if (!fresh) it->second += c * d;
            }
        for (auto& [k, c] : acc)
            if (!c.is_zero()) out.emplace_back(k, c);
        return out;
    };
    auto mul_sparse_left = [&](int i, const SparseVec& s) {
        SparseVec out;
        std::map<int, Scalar> acc;
        for (const auto& [j, c] : s)
            for (const auto& [k, d] : a->mult[i][j]) {
                auto [it, fresh] = acc.try_emplace(k, c * d);
                if (!fresh) it->second += c * d;
            }
        for (auto& [k, c] : acc)
            if (!c.is_zero()) out.emplace_back(k, c);
        return out;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const SparseVec ij = a->mult[i][j];
            for (int k = 0; k < n; ++k) {
                if (mul_sparse(ij, k) != mul_sparse_left(i, a->mult[j][k]))
                    return fail("associativity fails at triple (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }
    for (int i = 0; i < n; ++i) {
        Vec b = a->basis_vec(i);
        if (a->mul(a->unit, b) != b || a->mul(b, a->unit) != b)
            return fail("unit fails on basis element " + std::to_string(i));
    }
    // idempotents: orthogonal, idempotent, sum to unit
    Vec sum = zero_vec(n, a->field);
    for (int u = 0; u < a->n_idem(); ++u) {
        for (int v = 0; v < a->n_idem(); ++v) {
            Vec p = a->mul(a->idempotents[u], a->idempotents[v]);
            Vec expect = u == v ? a->idempotents[u] : zero_vec(n, a->field);
            if (p != expect)
                return fail("idempotent pair (" + std::to_string(u) + "," + std::to_string(v) +
                            ") not orthogonal");
        }
        for (int i = 0; i < n; ++i) sum[i] += a->idempotents[u][i];
    }
    if (sum != a->unit) return fail("idempotents do not sum to the unit");
    // radical: complement of idempotent span, two-sided ideal, nilpotent
    if (a->n_idem() + (int)a->radical_basis.size() != n)
        return fail("idempotents + radical basis have wrong total dimension");
    MatrixE full(n, n, a->field);
    {
        int c = 0;
        for (const auto& e : a->idempotents) full.set_col(c++, e);
        for (const auto& r : a->radical_basis) full.set_col(c++, r);
    }
    if (rank(full) != n) return fail("idempotents + radical do not span");
    MatrixE radmat(n, (int)a->radical_basis.size(), a->field);
    for (int j = 0; j < (int)a->radical_basis.size(); ++j) radmat.set_col(j, a->radical_basis[j]);
    Subspace rad = Subspace::from_span(radmat);
    for (int i = 0; i < n; ++i)
        for (const auto& r : a->radical_basis) {
            if (!rad.contains(a->mul(a->basis_vec(i), r)))
                return fail("radical not a left ideal at basis element " + std::to_string(i));
            if (!rad.contains(a->mul(r, a->basis_vec(i))))
                return fail("radical not a right ideal at basis element " + std::to_string(i));
        }
    {
        std::vector<Vec> power;
        for (const auto& r : a->radical_basis) power.push_back(r);
        int steps = 0;
        while (!power.empty() && steps++ <= n) {
            std::vector<Vec> next;
            for (const auto& x : power)
                for (const auto& r : a->radical_basis) next.push_back(a->mul(x, r));
            MatrixE m(n, (int)next.size(), a->field);
            for (int j = 0; j < (int)next.size(); ++j) m.set_col(j, next[j]);
            Subspace s = Subspace::from_span(m);
            if (s.dim() == 0) break;
            if (steps > n) return fail("radical is not nilpotent");
            power.clear();
            for (int j = 0; j < s.dim(); ++j) power.push_back(s.basis().col(j));
        }
    }
    // radical generators generate: span(G*A) = rad = span(A*G)
    {
        std::vector<Vec> left, right;
        for (const auto& g : a->radical_generators)
            for (int i = 0; i < n; ++i) {
                left.push_back(a->mul(g, a->basis_vec(i)));
                right.push_back(a->mul(a->basis_vec(i), g));
            }
        MatrixE lm(n, (int)left.size(), a->field), rm(n, (int)right.size(), a->field);
        for (int j = 0; j < (int)left.size(); ++j) lm.set_col(j, left[j]);
        for (int j = 0; j < (int)right.size(); ++j) rm.set_col(j, right[j]);
        if (Subspace::from_span(lm).dim() != rad.dim() ||
            Subspace::from_span(rm).dim() != rad.dim())
            return fail("radical generators do not generate the radical");
        for (const auto& g : a->radical_generators)
            if (!rad.contains(g)) return fail("radical generator outside the radical");
    }
    // words evaluate to their basis elements
    for (int i = 0; i < n; ++i) {
        const Word& w = a->words[i];
        if (w.gens.empty()) return fail("empty word for basis element " + std::to_string(i));
        Vec v = a->generators.at(w.gens[0]);
        for (size_t t = 1; t < w.gens.size(); ++t) v = a->mul(v, a->generators.at(w.gens[t]));
        for (auto& s : v) s *= w.coeff;
        if (v != a->basis_vec(i)) return fail("word for basis element " + std::to_string(i));
    }
    return {};
}

inline bool same_algebra(const AlgebraRef& x, const AlgebraRef& y) {
    if (x == y) return true;
    if (!(x->field == y->field) || x->dim != y->dim) return false;
    if (x->unit != y->unit) return false;
    if (x->idempotents != y->idempotents) return false;
    for (int i = 0; i < x->dim; ++i)
        for (int j = 0; j < x->dim; ++j)
            if (x->mult[i][j] != y->mult[i][j]) return false;
    return true;
}

}  // namespace tilt
