#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "tilt/morita.hpp"

using namespace tilt;

namespace {

Scalar small_scalar(Rng& rng, FieldSpec f) { return Scalar::from_int(rng.int_in(3), f); }

// unit lower times unit upper triangular: invertible by construction
MatrixE random_invertible(int n, FieldSpec f, Rng& rng) {
    MatrixE l = MatrixE::identity(n, f), u = MatrixE::identity(n, f);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) l.at(i, j) = small_scalar(rng, f);
        for (int j = i + 1; j < n; ++j) u.at(i, j) = small_scalar(rng, f);
    }
    return l * u;
}

// same module in a scrambled basis (drops any standard-basis tag)
Module conjugate(const Module& m, Rng& rng) {
    if (m.dim == 0) return m;
    MatrixE g = random_invertible(m.dim, m.alg->field, rng);
    MatrixE gi = *inverse(g);
    Module r;
    r.alg = m.alg;
    r.dim = m.dim;
    for (const auto& a : m.gen_act) r.gen_act.push_back(g * a * gi);
    return r;
}

Module random_interval_sum(const AlgebraRef& a, Rng& rng) {
    const int n = a->n_idem();
    std::vector<Module> parts;
    int pieces = 1 + (int)rng.below(2);
    for (int t = 0; t < pieces; ++t) {
        int i = 1 + (int)rng.below((std::uint64_t)n);
        int j = i + (int)rng.below((std::uint64_t)(n - i + 1));
        parts.push_back(interval_module(a, i, j));
    }
    return conjugate(direct_sum(parts), rng);
}

Module random_env_piece(const AlgebraRef& a, Rng& rng) {
    auto e = envelope(a, a);
    Module m;
    switch (rng.below(4)) {
        case 0: m = regular_bimodule(a, e); break;
        case 1: m = dual_regular_bimodule(a, e); break;
        case 2: m = simple_module(e, (int)rng.below((std::uint64_t)e->n_idem())); break;
        default: m = projective_module(e, (int)rng.below((std::uint64_t)e->n_idem()));
    }
    return conjugate(m, rng);
}

Module random_proj_sum(const AlgebraRef& a, Rng& rng) {
    std::vector<Module> parts;
    int pieces = 1 + (int)rng.below(2);
    for (int t = 0; t < pieces; ++t)
        parts.push_back(projective_module(a, (int)rng.below((std::uint64_t)a->n_idem())));
    return conjugate(direct_sum(parts), rng);
}

Module random_env_proj(const AlgebraRef& a, Rng& rng) {
    auto e = envelope(a, a);
    return conjugate(projective_module(e, (int)rng.below((std::uint64_t)e->n_idem())), rng);
}

// A random chain map x -> y: solve the commuting equations over the
// per-degree hom bases and draw a random kernel combination.
ComplexMap random_chain_map(const ComplexRep& x, const ComplexRep& y, Rng& rng) {
    const FieldSpec f = x.alg->field;
    const int lo = std::min(x.lo, y.lo), hi = std::max(x.hi(), y.hi());
    std::vector<std::vector<MatrixE>> hb(hi - lo + 1);
    std::vector<int> off(hi - lo + 2, 0);
    for (int p = lo; p <= hi; ++p) {
        if (x.term_dim(p) > 0 && y.term_dim(p) > 0) hb[p - lo] = hom_space(x.term(p), y.term(p));
        off[p - lo + 1] = off[p - lo] + (int)hb[p - lo].size();
    }
    const int nvars = off[hi - lo + 1];

    std::vector<Vec> rows;
    for (int p = lo; p < hi; ++p) {
        const int xd = x.term_dim(p), yd1 = y.term_dim(p + 1);
        if (xd == 0 || yd1 == 0) continue;
        MatrixE dx = x.d(p), dy = y.d(p);
        for (int r = 0; r < yd1; ++r)
            for (int c = 0; c < xd; ++c) {
                Vec row = zero_vec(nvars, f);
                bool any = false;
                for (int t = 0; t < (int)hb[p - lo].size(); ++t) {
                    Scalar s = Scalar::zero(f);
                    for (int k = 0; k < y.term_dim(p); ++k)
                        s += dy.at(r, k) * hb[p - lo][t].at(k, c);
                    row[off[p - lo] + t] += s;
                    any = any || !s.is_zero();
                }
                for (int t = 0; t < (int)hb[p + 1 - lo].size(); ++t) {
                    Scalar s = Scalar::zero(f);
                    for (int k = 0; k < x.term_dim(p + 1); ++k)
                        s += hb[p + 1 - lo][t].at(r, k) * dx.at(k, c);
                    row[off[p + 1 - lo] + t] -= s;
                    any = any || !s.is_zero();
                }
                if (any) rows.push_back(std::move(row));
            }
    }

    Vec sol = zero_vec(nvars, f);
    if (nvars > 0) {
        MatrixE sys(std::max(1, (int)rows.size()), nvars, f);
        for (int i = 0; i < (int)rows.size(); ++i)
            for (int j = 0; j < nvars; ++j) sys.at(i, j) = rows[i][j];
        MatrixE K = kernel_basis(sys);
        for (int j = 0; j < K.cols(); ++j) {
            Scalar c = small_scalar(rng, f);
            if (c.is_zero()) continue;
            for (int i = 0; i < nvars; ++i) sol[i] += c * K.at(i, j);
        }
        if (vec_is_zero(sol) && K.cols() > 0)
            for (int i = 0; i < nvars; ++i) sol[i] = K.at(i, 0);
    }

    ComplexMap m;
    m.from = x;
    m.to = y;
    m.lo = lo;
    for (int p = lo; p <= hi; ++p) {
        MatrixE fp(y.term_dim(p), x.term_dim(p), f);
        for (int t = 0; t < (int)hb[p - lo].size(); ++t) {
            const Scalar& c = sol[off[p - lo] + t];
            if (!c.is_zero()) fp = fp + c * hb[p - lo][t];
        }
        m.comps.push_back(std::move(fp));
    }
    return m;
}

using PieceGen = std::function<Module()>;

// Build a bounded complex by iterated cones over random chain maps,
// starting from single modules in random degrees.
ComplexRep random_complex(const AlgebraRef& a, Rng& rng, const PieceGen& piece,
                          int max_steps = 2, int dim_cap = 16) {
    ComplexRep x = complex_from_module(piece(), -(int)rng.below(3));
    const int steps = (int)rng.below((std::uint64_t)(max_steps + 1));
    for (int s = 0; s < steps; ++s) {
        int span = x.hi() - x.lo;
        // mostly land inside the occupied range so the connecting map can be nonzero
        int deg = rng.below(4) ? x.lo + (int)rng.below((std::uint64_t)(span + 1))
                               : x.lo - 1 + (int)rng.below((std::uint64_t)(span + 3));
        ComplexRep y = complex_from_module(piece(), deg);
        if (x.total_dim() + y.total_dim() > dim_cap) break;
        x = rng.below(2) ? cone(random_chain_map(y, x, rng)) : cone(random_chain_map(x, y, rng));
        if (rng.below(2)) x = shift(x, 1);
    }
    return x;
}

int cohomology_euler(const ComplexRep& c) {
    int s = 0;
    for (int p = c.lo; p <= c.hi(); ++p) {
        int h = cohomology(c, p).h.dim;
        s += (p % 2 == 0) ? h : -h;
    }
    return s;
}

}  // namespace

TEST_CASE("random complexes: d^2 = 0 and Euler characteristic identities") {
    Rng rng(20260815);
    int cones_checked = 0;
    for (int iter = 0; iter < 200; ++iter) {
        FieldSpec f = (iter % 5 == 4) ? field_fp(101) : field_q();
        bool bimod = iter % 4 == 3;
        auto a = triangular(bimod ? 2 : 2 + (int)(iter % 2), f);
        PieceGen piece = bimod ? PieceGen([&] { return random_env_piece(a, rng); })
                               : PieceGen([&] { return random_interval_sum(a, rng); });
        ComplexRep x = random_complex(a, rng, piece);

        REQUIRE(validate_complex(x).ok);
        REQUIRE(euler_char(x) == cohomology_euler(x));

        if (iter % 2 == 0) {
            ComplexRep y = random_complex(a, rng, piece);
            ComplexMap g = random_chain_map(x, y, rng);
            REQUIRE(validate_map(g).ok);
            ComplexRep c = cone(g);
            REQUIRE(validate_complex(c).ok);
            REQUIRE(euler_char(c) == euler_char(y) - euler_char(x));
            REQUIRE(cohomology_euler(c) == cohomology_euler(y) - cohomology_euler(x));
            ++cones_checked;
        }
    }
    REQUIRE(cones_checked == 100);
}

TEST_CASE("top-degree corner of a tensor product of projective complexes") {
    Rng rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        bool big = iter % 4 == 3;
        auto a = triangular(big ? 3 : 2, field_q());
        PieceGen px = [&] { return random_env_proj(a, rng); };
        PieceGen py = [&] { return random_proj_sum(a, rng); };
        ComplexRep x = random_complex(a, rng, px, big ? 1 : 2, big ? 12 : 10);
        ComplexRep y = random_complex(a, rng, py, 2, 8);
        TensorTotal t = tensor_total(a, x, y);

        Module corner = cohomology(t.c, x.hi() + y.hi()).h;
        Module hx = cohomology(x, x.hi()).h;
        Module hy = cohomology(y, y.hi()).h;
        if (hx.dim == 0 || hy.dim == 0) {
            REQUIRE(corner.dim == 0);
            continue;
        }
        Module expected = tensor_over(a, hx, hy).result;
        REQUIRE(corner.dim == expected.dim);
        if (corner.dim > 0) {
            IsoResult iso = is_isomorphic(corner, expected, 1000 + (std::uint64_t)iter, 24);
            REQUIRE(iso.is_yes());
            REQUIRE(is_module_hom(corner, expected, iso.witness));
            REQUIRE(inverse(iso.witness).has_value());
        }
    }
}

TEST_CASE("the diagonal bimodule is a tensor unit") {
    Rng rng(11);
    for (int iter = 0; iter < 20; ++iter) {
        auto a = triangular(2 + (int)(iter % 2), field_q());
        PieceGen piece = [&] { return random_interval_sum(a, rng); };
        ComplexRep y = random_complex(a, rng, piece, 2, 10);
        ComplexRep u = derived_tensor(a, diagonal_complex(a), y, Side::left).c;
        REQUIRE(degreewise_iso(u, y, 100 + (std::uint64_t)iter, 16).ok);
    }
    // concentrated case with an explicit invertible witness
    for (int iter = 0; iter < 10; ++iter) {
        auto a = triangular(3, field_q());
        Module m = random_interval_sum(a, rng);
        ComplexRep u =
            derived_tensor(a, diagonal_complex(a), complex_from_module(m, 0), Side::left).c;
        ConcentratedIso ci = concentrated_iso(u, m, 0, 200 + (std::uint64_t)iter, 16);
        REQUIRE(ci.holds());
        REQUIRE(is_module_hom(ci.h, m, ci.iso.witness));
        REQUIRE(inverse(ci.iso.witness).has_value());
    }
}

TEST_CASE("duality is an involution on complexes") {
    Rng rng(13);
    for (int iter = 0; iter < 20; ++iter) {
        bool bimod = iter % 3 == 2;
        auto a = triangular(bimod ? 2 : 2 + (int)(iter % 2), field_q());
        PieceGen piece = bimod ? PieceGen([&] { return random_env_piece(a, rng); })
                               : PieceGen([&] { return random_interval_sum(a, rng); });
        ComplexRep x = random_complex(a, rng, piece, 2, 12);
        ComplexRep dd = dual_complex(dual_complex(x));
        REQUIRE(same_algebra(dd.alg, x.alg));
        REQUIRE(dd.lo == x.lo);
        for (int p = x.lo; p <= x.hi(); ++p) REQUIRE(dd.term_dim(p) == x.term_dim(p));
        REQUIRE(degreewise_iso(dd, x, 300 + (std::uint64_t)iter, 16).ok);
    }
}

TEST_CASE("derived tensor does not depend on the resolved side") {
    Rng rng(17);
    for (int iter = 0; iter < 50; ++iter) {
        bool big = iter % 5 == 4;
        auto a = triangular(big ? 3 : 2, field_q());
        PieceGen px = [&] { return random_env_piece(a, rng); };
        PieceGen py = [&] { return random_interval_sum(a, rng); };
        ComplexRep x = random_complex(a, rng, px, big ? 1 : 2, big ? 10 : 12);
        ComplexRep y = random_complex(a, rng, py, big ? 1 : 2, big ? 6 : 10);
        ComplexRep l = derived_tensor(a, x, y, Side::left).c;
        ComplexRep r = derived_tensor(a, x, y, Side::right).c;
        REQUIRE(degreewise_iso(l, r, 400 + (std::uint64_t)iter, 16).ok);
    }
}

TEST_CASE("isomorphism verdicts are sound in both directions") {
    Rng rng(19);
    int yes_seen = 0, no_seen = 0;
    for (int iter = 0; iter < 120; ++iter) {
        auto a = triangular(2 + (int)(iter % 3), field_q());
        Module m = random_interval_sum(a, rng);
        Module n = (iter % 2 == 0) ? conjugate(m, rng) : random_interval_sum(a, rng);

        IsoResult r = is_isomorphic(m, n, 500 + (std::uint64_t)iter, 24);
        if (r.is_yes()) {
            ++yes_seen;
            if (m.dim > 0) {
                REQUIRE(is_module_hom(m, n, r.witness));
                REQUIRE(inverse(r.witness).has_value());
            }
        } else if (r.is_no()) {
            ++no_seen;
            // the only honest grounds for "no": dimension mismatch, an empty
            // hom space, or asymmetric hom/endomorphism counts
            bool justified = m.dim != n.dim || hom_space(m, n).empty() ||
                             hom_space(m, n).size() != hom_space(n, m).size() ||
                             hom_space(m, m).size() != hom_space(n, n).size();
            REQUIRE(justified);
        }
        if (iter % 2 == 0) REQUIRE(r.is_yes());  // conjugate pairs must be recognized
    }
    REQUIRE(yes_seen >= 60);
    REQUIRE(no_seen >= 20);
}
