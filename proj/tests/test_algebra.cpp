#include <catch2/catch_amalgamated.hpp>

#include "tilt/algebra.hpp"

using namespace tilt;

namespace {

QuiverSpec linear_quiver(int n) {
    // arrows point from vertex t+1 to vertex t so that a path from j to i
    // (i <= j) matches the matrix unit e_ij of triangular(n)
    QuiverSpec q;
    q.vertices = n;
    for (int t = n - 2; t >= 0; --t) q.arrows.emplace_back(t + 1, t);
    return q;
}

// dimension of span of pairwise products of two vector lists
int product_span_dim(const AlgebraRef& a, const std::vector<Vec>& xs, const std::vector<Vec>& ys) {
    std::vector<Vec> prods;
    for (const auto& x : xs)
        for (const auto& y : ys) prods.push_back(a->mul(x, y));
    MatrixE m(a->dim, (int)prods.size(), a->field);
    for (int j = 0; j < (int)prods.size(); ++j) m.set_col(j, prods[j]);
    return Subspace::from_span(m).dim();
}

}  // namespace

TEST_CASE("triangular algebra dimensions and radical") {
    auto t2 = triangular(2, field_q());
    REQUIRE(t2->dim == 3);
    REQUIRE(t2->radical_basis.size() == 1);
    REQUIRE(verify_presentation(t2).ok);

    auto t1 = triangular(1, field_q());
    REQUIRE(t1->dim == 1);
    REQUIRE(t1->radical_basis.empty());
    REQUIRE(verify_presentation(t1).ok);

    auto t3 = triangular(3, field_q());
    REQUIRE(t3->dim == 6);
    REQUIRE(t3->radical_basis.size() == 3);
    // radical powers: dim 3, 1, 0
    std::vector<Vec> rad = t3->radical_basis;
    REQUIRE(product_span_dim(t3, rad, rad) == 1);
    std::vector<Vec> rad2 = {t3->mul(rad[0], rad[2])};  // e12 * e23
    REQUIRE(product_span_dim(t3, rad2, rad) == 0);
    REQUIRE(verify_presentation(t3).ok);
}

TEST_CASE("triangular multiplication matches matrix units") {
    auto t2 = triangular(2, field_q());
    // basis order: e11, e12, e22
    Vec e12_e22 = t2->mul(t2->basis_vec(1), t2->basis_vec(2));
    REQUIRE(e12_e22 == t2->basis_vec(1));
    REQUIRE(vec_is_zero(t2->mul(t2->basis_vec(2), t2->basis_vec(1))));
    REQUIRE(t2->mul(t2->basis_vec(0), t2->basis_vec(1)) == t2->basis_vec(1));
}

TEST_CASE("path algebra of linear quivers matches triangular") {
    for (int n = 2; n <= 4; ++n) {
        auto pa = path_algebra(linear_quiver(n), field_q());
        auto tr = triangular(n, field_q());
        REQUIRE(pa->dim == tr->dim);
        REQUIRE(verify_presentation(pa).ok);

        // triangular basis index of e_ij (row major, i <= j)
        auto tr_index = [&](int i, int j) {
            int off = 0;
            for (int r = 0; r < i; ++r) off += n - r;
            return off + (j - i);
        };
        // dictionary: a path with target i and source j corresponds to e_ij;
        // locate the slot of each basis path through its idempotent slices.
        std::vector<int> dict(pa->dim, -1);
        for (int p = 0; p < pa->dim; ++p)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Vec s = pa->mul(pa->idempotents[i],
                                    pa->mul(pa->basis_vec(p), pa->idempotents[j]));
                    if (!vec_is_zero(s)) {
                        REQUIRE(dict[p] == -1);
                        REQUIRE(i <= j);
                        dict[p] = tr_index(i, j);
                    }
                }
        // dict is a bijection
        std::vector<bool> hit(tr->dim, false);
        for (int p = 0; p < pa->dim; ++p) {
            REQUIRE(dict[p] >= 0);
            REQUIRE_FALSE(hit[dict[p]]);
            hit[dict[p]] = true;
        }
        // exhaustive structure-constant comparison under the dictionary
        for (int p = 0; p < pa->dim; ++p)
            for (int q = 0; q < pa->dim; ++q) {
                Vec prod = pa->mul(pa->basis_vec(p), pa->basis_vec(q));
                Vec mapped = zero_vec(tr->dim, field_q());
                for (int t = 0; t < pa->dim; ++t) mapped[dict[t]] = prod[t];
                REQUIRE(mapped == tr->mul(tr->basis_vec(dict[p]), tr->basis_vec(dict[q])));
            }
    }
}

TEST_CASE("single vertex quiver gives the field") {
    QuiverSpec q;
    q.vertices = 1;
    auto a = path_algebra(q, field_q());
    REQUIRE(a->dim == 1);
    REQUIRE(a->radical_basis.empty());
    REQUIRE(verify_presentation(a).ok);
}

TEST_CASE("path algebra rejects cycles and bad relations") {
    QuiverSpec cyc;
    cyc.vertices = 2;
    cyc.arrows = {{0, 1}, {1, 0}};
    REQUIRE_THROWS_AS(path_algebra(cyc, field_q()), error);

    QuiverSpec bad = linear_quiver(3);
    QuiverSpec::Relation r;
    r.terms = {{Scalar::one(field_q()), {0}}};  // single arrow: not admissible
    bad.relations.push_back(r);
    REQUIRE_THROWS_AS(path_algebra(bad, field_q()), error);
}

TEST_CASE("path algebra with a zero relation") {
    // commutative square with both compositions, one relation equating them
    QuiverSpec q;
    q.vertices = 4;
    // 0 <- 1 <- 3, 0 <- 2 <- 3 (two routes from 3 to 0)
    q.arrows = {{1, 0}, {3, 1}, {2, 0}, {3, 2}};
    QuiverSpec::Relation r;
    r.terms = {{Scalar::one(field_q()), {1, 0}}, {{-Scalar::one(field_q())}, {3, 2}}};
    q.relations.push_back(r);
    auto a = path_algebra(q, field_q());
    // paths: 4 trivial + 4 arrows + 2 long, minus 1 relation
    REQUIRE(a->dim == 9);
    REQUIRE(verify_presentation(a).ok);

    // killing one composition instead
    QuiverSpec q2 = q;
    q2.relations.clear();
    QuiverSpec::Relation r2;
    r2.terms = {{Scalar::one(field_q()), {1, 0}}};
    q2.relations.push_back(r2);
    auto a2 = path_algebra(q2, field_q());
    REQUIRE(a2->dim == 9);
    REQUIRE(verify_presentation(a2).ok);
}

TEST_CASE("opposite is an involution preserving the distinguished data") {
    auto t3 = triangular(3, field_q());
    auto op = opposite(t3);
    REQUIRE(verify_presentation(op).ok);
    auto opop = opposite(op);
    for (int i = 0; i < t3->dim; ++i)
        for (int j = 0; j < t3->dim; ++j) REQUIRE(opop->mult[i][j] == t3->mult[i][j]);
    REQUIRE(op->unit == t3->unit);
    REQUIRE(op->idempotents == t3->idempotents);
    // e12 * e22 = e12 in triangular(2) becomes e22 *op e12 = e12
    auto t2 = triangular(2, field_q());
    auto op2 = opposite(t2);
    REQUIRE(op2->mul(op2->basis_vec(2), op2->basis_vec(1)) == op2->basis_vec(1));
    REQUIRE(vec_is_zero(op2->mul(op2->basis_vec(1), op2->basis_vec(2))));
}

TEST_CASE("opposite of a commutative algebra has identical constants") {
    QuiverSpec q;
    q.vertices = 2;  // k x k
    auto a = path_algebra(q, field_q());
    auto op = opposite(a);
    for (int i = 0; i < a->dim; ++i)
        for (int j = 0; j < a->dim; ++j) REQUIRE(op->mult[i][j] == a->mult[i][j]);
}

TEST_CASE("envelope dimensions and verification") {
    auto t2 = triangular(2, field_q());
    auto e = envelope(t2);
    REQUIRE(e->dim == 9);
    REQUIRE(e->n_idem() == 4);
    REQUIRE(verify_presentation(e).ok);

    auto k = field_algebra(field_q());
    auto ek = envelope(k);
    REQUIRE(ek->dim == 1);
    REQUIRE(verify_presentation(ek).ok);
}

TEST_CASE("envelope works over a prime field") {
    auto t2 = triangular(2, field_fp(101));
    REQUIRE(verify_presentation(envelope(t2)).ok);
}

TEST_CASE("center dimensions") {
    REQUIRE(center(triangular(2, field_q())).size() == 1);
    REQUIRE(center(triangular(3, field_q())).size() == 1);
    auto z = center(triangular(3, field_q()));
    REQUIRE(z[0] == triangular(3, field_q())->unit);

    QuiverSpec two;
    two.vertices = 2;
    auto kk = path_algebra(two, field_q());
    REQUIRE(center(kk).size() == 2);

    REQUIRE(center(envelope(field_algebra(field_q()))).size() == 1);

    // center(envelope(a)) contains center(a) (x) center(a)
    auto t2 = triangular(2, field_q());
    auto e = envelope(t2);
    auto ze = center(e);
    MatrixE zm(e->dim, (int)ze.size(), e->field);
    for (int j = 0; j < (int)ze.size(); ++j) zm.set_col(j, ze[j]);
    Subspace zspan = Subspace::from_span(zm);
    for (const auto& z1 : center(t2))
        for (const auto& z2 : center(t2)) {
            Vec v = zero_vec(e->dim, e->field);
            for (int i = 0; i < t2->dim; ++i)
                for (int j = 0; j < t2->dim; ++j)
                    if (!z1[i].is_zero() && !z2[j].is_zero()) v[i * t2->dim + j] = z1[i] * z2[j];
            REQUIRE(zspan.contains(v));
        }
}

TEST_CASE("verify_presentation catches corruption") {
    auto t3 = triangular(3, field_q());
    auto bad = std::make_shared<Algebra>(*t3);
    bad->mult[1][2].clear();
    bad->mult[1][2].emplace_back(0, Scalar::one(field_q()));  // corrupt one product
    auto res = verify_presentation(bad);
    REQUIRE_FALSE(res.ok);
    REQUIRE(res.message.find("associativity") != std::string::npos);
    REQUIRE(res.message.find("(") != std::string::npos);

    auto pa4 = path_algebra(linear_quiver(4), field_q());
    REQUIRE(verify_presentation(pa4).ok);
}

TEST_CASE("same_algebra distinguishes presentations") {
    auto a = triangular(2, field_q());
    auto b = triangular(2, field_q());
    auto c = triangular(3, field_q());
    REQUIRE(same_algebra(a, b));
    REQUIRE_FALSE(same_algebra(a, c));
    REQUIRE_FALSE(same_algebra(a, triangular(2, field_fp(101))));
}
