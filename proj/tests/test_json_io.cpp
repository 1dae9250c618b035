#include <catch2/catch_amalgamated.hpp>

#include "tilt/json_io.hpp"

using namespace tilt;

TEST_CASE("scalars, vectors, and matrices survive a json round trip") {
    FieldSpec q = field_q(), fp = field_fp(101);
    REQUIRE(field_from_json(field_to_json(q)) == q);
    REQUIRE(field_from_json(field_to_json(fp)) == fp);
    REQUIRE_THROWS_AS(field_from_json(json{{"char", 6}}), error);
    REQUIRE(parse_field("q") == q);
    REQUIRE(parse_field("fp:101") == fp);
    REQUIRE_THROWS_AS(parse_field("fp:4"), error);
    REQUIRE_THROWS_AS(parse_field("real"), error);

    Vec v{Scalar::rational(-3, 7, q), Scalar::from_int(2, q), Scalar::zero(q)};
    REQUIRE(vec_from_json(vec_to_json(v), q) == v);

    MatrixE m(2, 3, q);
    m.at(0, 0) = Scalar::rational(5, 2, q);
    m.at(1, 2) = Scalar::from_int(-4, q);
    MatrixE back = matrix_from_json(matrix_to_json(m), q);
    REQUIRE(back == m);

    IntMat im{{1, -2}, {0, 7}};
    REQUIRE(intmat_from_json(intmat_to_json(im)) == im);
}

TEST_CASE("an algebra round trips through json with its presentation intact") {
    auto a = triangular(3, field_q());
    json j = algebra_to_json(a);
    REQUIRE(j.at("dim") == 6);
    REQUIRE(j.at("labels").size() == 6);

    AlgebraRef b = algebra_from_json(j);
    REQUIRE(b->dim == a->dim);
    REQUIRE(b->labels == a->labels);
    REQUIRE(b->n_idem() == a->n_idem());
    REQUIRE(b->radical_basis.size() == a->radical_basis.size());
    REQUIRE(verify_presentation(b).ok);

    // multiplication agrees on every basis pair
    for (int i = 0; i < a->dim; ++i)
        for (int k = 0; k < a->dim; ++k)
            REQUIRE(b->mul(b->basis_vec(i), b->basis_vec(k)) ==
                    a->mul(a->basis_vec(i), a->basis_vec(k)));

    // a loaded algebra exposes its full basis as generators
    REQUIRE(b->generators.size() == (size_t)b->dim);

    json bad = j;
    bad["constants"][0][3] = "7";
    REQUIRE_FALSE(verify_presentation(algebra_from_json(bad)).ok);
}

TEST_CASE("modules and complexes round trip through json") {
    auto a = triangular(3, field_q());
    Module m = interval_module(a, 1, 2);
    Module back = module_from_json(module_to_json(m, a->name), a);
    REQUIRE(back.dim == m.dim);
    for (size_t g = 0; g < m.gen_act.size(); ++g) REQUIRE(back.gen_act[g] == m.gen_act[g]);
    REQUIRE(verify_module(back).ok);

    // and against the json-loaded copy of the algebra, where the generator
    // set is the whole basis
    AlgebraRef b = algebra_from_json(algebra_to_json(a));
    Module over_b = module_from_json(module_to_json(m, a->name), b);
    REQUIRE(verify_module(over_b).ok);
    REQUIRE(class_of(over_b) == class_of(m));

    ComplexRep c = projective_replacement(complex_from_module(simple_module(a, 2), 0)).p;
    ComplexRep rc = complex_from_json(complex_to_json(c, a->name), a);
    REQUIRE(rc.lo == c.lo);
    REQUIRE(rc.terms.size() == c.terms.size());
    for (size_t i = 0; i < c.diff.size(); ++i) REQUIRE(rc.diff[i] == c.diff[i]);
    REQUIRE(validate_complex(rc).ok);
}

namespace {

json wrap_report(json witness) {
    json claim;
    claim["name"] = "probe";
    claim["paper_ref"] = "test";
    claim["status"] = "pass";
    claim["witness"] = std::move(witness);
    claim["ms"] = 0;
    json rep;
    rep["algebra"] = "triangular(2)";
    rep["field"] = field_to_json(field_q());
    rep["seed"] = 1;
    rep["claims"] = json::array({claim});
    return rep;
}

}  // namespace

TEST_CASE("isomorphism witnesses recheck by matrix arithmetic alone") {
    auto a = triangular(2, field_q());
    Module x = direct_sum({simple_module(a, 0), projective_module(a, 1)});
    Module y = direct_sum({projective_module(a, 1), simple_module(a, 0)});
    IsoResult iso = is_isomorphic(x, y);
    REQUIRE(iso.is_yes());

    json w = witness_iso(x, y, iso.witness);
    RecheckResult ok = recheck_report(wrap_report(w));
    REQUIRE(ok.ok());
    REQUIRE(ok.checked == 1);

    // entry (2,1) sits in the Hom(P_2, S_1) = 0 block, so any nonzero value
    // there breaks the intertwining identity
    json tampered = w;
    tampered["matrix"][2][1] = "99";
    REQUIRE_FALSE(recheck_report(wrap_report(tampered)).ok());

    json wrong_action = w;
    wrong_action["target"]["action"][1][0][0] = "1/2";
    REQUIRE_FALSE(recheck_report(wrap_report(wrong_action)).ok());

    json singular = w;
    for (auto& row : singular["matrix"])
        for (auto& e : row) e = "0";
    REQUIRE_FALSE(recheck_report(wrap_report(singular)).ok());
}

TEST_CASE("integer matrix witnesses recheck") {
    IntMat m{{-1, -1}, {1, 0}};
    REQUIRE(recheck_report(wrap_report(witness_intmat_eq(m, m))).ok());
    REQUIRE_FALSE(recheck_report(wrap_report(witness_intmat_eq(m, int_neg(m)))).ok());

    REQUIRE(recheck_report(wrap_report(witness_matrix_order(m, 3))).ok());
    REQUIRE_FALSE(recheck_report(wrap_report(witness_matrix_order(m, 2))).ok());

    REQUIRE(recheck_report(wrap_report(witness_value_eq(json{1, 2}, json{1, 2}))).ok());
    REQUIRE_FALSE(recheck_report(wrap_report(witness_value_eq(json{1}, json{2}))).ok());

    json unknown = json{{"kind", "mystery"}};
    REQUIRE_THROWS_AS(recheck_report(wrap_report(unknown)), error);
}

TEST_CASE("a failed claim or a missing witness is surfaced by recheck") {
    json rep = wrap_report(witness_value_eq(json{1}, json{1}));
    rep["claims"][0]["status"] = "fail";
    RecheckResult r = recheck_report(rep);
    REQUIRE_FALSE(r.ok());

    json no_wit = wrap_report(json());
    no_wit["claims"][0].erase("witness");
    RecheckResult s = recheck_report(no_wit);
    REQUIRE(s.ok());
    REQUIRE(s.checked == 0);
    REQUIRE_FALSE(s.messages.empty());
}

TEST_CASE("report serialization respects witness and timing switches") {
    Report r;
    r.algebra = "triangular(2)";
    r.field = field_q();
    r.seed = 9;
    Claim c;
    c.name = "probe";
    c.ref = "statement";
    c.pass = true;
    c.witness = witness_value_eq(json{1}, json{1});
    c.ms = 42;
    r.claims.push_back(c);

    json full = report_to_json(r, true, true);
    REQUIRE(full.at("seed") == 9);
    REQUIRE(full.at("claims").at(0).at("status") == "pass");
    REQUIRE(full.at("claims").at(0).contains("witness"));
    REQUIRE(full.at("claims").at(0).at("ms") == 42);
    REQUIRE(full.at("claims").at(0).at("paper_ref") == "statement");

    json trimmed = report_to_json(r, false, false);
    REQUIRE_FALSE(trimmed.at("claims").at(0).contains("witness"));
    REQUIRE(trimmed.at("claims").at(0).at("ms") == 0);

    std::string text = report_text(r, false);
    REQUIRE(text.find("PASS") != std::string::npos);
    REQUIRE(text.find("probe") != std::string::npos);
}

TEST_CASE("quivers parse from json and build path algebras") {
    json j;
    j["vertices"] = 3;
    j["arrows"] = json::array({json{1, 0}, json{2, 1}});
    QuiverSpec q = quiver_from_json(j);
    REQUIRE(q.vertices == 3);
    REQUIRE(q.arrows.size() == 2);
    AlgebraRef a = path_algebra(q, field_q());
    REQUIRE(a->dim == 6);
    REQUIRE(verify_presentation(a).ok);
    REQUIRE(cartan_matrix(a) == cartan_matrix(triangular(3, field_q())));
}
