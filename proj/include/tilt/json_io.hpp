/*
 * JSON serialization for algebras, modules, complexes, and verification
 * reports, plus the standalone witness recheck.
 *
 * Scalars travel as exact "num/den" strings.  A witness is self-contained:
 * an isomorphism witness carries one action matrix per algebra basis element
 * for both sides, so rechecking needs nothing but matrix arithmetic.
 */
#pragma once

#include <json.hpp>

#include <chrono>
#include <fstream>

#include "ktheory.hpp"

namespace tilt {

using json = nlohmann::ordered_json;

// ----------------------------------------------------------------- scalars

inline json field_to_json(FieldSpec f) { return json{{"char", f.ch}}; }

inline FieldSpec field_from_json(const json& j) {
    std::uint32_t ch = j.at("char").get<std::uint32_t>();
    if (ch != 0 && !is_prime_u32(ch)) throw error("field: characteristic is not prime");
    return FieldSpec{ch};
}

inline std::string field_str(FieldSpec f) {
    return f.is_q() ? "q" : "fp:" + std::to_string(f.ch);
}

inline FieldSpec parse_field(const std::string& s) {
    if (s == "q") return field_q();
    if (s.rfind("fp:", 0) == 0) {
        unsigned long p = std::stoul(s.substr(3));
        if (!is_prime_u32((std::uint32_t)p)) throw error("field: " + s + " is not prime");
        return field_fp((std::uint32_t)p);
    }
    throw error("field: expected q or fp:<p>, got " + s);
}

inline json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s.str());
    return a;
}

inline Vec vec_from_json(const json& j, FieldSpec f) {
    Vec v;
    for (const auto& e : j) v.push_back(Scalar::parse(e.get<std::string>(), f));
    return v;
}

inline json matrix_to_json(const MatrixE& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m.at(i, j).str());
        rows.push_back(std::move(r));
    }
    return rows;
}

inline MatrixE matrix_from_json(const json& j, FieldSpec f) {
    int rows = (int)j.size();
    int cols = rows ? (int)j.at(0).size() : 0;
    MatrixE m(rows, cols, f);
    for (int i = 0; i < rows; ++i) {
        if ((int)j.at(i).size() != cols) throw error("matrix: ragged rows");
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = Scalar::parse(j.at(i).at(c).get<std::string>(), f);
    }
    return m;
}

inline json intmat_to_json(const IntMat& m) {
    json rows = json::array();
    for (const auto& r : m) rows.push_back(r);
    return rows;
}

inline IntMat intmat_from_json(const json& j) {
    IntMat m;
    for (const auto& r : j) m.push_back(r.get<K0Vec>());
    return m;
}

// ---------------------------------------------------------------- algebras

inline json algebra_to_json(const AlgebraRef& a) {
    json j;
    j["dim"] = a->dim;
    j["field"] = field_to_json(a->field);
    j["labels"] = a->labels;
    j["unit"] = vec_to_json(a->unit);
    json idem = json::array();
    for (const auto& e : a->idempotents) idem.push_back(vec_to_json(e));
    j["idempotents"] = std::move(idem);
    json rad = json::array();
    for (const auto& r : a->radical_basis) rad.push_back(vec_to_json(r));
    j["radical"] = std::move(rad);
    json cons = json::array();
    for (int i = 0; i < a->dim; ++i)
        for (int c = 0; c < a->dim; ++c)
            for (const auto& [k, s] : a->mult[i][c]) cons.push_back(json{i, c, k, s.str()});
    j["constants"] = std::move(cons);
    return j;
}

// A loaded algebra uses its whole basis as the generator set, so module
// actions given per basis element restrict to it without any word algebra.
inline AlgebraRef algebra_from_json(const json& j) {
    auto a = std::make_shared<Algebra>();
    a->field = field_from_json(j.at("field"));
    a->dim = j.at("dim").get<int>();
    if (a->dim < 1) throw error("algebra: dim must be positive");
    a->name = j.value("name", "loaded(dim=" + std::to_string(a->dim) + ")");
    if (j.contains("labels"))
        a->labels = j.at("labels").get<std::vector<std::string>>();
    else
        for (int i = 0; i < a->dim; ++i) a->labels.push_back("b" + std::to_string(i));
    if ((int)a->labels.size() != a->dim) throw error("algebra: label count mismatch");
    a->mult.assign(a->dim, std::vector<SparseVec>(a->dim));
    for (const auto& t : j.at("constants")) {
        if (t.size() != 4) throw error("algebra: constants need [i, j, k, value]");
        int i = t.at(0).get<int>(), c = t.at(1).get<int>(), k = t.at(2).get<int>();
        if (i < 0 || i >= a->dim || c < 0 || c >= a->dim || k < 0 || k >= a->dim)
            throw error("algebra: constant index out of range");
        Scalar s = Scalar::parse(t.at(3).get<std::string>(), a->field);
        if (!s.is_zero()) a->mult[i][c].emplace_back(k, s);
    }
    for (auto& row : a->mult)
        for (auto& sv : row)
            std::sort(sv.begin(), sv.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    a->unit = vec_from_json(j.at("unit"), a->field);
    if ((int)a->unit.size() != a->dim) throw error("algebra: unit length mismatch");
    for (const auto& e : j.at("idempotents")) {
        a->idempotents.push_back(vec_from_json(e, a->field));
        if ((int)a->idempotents.back().size() != a->dim) throw error("algebra: idempotent length");
    }
    if (a->idempotents.empty()) throw error("algebra: idempotent list is empty");
    for (const auto& r : j.at("radical")) {
        a->radical_basis.push_back(vec_from_json(r, a->field));
        if ((int)a->radical_basis.back().size() != a->dim) throw error("algebra: radical length");
    }
    a->radical_generators = a->radical_basis;
    for (int i = 0; i < a->dim; ++i) {
        a->generators.push_back(a->basis_vec(i));
        a->words.push_back(Word{Scalar::one(a->field), {i}});
    }
    detail::mark_semisimple_gens(*a);
    return a;
}

inline QuiverSpec quiver_from_json(const json& j) {
    QuiverSpec q;
    q.vertices = j.at("vertices").get<int>();
    for (const auto& ar : j.at("arrows")) {
        if (ar.size() != 2) throw error("quiver: arrows need [source, target]");
        q.arrows.emplace_back(ar.at(0).get<int>(), ar.at(1).get<int>());
    }
    if (j.contains("relations")) {
        FieldSpec f = field_q();  // relation coefficients parse over the target field later;
                                  // stored exactly, so rationals are the common format
        for (const auto& rel : j.at("relations")) {
            QuiverSpec::Relation r;
            for (const auto& term : rel) {
                Scalar c = Scalar::parse(term.at(0).get<std::string>(), f);
                std::vector<int> path = term.at(1).get<std::vector<int>>();
                r.terms.emplace_back(c, std::move(path));
            }
            q.relations.push_back(std::move(r));
        }
    }
    return q;
}

// ------------------------------------------------------ modules / complexes

inline json module_to_json(const Module& m, const std::string& algebra_id) {
    json j;
    j["algebra"] = algebra_id;
    j["dim"] = m.dim;
    json act = json::array();
    for (int i = 0; i < m.alg->dim; ++i)
        act.push_back(matrix_to_json(act_element_matrix(m, m.alg->basis_vec(i))));
    j["action"] = std::move(act);
    return j;
}

inline Module module_from_json(const json& j, const AlgebraRef& alg) {
    Module m;
    m.alg = alg;
    m.dim = j.at("dim").get<int>();
    const json& act = j.at("action");
    if ((int)act.size() != alg->dim) throw error("module: one action matrix per basis element");
    std::vector<MatrixE> per_basis;
    for (const auto& e : act) {
        per_basis.push_back(matrix_from_json(e, alg->field));
        if (per_basis.back().rows() != m.dim || per_basis.back().cols() != m.dim)
            throw error("module: action matrix shape mismatch");
    }
    for (const auto& g : alg->generators) {
        MatrixE a(m.dim, m.dim, alg->field);
        for (int i = 0; i < alg->dim; ++i)
            if (!g[i].is_zero()) a = a + g[i] * per_basis[i];
        m.gen_act.push_back(std::move(a));
    }
    return m;
}

inline json complex_to_json(const ComplexRep& c, const std::string& algebra_id) {
    json j;
    j["lo"] = c.lo;
    j["hi"] = c.hi();
    json terms = json::array();
    for (const auto& t : c.terms) terms.push_back(module_to_json(t, algebra_id));
    j["terms"] = std::move(terms);
    json diffs = json::array();
    for (const auto& d : c.diff) diffs.push_back(matrix_to_json(d));
    j["differentials"] = std::move(diffs);
    return j;
}

inline ComplexRep complex_from_json(const json& j, const AlgebraRef& alg) {
    ComplexRep c;
    c.alg = alg;
    c.lo = j.at("lo").get<int>();
    for (const auto& t : j.at("terms")) c.terms.push_back(module_from_json(t, alg));
    for (const auto& d : j.at("differentials")) c.diff.push_back(matrix_from_json(d, alg->field));
    if (c.diff.size() + 1 != c.terms.size() && !(c.terms.empty() && c.diff.empty()))
        throw error("complex: differential count mismatch");
    return c;
}

// --------------------------------------------------------------- witnesses

inline json witness_iso(const Module& src, const Module& dst, const MatrixE& w) {
    const std::string id = src.alg->name;
    json j;
    j["kind"] = "iso";
    j["source"] = module_to_json(src, id);
    j["target"] = module_to_json(dst, id);
    j["matrix"] = matrix_to_json(w);
    return j;
}

inline json witness_intmat_eq(const IntMat& lhs, const IntMat& rhs) {
    return json{{"kind", "intmat-eq"}, {"lhs", intmat_to_json(lhs)}, {"rhs", intmat_to_json(rhs)}};
}

inline json witness_matrix_order(const IntMat& m, int order) {
    return json{{"kind", "matrix-order"}, {"matrix", intmat_to_json(m)}, {"order", order}};
}

inline json witness_value_eq(const json& lhs, const json& rhs) {
    return json{{"kind", "value-eq"}, {"lhs", lhs}, {"rhs", rhs}};
}

// ----------------------------------------------------------------- reports

struct Claim {
    std::string name;
    std::string ref;  // short mathematical statement of the claim
    bool pass = false;
    json witness;  // null when the claim has no checkable payload
    long long ms = 0;
};

struct Report {
    std::string algebra;
    FieldSpec field;
    std::uint64_t seed = 0;
    std::vector<Claim> claims;

    bool all_pass() const {
        for (const auto& c : claims)
            if (!c.pass) return false;
        return true;
    }
};

inline json report_to_json(const Report& r, bool with_witness, bool with_timing) {
    json j;
    j["algebra"] = r.algebra;
    j["field"] = field_to_json(r.field);
    j["seed"] = r.seed;
    json claims = json::array();
    for (const auto& c : r.claims) {
        json cj;
        cj["name"] = c.name;
        cj["paper_ref"] = c.ref;
        cj["status"] = c.pass ? "pass" : "fail";
        if (with_witness && !c.witness.is_null()) cj["witness"] = c.witness;
        cj["ms"] = with_timing ? c.ms : 0;
        claims.push_back(std::move(cj));
    }
    j["claims"] = std::move(claims);
    return j;
}

inline std::string report_text(const Report& r, bool with_timing) {
    std::string out = "algebra: " + r.algebra + "   field: " + field_str(r.field) +
                      "   seed: " + std::to_string(r.seed) + "\n";
    for (const auto& c : r.claims) {
        out += c.pass ? "PASS  " : "FAIL  ";
        out += c.name + "  (" + c.ref + ")";
        if (with_timing) out += "  [" + std::to_string(c.ms) + " ms]";
        out += "\n";
    }
    out += r.all_pass() ? "all claims pass\n" : "some claims FAILED\n";
    return out;
}

// ----------------------------------------------------------------- recheck

struct RecheckResult {
    int checked = 0;
    int failed = 0;
    std::vector<std::string> messages;

    bool ok() const { return failed == 0; }
};

namespace detail {

inline bool recheck_iso(const json& w, FieldSpec f) {
    const json& src = w.at("source");
    const json& dst = w.at("target");
    MatrixE m = matrix_from_json(w.at("matrix"), f);
    int sd = src.at("dim").get<int>(), td = dst.at("dim").get<int>();
    if (sd != td || m.rows() != td || m.cols() != sd) return false;
    if (!inverse(m)) return false;
    const json& sa = src.at("action");
    const json& ta = dst.at("action");
    if (sa.size() != ta.size()) return false;
    for (size_t i = 0; i < sa.size(); ++i) {
        MatrixE s = matrix_from_json(sa.at(i), f);
        MatrixE t = matrix_from_json(ta.at(i), f);
        if (!(m * s == t * m)) return false;
    }
    return true;
}

}  // namespace detail

// Re-validate every witness in a report using matrix arithmetic alone.
inline RecheckResult recheck_report(const json& rep) {
    RecheckResult r;
    FieldSpec f = field_from_json(rep.at("field"));
    for (const auto& c : rep.at("claims")) {
        const std::string name = c.at("name").get<std::string>();
        if (c.at("status").get<std::string>() != "pass") {
            ++r.failed;
            r.messages.push_back(name + ": recorded as failed");
            continue;
        }
        if (!c.contains("witness")) {
            r.messages.push_back(name + ": no witness embedded (skipped)");
            continue;
        }
        ++r.checked;
        const json& w = c.at("witness");
        const std::string kind = w.at("kind").get<std::string>();
        bool ok = false;
        if (kind == "iso") {
            ok = detail::recheck_iso(w, f);
        } else if (kind == "intmat-eq") {
            ok = intmat_from_json(w.at("lhs")) == intmat_from_json(w.at("rhs"));
        } else if (kind == "intmat-prod") {
            ok = int_mul(intmat_from_json(w.at("a")), intmat_from_json(w.at("b"))) ==
                 intmat_from_json(w.at("product"));
        } else if (kind == "matrix-order") {
            IntMat m = intmat_from_json(w.at("matrix"));
            int want = w.at("order").get<int>();
            ok = order_of(m, want + 1) == want;
        } else if (kind == "value-eq") {
            ok = w.at("lhs") == w.at("rhs");
        } else {
            throw error("recheck: unknown witness kind " + kind);
        }
        if (!ok) {
            ++r.failed;
            r.messages.push_back(name + ": witness failed recheck");
        }
    }
    return r;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace tilt
