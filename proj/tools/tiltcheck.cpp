/*
 * tiltcheck: construct an algebra, run a verification suite, and emit a
 * text or JSON report with embedded isomorphism witnesses.
 *
 * Exit codes: 0 all claims pass, 1 a verification failed, 2 input or
 * presentation error.
 */
#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "tilt/json_io.hpp"

namespace {

using namespace tilt;

struct Options {
    int n = 2;
    std::string field = "q";
    std::uint64_t seed = 1;
    int trials = 8;
    int max_len = 64;
    bool json_out = false;
    std::string out_path;
    bool no_witness = false;
    bool no_timing = false;
    std::string algebra_file;
    std::string quiver_file;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Build the algebra a subcommand runs over.  A file source is presentation-
// checked before anything else touches it.
AlgebraRef resolve_algebra(const Options& o, int default_n) {
    if (!o.algebra_file.empty()) {
        AlgebraRef a = algebra_from_json(load_json_file(o.algebra_file));
        VerifyResult v = verify_presentation(a);
        if (!v.ok) throw InputError("presentation check failed: " + v.message);
        return a;
    }
    if (!o.quiver_file.empty()) {
        AlgebraRef a = path_algebra(quiver_from_json(load_json_file(o.quiver_file)),
                                    parse_field(o.field));
        VerifyResult v = verify_presentation(a);
        if (!v.ok) throw InputError("presentation check failed: " + v.message);
        return a;
    }
    int n = default_n > 0 ? default_n : o.n;
    if (n < 1) throw InputError("--n must be at least 1");
    return triangular(n, parse_field(o.field));
}

// Run one claim, capturing wall time and downgrading engine errors to a
// failed claim instead of aborting the whole report.
void add_claim(Report& rep, const std::string& name, const std::string& ref,
               const std::function<std::pair<bool, json>()>& run) {
    Claim c;
    c.name = name;
    c.ref = ref;
    auto start = std::chrono::steady_clock::now();
    try {
        auto [pass, wit] = run();
        c.pass = pass;
        if (pass) c.witness = std::move(wit);
    } catch (const error& e) {
        c.pass = false;
    }
    c.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
               .count();
    rep.claims.push_back(std::move(c));
}

std::pair<bool, json> iso_claim(const ConcentratedIso& ci, const Module& expected) {
    if (!ci.holds()) return {false, json()};
    return {true, witness_iso(ci.h, expected, ci.iso.witness)};
}

Report new_report(const AlgebraRef& a, const Options& o) {
    Report r;
    r.algebra = a->name;
    r.field = a->field;
    r.seed = o.seed;
    return r;
}

// ---------------------------------------------------------------- commands

Report run_prop63(const AlgebraRef& a, const Options& o) {
    Report rep = new_report(a, o);
    ComplexRep dd = dual_diagonal_complex(a);
    auto tensor_with = [&](const Module& m) {
        return derived_tensor(a, dd, complex_from_module(m, 0), Side::left, o.max_len).c;
    };
    add_claim(rep, "dual-tensor-simple-1", "A* (x)^L S_1 = P_2", [&] {
        auto ci = concentrated_iso(tensor_with(simple_module(a, 0)), projective_module(a, 1),
                                   0, o.seed, o.trials);
        return iso_claim(ci, projective_module(a, 1));
    });
    add_claim(rep, "dual-tensor-proj-2", "A* (x)^L P_2 = S_2", [&] {
        auto ci = concentrated_iso(tensor_with(projective_module(a, 1)), simple_module(a, 1),
                                   0, o.seed, o.trials);
        return iso_claim(ci, simple_module(a, 1));
    });
    add_claim(rep, "dual-tensor-simple-2", "A* (x)^L S_2 = S_1[1]", [&] {
        auto ci = concentrated_iso(tensor_with(simple_module(a, 1)), simple_module(a, 0), -1,
                                   o.seed, o.trials);
        return iso_claim(ci, simple_module(a, 0));
    });
    add_claim(rep, "dual-cube-is-shift", "t^3 = s", [&] {
        DPicElement t = is_tilting(dd, o.seed, o.trials, o.max_len);
        if (!t.certified) return std::make_pair(false, json());
        ComplexRep cube = dpic_pow(t, 3, o.max_len).complex;
        Module diag = regular_bimodule(a, envelope(a, a));
        auto ci = concentrated_iso(cube, diag, -1, o.seed, o.trials);
        return iso_claim(ci, diag);
    });
    return rep;
}

Report run_appendix(const AlgebraRef& a, const Options& o) {
    const int n = a->n_idem();
    Report rep = new_report(a, o);
    ComplexRep dd = dual_diagonal_complex(a);
    Module diag = regular_bimodule(a, envelope(a, a));

    TiltingCertificate cert = is_tilting_cert(dd, o.seed, o.trials, o.max_len);
    add_claim(rep, "dual-inverse-left", "RHom(A*, A) (x)^L A* = A", [&] {
        return iso_claim(cert.left, diag);
    });
    add_claim(rep, "dual-inverse-right", "A* (x)^L RHom(A*, A) = A", [&] {
        return iso_claim(cert.right, diag);
    });

    auto tensor_with = [&](const Module& m) {
        return derived_tensor(a, dd, complex_from_module(m, 0), Side::left, o.max_len).c;
    };
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i), sn = std::to_string(n);
        add_claim(rep, "translate-proj-" + si, "F P_" + si + " = I(" + si + ".." + sn + ")",
                  [&, i] {
                      Module want = interval_module(a, i, n);
                      auto ci = concentrated_iso(tensor_with(projective_module(a, i - 1)), want,
                                                 0, o.seed, o.trials);
                      return iso_claim(ci, want);
                  });
    }
    for (int i = 2; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            std::string si = std::to_string(i), sj = std::to_string(j);
            add_claim(rep, "translate-interval-" + si + "-" + sj,
                      "F I(" + si + ".." + sj + ") = I(" + std::to_string(i - 1) + ".." +
                          std::to_string(j - 1) + ")[1]",
                      [&, i, j] {
                          Module want = interval_module(a, i - 1, j - 1);
                          auto ci = concentrated_iso(tensor_with(interval_module(a, i, j)), want,
                                                     -1, o.seed, o.trials);
                          return iso_claim(ci, want);
                      });
        }
    add_claim(rep, "t-power-is-shift",
              "t^" + std::to_string(n + 1) + " = s^" + std::to_string(n - 1), [&] {
                  DPicElement t = dpic_element(dd);
                  t.certified = cert.tilting;
                  if (cert.tilting) t.inverse = cert.dual;
                  if (!t.certified) return std::make_pair(false, json());
                  ComplexRep pw = dpic_pow(t, n + 1, o.max_len).complex;
                  auto ci = concentrated_iso(pw, diag, -(n - 1), o.seed, o.trials);
                  return iso_claim(ci, diag);
              });
    return rep;
}

Report run_dualizing(const AlgebraRef& a, const Options& o) {
    Report rep = new_report(a, o);
    auto per_object = [&](const std::string& tag, const ComplexRep& r) {
        DualizingCertificate cert = is_dualizing(r, o.seed, o.trials, o.max_len);
        add_claim(rep, tag + "-inj-finite", "inj dim finite on both sides", [&] {
            bool ok = cert.inj_dim_left >= 0 && cert.inj_dim_right >= 0;
            json dims = json{cert.inj_dim_left, cert.inj_dim_right};
            return std::make_pair(ok, witness_value_eq(dims, dims));
        });
        Module diag = regular_bimodule(a, envelope(a, a));
        add_claim(rep, tag + "-end-left", "RHom(R, R) = A as bimodules", [&] {
            return iso_claim(cert.left_end, diag);
        });
        add_claim(rep, tag + "-end-right", "RHom(R, R) = A on the opposite side", [&] {
            auto ao = opposite(a);
            return iso_claim(cert.right_end, regular_bimodule(ao, envelope(ao, ao)));
        });
    };
    per_object("regular", diagonal_complex(a));
    per_object("dual", dual_diagonal_complex(a));
    return rep;
}

Report run_rigid(const AlgebraRef& a, const Options& o) {
    Report rep = new_report(a, o);
    ComplexRep dd = dual_diagonal_complex(a);
    add_claim(rep, "dual-rigid", "RHom over A^e of (A, R (x) R) = R", [&] {
        DegreewiseIso r = is_rigid(dd, o.seed, o.trials, o.max_len);
        return std::make_pair(r.ok, witness_value_eq(json(r.dims_left), json(r.dims_right)));
    });
    add_claim(rep, "dual-vdb", "RHom_A(R, A) = RHom_{A^e}(A, A^e)", [&] {
        DegreewiseIso r = vdb_formula_check(dd, o.seed, o.trials, o.max_len);
        return std::make_pair(r.ok, witness_value_eq(json(r.dims_left), json(r.dims_right)));
    });
    add_claim(rep, "dual-center-end", "End(A*) = Z(A), no lower ext", [&] {
        CenterEndResult r = center_end_check(dd, o.max_len);
        return std::make_pair(r.ok(), witness_value_eq(json{r.end_dim, r.center_right,
                                                            r.lower_vanishes},
                                                       json{r.center_left, r.center_left, true}));
    });
    return rep;
}

Report run_k0(const AlgebraRef& a, const Options& o, std::string& text_extra) {
    const int n = a->n_idem();
    Report rep = new_report(a, o);
    IntMat cart = cartan_matrix(a);
    IntMat cox = coxeter(a);
    DPicElement t = is_tilting(dual_diagonal_complex(a), o.seed, o.trials, o.max_len);
    DPicElement s = shift_element(a, 1, o.seed);
    IntMat chi_t = chi0_of(t, o.max_len);
    IntMat chi_s = chi0_of(s, o.max_len);

    text_extra = "cartan:  " + int_mat_str(cart) + "\ncoxeter: " + int_mat_str(cox) +
                 "\nchi0(t): " + int_mat_str(chi_t) + "\nchi0(s): " + int_mat_str(chi_s) + "\n";

    add_claim(rep, "coxeter-rows", "[P_i] c = -[I_i] for all i", [&] {
        IntMat r(n), ni(n);
        for (int i = 0; i < n; ++i) {
            r[i] = class_of(projective_module(a, i));
            ni[i] = class_of(injective_module(a, i));
            for (auto& x : ni[i]) x = -x;
        }
        json w{{"kind", "intmat-prod"},
               {"a", intmat_to_json(r)},
               {"b", intmat_to_json(cox)},
               {"product", intmat_to_json(ni)}};
        return std::make_pair(int_mul(r, cox) == ni, w);
    });
    add_claim(rep, "chi0-shift", "chi0(s) = -identity", [&] {
        IntMat want = int_neg(int_identity(n));
        return std::make_pair(chi_s == want, witness_intmat_eq(chi_s, want));
    });
    add_claim(rep, "chi0-dual-coxeter", "chi0(t) = -coxeter", [&] {
        IntMat want = int_neg(cox);
        return std::make_pair(chi_t == want, witness_intmat_eq(chi_t, want));
    });
    if (n == 2)
        add_claim(rep, "chi0-display", "chi0(t) = [[1,1],[-1,0]]", [&] {
            IntMat want{{1, 1}, {-1, 0}};
            return std::make_pair(chi_t == want, witness_intmat_eq(chi_t, want));
        });
    add_claim(rep, "coxeter-order", "coxeter has order n+1", [&] {
        bool ok = order_of(cox, n + 2) == n + 1;
        return std::make_pair(ok, witness_matrix_order(cox, n + 1));
    });
    add_claim(rep, "chi0-consistency", "chi0(t)^{n+1} = (-1)^{n-1} identity", [&] {
        IntMat pw = int_identity(n);
        for (int i = 0; i <= n; ++i) pw = int_mul(pw, chi_t);
        IntMat want = int_identity(n);
        if ((n - 1) % 2 == 1) want = int_neg(want);
        return std::make_pair(pw == want, witness_intmat_eq(pw, want));
    });
    return rep;
}

int emit_report(const Report& rep, const Options& o, const std::string& text_extra = "") {
    std::string payload;
    if (o.json_out) {
        payload = report_to_json(rep, !o.no_witness, !o.no_timing).dump(2);
        payload += "\n";
    } else {
        payload = text_extra + report_text(rep, !o.no_timing);
    }
    if (o.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(o.out_path);
        if (!out) throw InputError("cannot write " + o.out_path);
        out << payload;
    }
    return rep.all_pass() ? 0 : 1;
}

int run_algebra_info(const AlgebraRef& a, const Options& o) {
    VerifyResult v = verify_presentation(a);
    if (o.json_out) {
        json j;
        j["name"] = a->name;
        j["presentation"] = v.ok ? "pass" : "fail: " + v.message;
        j["center_dim"] = (int)center(a).size();
        j["algebra"] = algebra_to_json(a);
        std::string payload = j.dump(2) + "\n";
        if (o.out_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(o.out_path);
            out << payload;
        }
    } else {
        std::cout << "name: " << a->name << "\ndim: " << a->dim
                  << "\nfield: " << field_str(a->field) << "\nidempotents: " << a->n_idem()
                  << "\nradical dim: " << a->radical_basis.size()
                  << "\ncenter dim: " << center(a).size()
                  << "\npresentation: " << (v.ok ? "pass" : "FAIL: " + v.message) << "\n";
    }
    return v.ok ? 0 : 2;
}

int run_recheck(const std::string& path) {
    RecheckResult r = recheck_report(load_json_file(path));
    for (const auto& m : r.messages) std::cout << m << "\n";
    std::cout << "witnesses checked: " << r.checked << ", failed: " << r.failed << "\n";
    return r.ok() ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& o, bool with_n = true) {
    if (with_n) cmd->add_option("--n", o.n, "size of the builtin triangular algebra");
    cmd->add_option("--field", o.field, "coefficient field: q or fp:<p>");
    cmd->add_option("--seed", o.seed, "seed for randomized isomorphism search")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--trials", o.trials, "random trials per isomorphism test")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-len", o.max_len, "resolution length cap")->check(CLI::PositiveNumber);
    cmd->add_flag("--json", o.json_out, "emit a JSON report");
    cmd->add_option("--out", o.out_path, "write the report to a file");
    cmd->add_flag("--no-witness", o.no_witness, "omit witnesses from JSON reports");
    cmd->add_flag("--no-timing", o.no_timing, "zero out per-claim wall times");
    cmd->add_option("--algebra-file", o.algebra_file, "load the algebra from a JSON file");
    cmd->add_option("--quiver-file", o.quiver_file, "build a path algebra from a JSON quiver");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"derived Morita verification toolkit"};
    app.require_subcommand(1);
    Options o;
    std::string recheck_path;

    CLI::App* prop = app.add_subcommand("verify-prop63", "dual tensor suite over triangular(2)");
    add_common(prop, o, false);
    CLI::App* apx = app.add_subcommand("verify-appendix", "translation suite for triangular(n)");
    add_common(apx, o);
    CLI::App* dua = app.add_subcommand("verify-dualizing", "dualizing-complex certificates");
    add_common(dua, o);
    CLI::App* rig = app.add_subcommand("verify-rigid", "rigidity, hom-formula, and center checks");
    add_common(rig, o);
    CLI::App* k0 = app.add_subcommand("k0-report", "class-group matrices and identities");
    add_common(k0, o);
    CLI::App* info = app.add_subcommand("algebra-info", "print and presentation-check an algebra");
    add_common(info, o);
    CLI::App* rch = app.add_subcommand("recheck", "re-validate the witnesses in a report");
    rch->add_option("report", recheck_path, "report JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit clean, bad usage is an input error
    }

    try {
        if (prop->parsed()) return emit_report(run_prop63(resolve_algebra(o, 2), o), o);
        if (apx->parsed()) {
            if (o.algebra_file.empty() && o.quiver_file.empty() && o.n < 2)
                throw InputError("verify-appendix needs --n at least 2");
            AlgebraRef a = resolve_algebra(o, 0);
            return emit_report(run_appendix(a, o), o);
        }
        if (dua->parsed()) return emit_report(run_dualizing(resolve_algebra(o, 0), o), o);
        if (rig->parsed()) return emit_report(run_rigid(resolve_algebra(o, 0), o), o);
        if (k0->parsed()) {
            AlgebraRef a = resolve_algebra(o, 0);
            std::string extra;
            Report rep = run_k0(a, o, extra);
            return emit_report(rep, o, extra);
        }
        if (info->parsed()) return run_algebra_info(resolve_algebra(o, 0), o);
        if (rch->parsed()) return run_recheck(recheck_path);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
