#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ffhyp/characters.hpp"
#include "ffhyp/character_sums.hpp"
#include "ffhyp/classical_analogue.hpp"
#include "ffhyp/cyclotomic.hpp"
#include "ffhyp/finite_field.hpp"
#include "ffhyp/hypergeometric.hpp"
#include "ffhyp/identity_verifier.hpp"

namespace {

using namespace ffhyp;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string approx_json(ApproxNumber v) {
    return "{\"re\":" + fmt_double(v.real()) + ",\"im\":" + fmt_double(v.imag()) + "}";
}

void print_value(const std::optional<CycNumber>& exact, ApproxNumber approx,
                 const std::string& format) {
    if (format == "json") {
        if (exact)
            std::cout << exact->to_json() << "\n";
        else
            std::cout << approx_json(approx) << "\n";
    } else if (format == "csv") {
        std::cout << "re,im\n" << fmt_double(approx.real()) << "," << fmt_double(approx.imag()) << "\n";
    } else {
        if (exact) std::cout << exact->to_string() << "\n";
        std::cout << "approx: " << fmt_double(approx.real()) << " + " << fmt_double(approx.imag())
                  << "*i\n";
    }
}

std::vector<std::string> split_fields(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

struct EvalArgs {
    std::string field;
    std::string a, b, c, d, x;
    bool use_float = false;
    std::string format = "pretty";
};

void add_common(CLI::App* cmd, EvalArgs& args, bool need_a, bool need_b, bool need_c, bool need_d,
                bool need_x) {
    cmd->add_option("--field", args.field, "field descriptor p or p^n")->required();
    if (need_a)
        cmd->add_option("--a", args.a, "character (exponent or eps/phi/chi4/chi4bar)")->required();
    if (need_b) cmd->add_option("--b", args.b, "character")->required();
    if (need_c) cmd->add_option("--c", args.c, "character")->required();
    if (need_d) cmd->add_option("--d", args.d, "character")->required();
    if (need_x) cmd->add_option("--x", args.x, "field element (index or g^k)")->required();
    cmd->add_flag("--float", args.use_float, "use the floating backend");
    cmd->add_flag("--exact", [&args](std::int64_t) { args.use_float = false; },
                  "use the exact backend (default)");
    cmd->add_option("--format", args.format, "pretty|json|csv")
        ->check(CLI::IsMember({"pretty", "json", "csv"}));
}

int run(int argc, char** argv) {
    CLI::App app{"Exact Gauss/Jacobi sums, hypergeometric functions over finite fields, "
                 "and sweep verification of their transformation identities"};
    app.require_subcommand(1);

    // --- field-info ---
    std::string fi_field, fi_format = "pretty";
    auto* fi = app.add_subcommand("field-info", "print the field model (modulus, generator, tables)");
    fi->add_option("--field", fi_field)->required();
    fi->add_option("--format", fi_format)->check(CLI::IsMember({"pretty", "json"}));

    // --- eval ---
    auto* eval = app.add_subcommand("eval", "evaluate a character sum");
    eval->require_subcommand(1);
    EvalArgs ga, ja, ba, ha, fa;
    auto* eg = eval->add_subcommand("gauss", "Gauss sum G(A)");
    add_common(eg, ga, true, false, false, false, false);
    auto* ej = eval->add_subcommand("jacobi", "Jacobi sum J(A,B)");
    add_common(ej, ja, true, true, false, false, false);
    auto* eb = eval->add_subcommand("binomial", "binomial coefficient (A over B)");
    add_common(eb, ba, true, true, false, false, false);
    auto* eh = eval->add_subcommand("2f1", "hypergeometric 2F1(A,B;C|x)");
    add_common(eh, ha, true, true, true, false, true);
    std::string fstar_form = "point";
    auto* ef = eval->add_subcommand("fstar", "pseudo hypergeometric F*(C,D;x)");
    add_common(ef, fa, false, false, true, true, true);
    ef->add_option("--form", fstar_form, "point|char")->check(CLI::IsMember({"point", "char"}));

    // --- verify ---
    auto* ver = app.add_subcommand("verify", "sweep an identity over all admissible tuples");
    std::string v_identity, v_field, v_fields, v_backend = "exact", v_report;
    bool v_all = false, v_millis = false;
    unsigned v_jobs = 0;
    unsigned v_nmax = 10;
    ver->add_option("--identity", v_identity,
                    "hasse_davenport|fstar_forms|lemma1|alpha_beta|thm2|eq31|thm3|eq42|stanton");
    ver->add_flag("--all", v_all, "run every identity");
    ver->add_option("--field", v_field, "single field descriptor");
    ver->add_option("--fields", v_fields, "comma-separated field descriptors");
    ver->add_option("--backend", v_backend)->check(CLI::IsMember({"exact", "float"}));
    ver->add_option("--jobs", v_jobs, "worker count (default: FFHYP_JOBS or hardware)");
    ver->add_option("--report", v_report, "write the JSON report to this path");
    ver->add_flag("--millis", v_millis,
                  "emit measured wall time in reports (off by default so identical "
                  "invocations stay byte-identical; timing always shown on stderr)");
    ver->add_option("--n-max", v_nmax, "stanton: largest n checked");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // --help exits 0, any usage error exits 2
    }

    if (fi->parsed()) {
        FiniteField f = FiniteField::from_descriptor(fi_field);
        if (fi_format == "json") {
            std::cout << f.to_json() << "\n";
        } else {
            std::cout << "q = " << f.q() << " = " << f.p() << "^" << f.n() << "\nmodulus =";
            for (auto c : f.modulus()) std::cout << " " << c;
            std::cout << " (low degree first)\ngenerator affine = " << f.to_affine(f.generator())
                      << "\nconductor m = " << f.conductor() << "\n";
        }
        return 0;
    }

    if (eval->parsed()) {
        auto run_eval = [&](EvalArgs& e, auto&& exact_fn, auto&& approx_fn) {
            FiniteField f = FiniteField::from_descriptor(e.field);
            std::optional<CycNumber> exact;
            ApproxNumber approx;
            if (e.use_float || e.format == "csv") {
                approx = approx_fn(f);
            } else {
                exact = exact_fn(f);
                approx = exact->embed();
            }
            print_value(exact, approx, e.format);
            return 0;
        };
        if (eg->parsed())
            return run_eval(
                ga,
                [&](const FiniteField& f) {
                    GaussTable t(f);
                    return gauss(t, parse_character(f, ga.a));
                },
                [&](const FiniteField& f) { return gauss_approx(f, parse_character(f, ga.a)); });
        if (ej->parsed())
            return run_eval(
                ja,
                [&](const FiniteField& f) {
                    GaussTable t(f);
                    return jacobi(t, parse_character(f, ja.a), parse_character(f, ja.b));
                },
                [&](const FiniteField& f) {
                    return jacobi_approx(f, parse_character(f, ja.a), parse_character(f, ja.b));
                });
        if (eb->parsed())
            return run_eval(
                ba,
                [&](const FiniteField& f) {
                    GaussTable t(f);
                    return binomial(t, parse_character(f, ba.a), parse_character(f, ba.b));
                },
                [&](const FiniteField& f) {
                    return binomial_approx(f, parse_character(f, ba.a), parse_character(f, ba.b));
                });
        if (eh->parsed())
            return run_eval(
                ha,
                [&](const FiniteField& f) {
                    GaussTable t(f);
                    return hyp2f1(t, parse_character(f, ha.a), parse_character(f, ha.b),
                                  parse_character(f, ha.c), f.parse_element(ha.x));
                },
                [&](const FiniteField& f) {
                    return hyp2f1_approx(f, parse_character(f, ha.a), parse_character(f, ha.b),
                                         parse_character(f, ha.c), f.parse_element(ha.x));
                });
        if (ef->parsed())
            return run_eval(
                fa,
                [&](const FiniteField& f) {
                    GaussTable t(f);
                    auto c = parse_character(f, fa.c), d = parse_character(f, fa.d);
                    auto x = f.parse_element(fa.x);
                    return fstar_form == "char" ? fstar_char_sum(t, c, d, x)
                                                : fstar_point_count(t, c, d, x);
                },
                [&](const FiniteField& f) {
                    auto c = parse_character(f, fa.c), d = parse_character(f, fa.d);
                    auto x = f.parse_element(fa.x);
                    return fstar_form == "char" ? fstar_char_sum_approx(f, c, d, x)
                                                : fstar_point_count_approx(f, c, d, x);
                });
        return 2;
    }

    if (ver->parsed()) {
        if (!v_all && v_identity.empty()) {
            std::cerr << "verify: need --identity or --all\n";
            return 2;
        }
        VerifyOptions opt;
        opt.backend = v_backend == "float" ? BackendKind::floating : BackendKind::exact;
        opt.jobs = v_jobs;

        std::vector<std::string> fields;
        if (!v_fields.empty())
            for (auto& s : split_fields(v_fields)) fields.push_back(s);
        if (!v_field.empty()) fields.push_back(v_field);

        std::vector<IdentityReport> reports;
        if (v_all) {
            if (fields.empty()) {
                std::cerr << "verify --all: need --field or --fields\n";
                return 2;
            }
            for (const auto& desc : fields) {
                FiniteField f = FiniteField::from_descriptor(desc);
                for (auto& r : verify_all_for_field(f, opt)) reports.push_back(std::move(r));
            }
            reports.push_back(verify_stanton(v_nmax));
        } else if (v_identity == "stanton") {
            reports.push_back(verify_stanton(v_nmax));
        } else {
            auto id = parse_identity(v_identity);
            if (!id) {
                std::cerr << "verify: unknown identity '" << v_identity << "'\n";
                return 2;
            }
            if (fields.empty()) {
                std::cerr << "verify: need --field or --fields\n";
                return 2;
            }
            for (const auto& desc : fields) {
                FiniteField f = FiniteField::from_descriptor(desc);
                if (*id == IdentityId::thm3) {
                    reports.push_back(verify_thm3(f, QuarticChoice::chi4, opt));
                    reports.push_back(verify_thm3(f, QuarticChoice::chi4bar, opt));
                } else if (*id == IdentityId::hasse_davenport) {
                    reports.push_back(verify_hasse_davenport(f, opt));
                } else if (*id == IdentityId::fstar_forms) {
                    reports.push_back(verify_fstar_forms(f, opt));
                } else if (*id == IdentityId::lemma1) {
                    reports.push_back(verify_lemma1(f, opt));
                } else if (*id == IdentityId::alpha_beta) {
                    reports.push_back(verify_alpha_beta(f, opt));
                } else if (*id == IdentityId::thm2) {
                    reports.push_back(verify_thm2(f, opt));
                } else if (*id == IdentityId::eq31) {
                    reports.push_back(verify_eq31(f, opt));
                } else if (*id == IdentityId::eq42) {
                    reports.push_back(verify_eq42(f, opt));
                }
            }
        }

        bool any_failed = false;
        for (const auto& r : reports) {
            any_failed = any_failed || r.failed > 0;
            std::cerr << r.identity << (r.variant ? "[" + *r.variant + "]" : "") << " " << r.field
                      << ": " << (r.inapplicable ? "inapplicable" : (r.failed ? "FAIL" : "ok"))
                      << " tested=" << r.tested << " failed=" << r.failed << " (" << r.millis
                      << " ms)\n";
        }
        std::string payload = reports.size() == 1 ? report_to_json(reports[0], v_millis).dump(2)
                                                  : reports_to_json(reports, v_millis).dump(2);
        std::cout << payload << "\n";
        if (!v_report.empty()) {
            std::ofstream out(v_report);
            out << payload << "\n";
        }
        return any_failed ? 1 : 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
