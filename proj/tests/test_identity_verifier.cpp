#include <doctest.h>

#include <cmath>

#include "ffhyp/engine.hpp"
#include "ffhyp/hypergeometric.hpp"
#include "ffhyp/identity_verifier.hpp"

using namespace ffhyp;

namespace {

// Independent count of (A, B) pairs satisfying the Lemma 1 hypotheses.
std::uint64_t admissible_pairs(const FiniteField& f) {
    std::uint64_t count = 0;
    const std::uint32_t qm1 = f.q() - 1, h = qm1 / 2;
    for (std::uint32_t ja = 0; ja < qm1; ++ja)
        for (std::uint32_t jb = 0; jb < qm1; ++jb) {
            if (ja == 0) continue;
            if ((2 * ja + qm1 - jb) % qm1 == 0) continue;
            if ((h + ja + qm1 - jb) % qm1 == 0) continue;
            ++count;
        }
    return count;
}

std::uint64_t skip_count(const IdentityReport& r, const std::string& reason) {
    for (const auto& s : r.skipped)
        if (s.reason == reason) return s.count;
    return 0;
}

}  // namespace

TEST_SUITE("identity_verifier") {

TEST_CASE("hasse_davenport sweep counts") {
    FiniteField f27(3, 3);
    auto r = verify_hasse_davenport(f27);
    CHECK(r.tested == 26);
    CHECK(r.failed == 0);
    CHECK(r.passed == 26);
    CHECK(r.tested == r.passed + r.failed);
}

TEST_CASE("lemma1 on F9 has zero failures") {
    auto r = verify_lemma1(FiniteField(3, 2));
    CHECK(r.failed == 0);
    CHECK(r.tested > 0);
}

TEST_CASE("hypothesis predicate matches its wording") {
    FiniteField f(13, 1);
    CHECK(lemma_hypothesis_violation(f, 0, 3) == std::string("A trivial"));
    // A = chi_1, B = chi_2: A^2 conj(B) = chi_0
    CHECK(lemma_hypothesis_violation(f, 1, 2) == std::string("A^2 conj(B) trivial"));
    // A = chi_1, B = phi A = chi_7: phi A conj(B) = chi_0
    CHECK(lemma_hypothesis_violation(f, 1, 7) == std::string("phi A conj(B) trivial"));
    CHECK(lemma_hypothesis_violation(f, 1, 3) == nullptr);
}

TEST_CASE("lemma1 skip accounting against independent enumeration") {
    FiniteField f(13, 1);
    auto r = verify_lemma1(f);
    const std::uint64_t qm1 = 12, q = 13;
    std::uint64_t adm = admissible_pairs(f);
    CHECK(r.tested == adm * (q - 2));
    CHECK(skip_count(r, "y in {0,1}") == qm1 * qm1 * 2);
    CHECK(r.tested + r.skipped_total() == qm1 * qm1 * q);
    CHECK(r.failed == 0);
}

TEST_CASE("alpha_beta matches lemma1 skip accounting exactly") {
    for (auto [p, n] : {std::pair{5u, 1u}, {13u, 1u}, {3u, 2u}}) {
        FiniteField f(p, n);
        auto r1 = verify_lemma1(f);
        auto r2 = verify_alpha_beta(f);
        CHECK(r1.failed == 0);
        CHECK(r2.failed == 0);
        CHECK(r1.tested == r2.tested);
        REQUIRE(r1.skipped.size() == r2.skipped.size());
        for (std::size_t i = 0; i < r1.skipped.size(); ++i) {
            CHECK(r1.skipped[i].reason == r2.skipped[i].reason);
            CHECK(r1.skipped[i].count == r2.skipped[i].count);
        }
    }
}

TEST_CASE("one admissible alpha/beta tuple cross-checked through the public API") {
    FiniteField f(5, 1);
    GaussTable t(f);
    engine::ExactBackend bk(t);
    // (A, B) = (chi_1, chi_0) passes all three hypotheses; y = g^2.
    REQUIRE(lemma_hypothesis_violation(f, 1, 0) == nullptr);
    FieldElement y = f.generator_pow(2);
    auto alpha = bk.to_cyc(engine::alpha_value(bk, 1, 0, y));
    auto beta = bk.to_cyc(engine::beta_value(bk, 1, 0, y));
    CHECK(alpha == beta);

    // Rebuild alpha independently: G(A^2 conj B) G(phi conj A B) *
    // sum_t (conj A)^2 B(1-t) phi A conj(B)(y - t^2).
    Character A = character(f, 1), B = character(f, 0), phi = quadratic(f);
    CycNumber sum(t.context());
    Character c1 = char_product(char_pow(char_conj(A), 2), B);
    Character c2 = char_product(phi, char_product(A, char_conj(B)));
    for (std::uint32_t ti = 0; ti < f.q(); ++ti) {
        FieldElement tt{ti};
        sum = sum + eval(c1, f.sub(f.one(), tt)) * eval(c2, f.sub(y, f.mul(tt, tt)));
    }
    auto g1 = gauss(t, char_product(char_pow(A, 2), char_conj(B)));
    auto g2 = gauss(t, char_product(phi, char_product(char_conj(A), B)));
    CHECK(alpha == g1 * g2 * sum);
}

TEST_CASE("transformation constant: conjugate-inverse route equals extended-gcd division") {
    // K = G(A^2 conj B) G(phi conj A B) / (G(phi) G(A)), evaluated by the
    // engine with 1/G(X) = conj(G(X))/q and independently with
    // CycNumber::operator/ (inverse mod Phi_m by extended gcd).
    for (auto [p, n] : {std::pair{5u, 1u}, {3u, 2u}}) {
        FiniteField f(p, n);
        GaussTable t(f);
        engine::ExactBackend bk(t);
        Character phi = quadratic(f);
        for (std::uint32_t ja = 1; ja < f.q() - 1; ++ja)
            for (std::uint32_t jb = 0; jb < f.q() - 1; ++jb) {
                if (lemma_hypothesis_violation(f, ja, jb)) continue;
                auto k_engine = bk.to_cyc(engine::gauss_ratio_constant(bk, ja, jb));
                Character A = character(f, ja), B = character(f, jb);
                auto k_div = gauss(t, char_product(char_pow(A, 2), char_conj(B))) *
                             gauss(t, char_product(phi, char_product(char_conj(A), B))) /
                             (gauss(t, phi) * gauss(t, A));
                REQUIRE(k_engine == k_div);
            }
    }
}

TEST_CASE("thm2 sweep on F13 with independent skip accounting") {
    FiniteField f(13, 1);
    auto r = verify_thm2(f);
    const std::uint64_t qm1 = 12, q = 13;
    std::uint64_t adm = admissible_pairs(f);
    CHECK(r.failed == 0);
    // x = -1 is excluded for every pair; every other x (including 0, 1, +-i)
    // is tested on admissible pairs.
    CHECK(r.tested == adm * (q - 1));
    CHECK(skip_count(r, "x = -1") == qm1 * qm1);
    std::uint64_t hyp_skips = r.skipped_total() - qm1 * qm1;
    CHECK(hyp_skips == (qm1 * qm1 - adm) * (q - 1));
}

TEST_CASE("eq31 records edge arguments separately") {
    FiniteField f(13, 1);
    auto r = verify_eq31(f);
    CHECK(r.failed == 0);
    std::uint64_t adm = admissible_pairs(f);
    REQUIRE(r.observations.size() == 1);
    CHECK(r.observations[0].label == "x in {0,1,i,-i}");
    CHECK(r.observations[0].computed == adm * 4);
    MESSAGE("eq31 edge-x agreement: ", r.observations[0].agreed, "/", r.observations[0].computed);
    CHECK(r.tested == adm * (13 - 1 - 4));
}

TEST_CASE("thm3 counts, degenerate D included") {
    FiniteField f5(5, 1);
    auto r = verify_thm3(f5, QuarticChoice::chi4);
    CHECK(r.failed == 0);
    CHECK(r.tested == 4 * 2);  // all D (trivial and quartic included), z outside {0,1,-1}
    CHECK(skip_count(r, "z in {0,1,-1}") == 4 * 3);
    CHECK(r.variant == "chi4");

    auto r13 = verify_thm3(FiniteField(13, 1), QuarticChoice::chi4bar);
    CHECK(r13.failed == 0);
    CHECK(r13.tested == 12 * 10);
    CHECK(r13.variant == "chi4bar");
}

TEST_CASE("thm3 inapplicable when q != 1 mod 4") {
    auto r = verify_thm3(FiniteField(7, 1), QuarticChoice::chi4);
    CHECK(r.inapplicable.has_value());
    CHECK(r.tested == 0);
    auto r27 = verify_thm3(FiniteField(3, 3), QuarticChoice::chi4bar);
    CHECK(r27.inapplicable.has_value());
}

TEST_CASE("eq42 sweep with x = 0 skipped") {
    FiniteField f(5, 1);
    auto r = verify_eq42(f);
    CHECK(r.failed == 0);
    CHECK(r.tested == 4ull * 4 * 4 * 4);
    CHECK(skip_count(r, "x = 0") == 4ull * 4 * 4);
}

TEST_CASE("run_sweep dispatch and errors") {
    IdentitySweep sw;
    sw.id = IdentityId::hasse_davenport;
    sw.field = "3^3";
    auto r = run_sweep(sw);
    CHECK(r.tested == 26);
    CHECK(r.field == "3^3");

    sw.field = "4";
    CHECK_THROWS_AS(run_sweep(sw), std::invalid_argument);

    CHECK(parse_identity("thm2") == IdentityId::thm2);
    CHECK(!parse_identity("nope").has_value());
    CHECK(identity_name(IdentityId::alpha_beta) == "alpha_beta");
}

TEST_CASE("filters restrict the tuple space") {
    FiniteField f(13, 1);
    VerifyOptions opt;
    opt.filter.a_exponents = std::vector<std::uint32_t>{1, 2, 3};
    auto r = verify_thm2(f, opt);
    CHECK(r.failed == 0);
    CHECK(r.tested + r.skipped_total() == 3ull * 12 * 13);
}

TEST_CASE("reports are deterministic across parallelism") {
    FiniteField f(13, 1);
    VerifyOptions o1, o8;
    o1.jobs = 1;
    o8.jobs = 8;
    auto r1 = verify_thm2(f, o1);
    auto r8 = verify_thm2(f, o8);
    CHECK(report_to_json(r1, false).dump() == report_to_json(r8, false).dump());

    o1.backend = o8.backend = BackendKind::floating;
    auto fr1 = verify_lemma1(f, o1);
    auto fr8 = verify_lemma1(f, o8);
    CHECK(report_to_json(fr1, false).dump() == report_to_json(fr8, false).dump());
}

TEST_CASE("float and exact backends agree on the pass/fail partition") {
    for (auto [p, n] : {std::pair{5u, 1u}, {3u, 2u}, {13u, 1u}}) {
        FiniteField f(p, n);
        VerifyOptions fo;
        fo.backend = BackendKind::floating;
        for (auto verify : {verify_lemma1, verify_fstar_forms, verify_eq42}) {
            auto re = verify(f, {});
            auto rf = verify(f, fo);
            CHECK(re.tested == rf.tested);
            CHECK(re.passed == rf.passed);
            CHECK(re.failed == rf.failed);
            CHECK(rf.max_abs_diff.has_value());
            CHECK(*rf.max_abs_diff < approx_epsilon(f.q()));
        }
    }
}

TEST_CASE("failure path: witnesses are recorded, sorted and serializable") {
    FiniteField f(5, 1);
    VerifyOptions opt;
    opt.backend = BackendKind::floating;
    opt.float_eps = 1e-30;  // below roundoff: every tested tuple fails
    auto r = verify_thm2(f, opt);
    CHECK(r.failed > 0);
    CHECK(r.tested == r.passed + r.failed);
    REQUIRE(!r.witnesses.empty());
    CHECK(r.witnesses.size() <= opt.witness_cap);
    // canonical order: ascending (a, b, x) tuples
    CHECK(r.witnesses[0].tuple[0].first == "a");
    auto j = report_to_json(r);
    auto back = report_from_json(j);
    CHECK(report_to_json(back).dump() == j.dump());
    CHECK(back.witnesses.size() == r.witnesses.size());
    CHECK(back.max_abs_diff.has_value());
}

TEST_CASE("exact report JSON round-trip") {
    auto r = verify_hasse_davenport(FiniteField(13, 1));
    auto j = report_to_json(r);
    CHECK(report_to_json(report_from_json(j)).dump() == j.dump());
    CHECK(j.at("identity") == "hasse_davenport");
    CHECK(j.at("field") == "13");
    CHECK(j.at("backend") == "exact");
    CHECK(j.contains("millis"));
}

TEST_CASE("verify_all_for_field produces the full battery") {
    auto rs = verify_all_for_field(FiniteField(5, 1));
    REQUIRE(rs.size() == 9);
    CHECK(rs[0].identity == "hasse_davenport");
    CHECK(rs[6].identity == "thm3");
    CHECK(rs[6].variant == "chi4");
    CHECK(rs[7].variant == "chi4bar");
    for (const auto& r : rs) {
        CHECK(r.failed == 0);
        CHECK(r.tested == r.passed + r.failed);
    }
}

TEST_CASE("witness values identify the discrepancy") {
    FiniteField f(5, 1);
    VerifyOptions opt;
    opt.backend = BackendKind::floating;
    opt.float_eps = 1e-30;
    opt.witness_cap = 3;
    auto r = verify_hasse_davenport(f, opt);
    REQUIRE(!r.witnesses.empty());
    CHECK(r.witnesses.size() <= 3);
    const auto& w = r.witnesses[0];
    CHECK(w.lhs.contains("re"));
    CHECK(w.rhs.contains("im"));
    CHECK(w.diff.contains("re"));
    double dre = w.diff.at("re").get<double>(), dim = w.diff.at("im").get<double>();
    CHECK(std::hypot(dre, dim) > 0.0);  // the recorded difference is the actual residual
}

}  // TEST_SUITE
