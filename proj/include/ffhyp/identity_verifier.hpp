#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ffhyp/finite_field.hpp"

namespace ffhyp {

enum class IdentityId {
    hasse_davenport,
    fstar_forms,
    lemma1,
    alpha_beta,
    thm2,
    eq31,
    thm3,
    eq42,
};

enum class BackendKind { exact, floating };
enum class QuarticChoice { chi4, chi4bar };

std::string identity_name(IdentityId id);
std::optional<IdentityId> parse_identity(const std::string& name);

/// Optional restriction of the tuple space; unfiltered coordinates sweep
/// their full range.  Filtered-out tuples are not part of the sweep at all
/// (they are neither tested nor counted as skipped).
struct SweepFilter {
    std::optional<std::vector<std::uint32_t>> a_exponents;
    std::optional<std::vector<std::uint32_t>> b_exponents;
    std::optional<std::vector<std::uint32_t>> x_indices;
};

struct IdentitySweep {
    IdentityId id = IdentityId::hasse_davenport;
    std::string field;  // "p^n"
    BackendKind backend = BackendKind::exact;
    SweepFilter filter;
    QuarticChoice quartic = QuarticChoice::chi4;  // thm3 only
};

struct SkipCount {
    std::string reason;
    std::uint64_t count = 0;
};

/// A failing tuple, with both sides and their difference (exact CycNumber
/// JSON or float {re, im}).
struct Witness {
    std::vector<std::pair<std::string, std::string>> tuple;
    nlohmann::ordered_json lhs, rhs, diff;
};

/// Outcomes recorded outside the pass/fail accounting: the F* C = D bucket
/// and the eq31 edge arguments x in {0, 1, i, -i}.
struct Observation {
    std::string label;
    std::uint64_t computed = 0;
    std::uint64_t agreed = 0;
};

struct IdentityReport {
    std::string identity;
    std::string field;
    std::string backend = "exact";
    std::optional<std::string> variant;  // thm3: "chi4" / "chi4bar"
    std::uint64_t tested = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::vector<SkipCount> skipped;
    std::vector<Witness> witnesses;
    std::vector<Observation> observations;
    std::optional<double> max_abs_diff;  // float backend, over tested tuples
    std::optional<std::string> inapplicable;
    std::uint64_t millis = 0;

    std::uint64_t skipped_total() const;
    bool ok() const { return failed == 0; }
};

struct VerifyOptions {
    BackendKind backend = BackendKind::exact;
    unsigned jobs = 0;  // 0: FFHYP_JOBS env var, else hardware concurrency
    SweepFilter filter;
    std::optional<double> float_eps;  // overrides 1e-6*q (used by tests)
    std::size_t witness_cap = 100;
};

IdentityReport verify_hasse_davenport(const FiniteField& f, const VerifyOptions& opt = {});
IdentityReport verify_fstar_forms(const FiniteField& f, const VerifyOptions& opt = {});
IdentityReport verify_lemma1(const FiniteField& f, const VerifyOptions& opt = {});
IdentityReport verify_alpha_beta(const FiniteField& f, const VerifyOptions& opt = {});
IdentityReport verify_thm2(const FiniteField& f, const VerifyOptions& opt = {});
IdentityReport verify_eq31(const FiniteField& f, const VerifyOptions& opt = {});
IdentityReport verify_thm3(const FiniteField& f, QuarticChoice choice, const VerifyOptions& opt = {});
IdentityReport verify_eq42(const FiniteField& f, const VerifyOptions& opt = {});

/// Dispatches on sweep.id; builds the field from the descriptor.
/// Throws std::invalid_argument for unknown fields or oversized sweeps.
IdentityReport run_sweep(const IdentitySweep& sweep, unsigned jobs = 0);

/// The eight finite-field sweeps for one field (thm3 in both quartic
/// variants; inapplicable when q != 1 mod 4).
std::vector<IdentityReport> verify_all_for_field(const FiniteField& f, const VerifyOptions& opt = {});

/// Skip reason when the Lemma 1 hypotheses fail for (A, B) = (chi_ja, chi_jb),
/// nullptr when the pair is admissible.  Shared verbatim by the lemma1,
/// alpha_beta, thm2 and eq31 sweeps.
const char* lemma_hypothesis_violation(const FiniteField& f, std::uint32_t ja, std::uint32_t jb);

nlohmann::ordered_json report_to_json(const IdentityReport& r, bool include_millis = true);
IdentityReport report_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json reports_to_json(const std::vector<IdentityReport>& rs, bool include_millis = true);

unsigned default_jobs();

}  // namespace ffhyp
