#include "ffhyp/identity_verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "ffhyp/engine.hpp"

namespace ffhyp {

namespace {

using engine::ExactBackend;
using engine::FloatBackend;
using engine::chexp;
using engine::jmod;

constexpr std::uint64_t kMaxSweepSize = 1ull << 36;

struct Meta {
    std::vector<const char*> reasons;
    std::vector<const char*> obs;
};

Meta meta_for(IdentityId id) {
    switch (id) {
        case IdentityId::hasse_davenport:
            return {{}, {}};
        case IdentityId::fstar_forms:
            return {{"x in {0,1}"}, {"C = D"}};
        case IdentityId::lemma1:
        case IdentityId::alpha_beta:
            return {{"y in {0,1}", "A trivial", "A^2 conj(B) trivial", "phi A conj(B) trivial"}, {}};
        case IdentityId::thm2:
            return {{"x = -1", "A trivial", "A^2 conj(B) trivial", "phi A conj(B) trivial"}, {}};
        case IdentityId::eq31:
            return {{"x = -1", "A trivial", "A^2 conj(B) trivial", "phi A conj(B) trivial"},
                    {"x in {0,1,i,-i}"}};
        case IdentityId::thm3:
            return {{"z in {0,1,-1}"}, {}};
        case IdentityId::eq42:
            return {{"x = 0"}, {}};
    }
    throw std::invalid_argument("unknown identity");
}

std::uint64_t domain_size(IdentityId id, const FiniteField& f) {
    const std::uint64_t q = f.q(), qm1 = q - 1;
    switch (id) {
        case IdentityId::hasse_davenport:
            return qm1;
        case IdentityId::fstar_forms:
        case IdentityId::lemma1:
        case IdentityId::alpha_beta:
        case IdentityId::thm2:
        case IdentityId::eq31:
            return qm1 * qm1 * q;
        case IdentityId::thm3:
            return qm1 * q;
        case IdentityId::eq42:
            return qm1 * qm1 * qm1 * q;
    }
    throw std::invalid_argument("unknown identity");
}

int lemma_violation_index(const FiniteField& f, std::uint32_t ja, std::uint32_t jb) {
    if (ja == 0) return 0;
    if (jmod(f, 2 * static_cast<std::int64_t>(ja) - jb) == 0) return 1;
    std::uint32_t h = (f.q() - 1) / 2;
    if (jmod(f, static_cast<std::int64_t>(h) + ja - jb) == 0) return 2;
    return -1;
}

struct Matcher {
    std::vector<std::uint32_t> set;
    bool any = true;
    explicit Matcher(const std::optional<std::vector<std::uint32_t>>& v) {
        if (v) {
            any = false;
            set = *v;
            std::sort(set.begin(), set.end());
        }
    }
    bool ok(std::uint32_t x) const { return any || std::binary_search(set.begin(), set.end(), x); }
};

struct Filt {
    Matcher a, b, x;
    explicit Filt(const SweepFilter& f) : a(f.a_exponents), b(f.b_exponents), x(f.x_indices) {}
};

struct Partial {
    std::uint64_t tested = 0, passed = 0, failed = 0;
    std::vector<std::uint64_t> skips;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> obs;  // computed, agreed
    double maxdiff = 0.0;
    std::vector<Witness> witnesses;
};

nlohmann::ordered_json value_json(const ExactBackend& bk, const engine::ZetaSum& v) {
    return nlohmann::ordered_json::parse(bk.to_cyc(v).to_json());
}

nlohmann::ordered_json value_json(const FloatBackend&, const std::complex<double>& v) {
    return nlohmann::ordered_json{{"re", v.real()}, {"im", v.imag()}};
}

nlohmann::ordered_json difference_json(const ExactBackend& bk, const engine::ZetaSum& a,
                                       const engine::ZetaSum& b) {
    return nlohmann::ordered_json::parse((bk.to_cyc(a) - bk.to_cyc(b)).to_json());
}

nlohmann::ordered_json difference_json(const FloatBackend&, const std::complex<double>& a,
                                       const std::complex<double>& b) {
    auto d = a - b;
    return nlohmann::ordered_json{{"re", d.real()}, {"im", d.imag()}};
}

template <class B>
struct Rec {
    const B& bk;
    Partial& p;
    std::size_t cap;

    void skip(std::size_t reason) { ++p.skips[reason]; }

    template <class CoordsFn>
    void test(const typename B::Value& lhs, const typename B::Value& rhs, CoordsFn&& coords) {
        ++p.tested;
        if (bk.equal(lhs, rhs)) {
            ++p.passed;
            if constexpr (!B::exact) p.maxdiff = std::max(p.maxdiff, bk.abs_diff(lhs, rhs));
        } else {
            ++p.failed;
            if (p.witnesses.size() < cap)
                p.witnesses.push_back(Witness{coords(), value_json(bk, lhs), value_json(bk, rhs),
                                              difference_json(bk, lhs, rhs)});
        }
    }

    void observe(std::size_t label, const typename B::Value& lhs, const typename B::Value& rhs) {
        ++p.obs[label].first;
        if (bk.equal(lhs, rhs)) ++p.obs[label].second;
    }
};

std::string jstr(std::uint32_t j) { return std::to_string(j); }

// --- per-identity chunk runners over the flattened tuple index ---

template <class B>
void run_hd(const B& bk, const Filt& filt, std::uint64_t lo, std::uint64_t hi, Rec<B>& rec) {
    for (std::uint64_t i = lo; i < hi; ++i) {
        auto j = static_cast<std::uint32_t>(i);
        if (!filt.a.ok(j)) continue;
        auto [lhs, rhs] = engine::hd_sides(bk, j);
        rec.test(lhs, rhs, [&] {
            return std::vector<std::pair<std::string, std::string>>{{"a", jstr(j)}};
        });
    }
}

template <class B>
void run_fstar_forms(const B& bk, const Filt& filt, std::uint64_t lo, std::uint64_t hi, Rec<B>& rec) {
    const FiniteField& f = bk.field();
    const std::uint64_t q = f.q(), qm1 = q - 1;
    std::uint64_t cur_pair = ~0ull;
    engine::FStarCache<B> cache;
    for (std::uint64_t i = lo; i < hi; ++i) {
        std::uint64_t pair = i / q;
        auto jc = static_cast<std::uint32_t>(pair / qm1);
        auto jd = static_cast<std::uint32_t>(pair % qm1);
        auto xi = static_cast<std::uint32_t>(i % q);
        if (!filt.a.ok(jc) || !filt.b.ok(jd) || !filt.x.ok(xi)) continue;
        if (xi <= 1) {  // x = 0 or x = 1
            rec.skip(0);
            continue;
        }
        if (pair != cur_pair) {
            cache = engine::make_fstar_cache_direct(bk, jc, jd);
            cur_pair = pair;
        }
        FieldElement x = f.element_from_index(xi);
        auto lhs = engine::fstar_charsum_value(bk, jc, jd, x, &cache);
        auto rhs = engine::fstar_point_value(bk, jc, jd, x);
        if (jc == jd) {
            rec.observe(0, lhs, rhs);
        } else {
            rec.test(lhs, rhs, [&] {
                return std::vector<std::pair<std::string, std::string>>{
                    {"c", jstr(jc)}, {"d", jstr(jd)}, {"x", f.format(x)}};
            });
        }
    }
}

template <class B, bool kAlphaBeta>
void run_lemma1_like(const B& bk, const Filt& filt, std::uint64_t lo, std::uint64_t hi, Rec<B>& rec) {
    const FiniteField& f = bk.field();
    const std::uint64_t q = f.q(), qm1 = q - 1;
    std::uint64_t cur_pair = ~0ull;
    int viol = -1;
    bool have_consts = false;
    typename B::Value k1{}, k2{};
    for (std::uint64_t i = lo; i < hi; ++i) {
        std::uint64_t pair = i / q;
        auto ja = static_cast<std::uint32_t>(pair / qm1);
        auto jb = static_cast<std::uint32_t>(pair % qm1);
        auto yi = static_cast<std::uint32_t>(i % q);
        if (!filt.a.ok(ja) || !filt.b.ok(jb) || !filt.x.ok(yi)) continue;
        if (yi <= 1) {
            rec.skip(0);
            continue;
        }
        if (pair != cur_pair) {
            viol = lemma_violation_index(f, ja, jb);
            have_consts = false;
            cur_pair = pair;
        }
        if (viol >= 0) {
            rec.skip(1 + viol);
            continue;
        }
        FieldElement y = f.element_from_index(yi);
        typename B::Value lhs, rhs;
        if constexpr (kAlphaBeta) {
            if (!have_consts) {
                k1 = engine::alpha_prefix(bk, ja, jb);
                k2 = engine::beta_prefix(bk, ja, jb);
                have_consts = true;
            }
            lhs = engine::alpha_value(bk, ja, jb, y, &k1);
            rhs = engine::beta_value(bk, ja, jb, y, &k2);
        } else {
            if (!have_consts) {
                k1 = engine::lemma1_constant(bk, ja, jb);
                have_consts = true;
            }
            lhs = engine::lemma1_lhs(bk, ja, jb, y);
            rhs = engine::lemma1_rhs(bk, ja, jb, y, k1);
        }
        rec.test(lhs, rhs, [&] {
            return std::vector<std::pair<std::string, std::string>>{
                {"a", jstr(ja)}, {"b", jstr(jb)}, {"y", f.format(y)}};
        });
    }
}

template <class B, bool kEq31>
void run_quadratic(const B& bk, const Filt& filt, std::uint64_t lo, std::uint64_t hi, Rec<B>& rec) {
    const FiniteField& f = bk.field();
    const std::uint64_t q = f.q(), qm1 = q - 1;
    const std::uint32_t minus_one = f.minus_one().index;
    // eq31 edge arguments: x in {0, 1, i, -i} (i only when q = 1 mod 4).
    std::uint32_t i_idx = q, mi_idx = q;
    if (kEq31 && f.q() % 4 == 1) {
        i_idx = f.sqrt_of_minus_one().index;
        mi_idx = f.neg(f.sqrt_of_minus_one()).index;
    }
    std::uint64_t cur_pair = ~0ull;
    int viol = -1;
    bool have_k = false;
    typename B::Value k{};
    for (std::uint64_t i = lo; i < hi; ++i) {
        std::uint64_t pair = i / q;
        auto ja = static_cast<std::uint32_t>(pair / qm1);
        auto jb = static_cast<std::uint32_t>(pair % qm1);
        auto xi = static_cast<std::uint32_t>(i % q);
        if (!filt.a.ok(ja) || !filt.b.ok(jb) || !filt.x.ok(xi)) continue;
        if (xi == minus_one) {
            rec.skip(0);
            continue;
        }
        if (pair != cur_pair) {
            viol = lemma_violation_index(f, ja, jb);
            have_k = false;
            cur_pair = pair;
        }
        if (viol >= 0) {
            rec.skip(1 + viol);
            continue;
        }
        FieldElement x = f.element_from_index(xi);
        if (!have_k) {
            k = kEq31 ? engine::eq31_constant(bk, ja, jb) : engine::thm2_constant(bk, ja, jb);
            have_k = true;
        }
        auto lhs = kEq31 ? engine::eq31_lhs(bk, ja, jb, x) : engine::thm2_lhs(bk, ja, jb, x);
        auto rhs = engine::quadratic_rhs(bk, ja, jb, x, k);
        if (kEq31 && (xi <= 1 || xi == i_idx || xi == mi_idx)) {
            rec.observe(0, lhs, rhs);
            continue;
        }
        rec.test(lhs, rhs, [&] {
            return std::vector<std::pair<std::string, std::string>>{
                {"a", jstr(ja)}, {"b", jstr(jb)}, {"x", f.format(x)}};
        });
    }
}

template <class B>
void run_thm3(const B& bk, QuarticChoice qc, const Filt& filt, std::uint64_t lo, std::uint64_t hi,
              Rec<B>& rec) {
    const FiniteField& f = bk.field();
    const std::uint64_t q = f.q(), qm1 = q - 1;
    const std::uint32_t j4 =
        qc == QuarticChoice::chi4 ? static_cast<std::uint32_t>(qm1) / 4
                                  : static_cast<std::uint32_t>(qm1) - static_cast<std::uint32_t>(qm1) / 4;
    const std::uint32_t minus_one = f.minus_one().index;
    for (std::uint64_t i = lo; i < hi; ++i) {
        auto jd = static_cast<std::uint32_t>(i / q);
        auto zi = static_cast<std::uint32_t>(i % q);
        if (!filt.a.ok(jd) || !filt.x.ok(zi)) continue;
        if (zi <= 1 || zi == minus_one) {
            rec.skip(0);
            continue;
        }
        FieldElement z = f.element_from_index(zi);
        auto lhs = engine::thm3_lhs(bk, jd, j4, z);
        auto rhs = engine::thm3_rhs(bk, jd, z);
        rec.test(lhs, rhs, [&] {
            return std::vector<std::pair<std::string, std::string>>{{"d", jstr(jd)},
                                                                    {"z", f.format(z)}};
        });
    }
}

template <class B>
void run_eq42(const B& bk, const Filt& filt, std::uint64_t lo, std::uint64_t hi, Rec<B>& rec) {
    const FiniteField& f = bk.field();
    const std::uint64_t q = f.q(), qm1 = q - 1;
    for (std::uint64_t i = lo; i < hi; ++i) {
        std::uint64_t triple = i / q;
        auto jc = static_cast<std::uint32_t>(triple % qm1);
        auto jb = static_cast<std::uint32_t>((triple / qm1) % qm1);
        auto ja = static_cast<std::uint32_t>(triple / (qm1 * qm1));
        auto xi = static_cast<std::uint32_t>(i % q);
        if (!filt.a.ok(ja) || !filt.b.ok(jb) || !filt.x.ok(xi)) continue;
        if (xi == 0) {
            rec.skip(0);
            continue;
        }
        FieldElement x = f.element_from_index(xi);
        auto lhs = engine::hyp2f1_value(bk, ja, jb, jc, x);
        auto rhs = engine::eq42_rhs(bk, ja, jb, jc, x);
        rec.test(lhs, rhs, [&] {
            return std::vector<std::pair<std::string, std::string>>{
                {"a", jstr(ja)}, {"b", jstr(jb)}, {"c", jstr(jc)}, {"x", f.format(x)}};
        });
    }
}

template <class B>
void run_chunk(IdentityId id, const B& bk, QuarticChoice qc, const Filt& filt, std::uint64_t lo,
               std::uint64_t hi, Rec<B>& rec) {
    switch (id) {
        case IdentityId::hasse_davenport:
            return run_hd(bk, filt, lo, hi, rec);
        case IdentityId::fstar_forms:
            return run_fstar_forms(bk, filt, lo, hi, rec);
        case IdentityId::lemma1:
            return run_lemma1_like<B, false>(bk, filt, lo, hi, rec);
        case IdentityId::alpha_beta:
            return run_lemma1_like<B, true>(bk, filt, lo, hi, rec);
        case IdentityId::thm2:
            return run_quadratic<B, false>(bk, filt, lo, hi, rec);
        case IdentityId::eq31:
            return run_quadratic<B, true>(bk, filt, lo, hi, rec);
        case IdentityId::thm3:
            return run_thm3(bk, qc, filt, lo, hi, rec);
        case IdentityId::eq42:
            return run_eq42(bk, filt, lo, hi, rec);
    }
}

template <class B>
IdentityReport run_with_backend(IdentityId id, const FiniteField& f, const B& bk, QuarticChoice qc,
                                const VerifyOptions& opt) {
    const Meta meta = meta_for(id);
    const std::uint64_t total = domain_size(id, f);
    if (total > kMaxSweepSize) throw std::invalid_argument("sweep too large");
    const Filt filt(opt.filter);

    unsigned jobs = opt.jobs ? opt.jobs : default_jobs();
    if (jobs < 1) jobs = 1;
    std::uint64_t chunk = (total + jobs - 1) / jobs;
    if (chunk == 0) chunk = 1;

    std::vector<Partial> partials(jobs);
    for (auto& p : partials) {
        p.skips.assign(meta.reasons.size(), 0);
        p.obs.assign(meta.obs.size(), {0, 0});
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        std::uint64_t lo = t * chunk;
        std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, t, lo, hi] {
            try {
                Rec<B> rec{bk, partials[t], opt.witness_cap};
                run_chunk(id, bk, qc, filt, lo, hi, rec);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    IdentityReport r;
    r.identity = identity_name(id);
    r.field = f.descriptor();
    r.backend = B::exact ? "exact" : "float";
    if (id == IdentityId::thm3) r.variant = qc == QuarticChoice::chi4 ? "chi4" : "chi4bar";
    std::vector<std::uint64_t> skips(meta.reasons.size(), 0);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> obs(meta.obs.size(), {0, 0});
    double maxdiff = 0.0;
    for (auto& p : partials) {
        r.tested += p.tested;
        r.passed += p.passed;
        r.failed += p.failed;
        for (std::size_t i = 0; i < skips.size(); ++i) skips[i] += p.skips[i];
        for (std::size_t i = 0; i < obs.size(); ++i) {
            obs[i].first += p.obs[i].first;
            obs[i].second += p.obs[i].second;
        }
        maxdiff = std::max(maxdiff, p.maxdiff);
        for (auto& w : p.witnesses) {
            if (r.witnesses.size() < opt.witness_cap) r.witnesses.push_back(std::move(w));
        }
    }
    for (std::size_t i = 0; i < skips.size(); ++i)
        if (skips[i] > 0) r.skipped.push_back({meta.reasons[i], skips[i]});
    for (std::size_t i = 0; i < obs.size(); ++i)
        r.observations.push_back({meta.obs[i], obs[i].first, obs[i].second});
    if constexpr (!B::exact) r.max_abs_diff = maxdiff;
    return r;
}

IdentityReport run_one(IdentityId id, const FiniteField& f, const GaussTable* table,
                       QuarticChoice qc, const VerifyOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    IdentityReport r;
    if (id == IdentityId::thm3 && f.q() % 4 != 1) {
        r.identity = identity_name(id);
        r.field = f.descriptor();
        r.backend = opt.backend == BackendKind::exact ? "exact" : "float";
        r.variant = qc == QuarticChoice::chi4 ? "chi4" : "chi4bar";
        r.inapplicable = "q != 1 (mod 4)";
    } else if (opt.backend == BackendKind::exact) {
        std::optional<GaussTable> local;
        if (!table) local.emplace(f);
        ExactBackend bk(table ? *table : *local);
        r = run_with_backend(id, f, bk, qc, opt);
    } else {
        FloatBackend bk(f, opt.float_eps.value_or(-1.0));
        r = run_with_backend(id, f, bk, qc, opt);
    }
    r.millis = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count());
    return r;
}

}  // namespace

std::string identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::hasse_davenport: return "hasse_davenport";
        case IdentityId::fstar_forms: return "fstar_forms";
        case IdentityId::lemma1: return "lemma1";
        case IdentityId::alpha_beta: return "alpha_beta";
        case IdentityId::thm2: return "thm2";
        case IdentityId::eq31: return "eq31";
        case IdentityId::thm3: return "thm3";
        case IdentityId::eq42: return "eq42";
    }
    return "?";
}

std::optional<IdentityId> parse_identity(const std::string& name) {
    for (IdentityId id : {IdentityId::hasse_davenport, IdentityId::fstar_forms, IdentityId::lemma1,
                          IdentityId::alpha_beta, IdentityId::thm2, IdentityId::eq31, IdentityId::thm3,
                          IdentityId::eq42}) {
        if (identity_name(id) == name) return id;
    }
    return std::nullopt;
}

std::uint64_t IdentityReport::skipped_total() const {
    std::uint64_t s = 0;
    for (const auto& k : skipped) s += k.count;
    return s;
}

const char* lemma_hypothesis_violation(const FiniteField& f, std::uint32_t ja, std::uint32_t jb) {
    static const char* kReasons[] = {"A trivial", "A^2 conj(B) trivial", "phi A conj(B) trivial"};
    int idx = lemma_violation_index(f, ja, jb);
    return idx < 0 ? nullptr : kReasons[idx];
}

IdentityReport verify_hasse_davenport(const FiniteField& f, const VerifyOptions& opt) {
    return run_one(IdentityId::hasse_davenport, f, nullptr, QuarticChoice::chi4, opt);
}
IdentityReport verify_fstar_forms(const FiniteField& f, const VerifyOptions& opt) {
    return run_one(IdentityId::fstar_forms, f, nullptr, QuarticChoice::chi4, opt);
}
IdentityReport verify_lemma1(const FiniteField& f, const VerifyOptions& opt) {
    return run_one(IdentityId::lemma1, f, nullptr, QuarticChoice::chi4, opt);
}
IdentityReport verify_alpha_beta(const FiniteField& f, const VerifyOptions& opt) {
    return run_one(IdentityId::alpha_beta, f, nullptr, QuarticChoice::chi4, opt);
}
IdentityReport verify_thm2(const FiniteField& f, const VerifyOptions& opt) {
    return run_one(IdentityId::thm2, f, nullptr, QuarticChoice::chi4, opt);
}
IdentityReport verify_eq31(const FiniteField& f, const VerifyOptions& opt) {
    return run_one(IdentityId::eq31, f, nullptr, QuarticChoice::chi4, opt);
}
IdentityReport verify_thm3(const FiniteField& f, QuarticChoice choice, const VerifyOptions& opt) {
    return run_one(IdentityId::thm3, f, nullptr, choice, opt);
}
IdentityReport verify_eq42(const FiniteField& f, const VerifyOptions& opt) {
    return run_one(IdentityId::eq42, f, nullptr, QuarticChoice::chi4, opt);
}

IdentityReport run_sweep(const IdentitySweep& sweep, unsigned jobs) {
    FiniteField f = FiniteField::from_descriptor(sweep.field);
    VerifyOptions opt;
    opt.backend = sweep.backend;
    opt.jobs = jobs;
    opt.filter = sweep.filter;
    return run_one(sweep.id, f, nullptr, sweep.quartic, opt);
}

std::vector<IdentityReport> verify_all_for_field(const FiniteField& f, const VerifyOptions& opt) {
    std::optional<GaussTable> table;
    if (opt.backend == BackendKind::exact) table.emplace(f);
    const GaussTable* tp = table ? &*table : nullptr;
    std::vector<IdentityReport> out;
    out.push_back(run_one(IdentityId::hasse_davenport, f, tp, QuarticChoice::chi4, opt));
    out.push_back(run_one(IdentityId::fstar_forms, f, tp, QuarticChoice::chi4, opt));
    out.push_back(run_one(IdentityId::lemma1, f, tp, QuarticChoice::chi4, opt));
    out.push_back(run_one(IdentityId::alpha_beta, f, tp, QuarticChoice::chi4, opt));
    out.push_back(run_one(IdentityId::thm2, f, tp, QuarticChoice::chi4, opt));
    out.push_back(run_one(IdentityId::eq31, f, tp, QuarticChoice::chi4, opt));
    out.push_back(run_one(IdentityId::thm3, f, tp, QuarticChoice::chi4, opt));
    out.push_back(run_one(IdentityId::thm3, f, tp, QuarticChoice::chi4bar, opt));
    out.push_back(run_one(IdentityId::eq42, f, tp, QuarticChoice::chi4, opt));
    return out;
}

nlohmann::ordered_json report_to_json(const IdentityReport& r, bool include_millis) {
    nlohmann::ordered_json j;
    j["identity"] = r.identity;
    j["field"] = r.field;
    j["backend"] = r.backend;
    if (r.variant) j["variant"] = *r.variant;
    j["tested"] = r.tested;
    j["passed"] = r.passed;
    j["skipped"] = nlohmann::ordered_json::array();
    for (const auto& s : r.skipped) j["skipped"].push_back({{"reason", s.reason}, {"count", s.count}});
    j["failed"] = r.failed;
    j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : r.witnesses) {
        nlohmann::ordered_json tj;
        for (const auto& [k, v] : w.tuple) tj[k] = v;
        j["witnesses"].push_back(
            {{"tuple", tj}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"diff", w.diff}});
    }
    if (!r.observations.empty()) {
        j["observations"] = nlohmann::ordered_json::array();
        for (const auto& o : r.observations)
            j["observations"].push_back(
                {{"label", o.label}, {"computed", o.computed}, {"agreed", o.agreed}});
    }
    if (r.max_abs_diff) j["max_abs_diff"] = *r.max_abs_diff;
    if (r.inapplicable) j["inapplicable"] = *r.inapplicable;
    j["millis"] = include_millis ? r.millis : 0;
    return j;
}

IdentityReport report_from_json(const nlohmann::ordered_json& j) {
    IdentityReport r;
    r.identity = j.at("identity").get<std::string>();
    r.field = j.at("field").get<std::string>();
    r.backend = j.at("backend").get<std::string>();
    if (j.contains("variant")) r.variant = j.at("variant").get<std::string>();
    r.tested = j.at("tested").get<std::uint64_t>();
    r.passed = j.at("passed").get<std::uint64_t>();
    for (const auto& s : j.at("skipped"))
        r.skipped.push_back({s.at("reason").get<std::string>(), s.at("count").get<std::uint64_t>()});
    r.failed = j.at("failed").get<std::uint64_t>();
    for (const auto& w : j.at("witnesses")) {
        Witness wit;
        for (auto it = w.at("tuple").begin(); it != w.at("tuple").end(); ++it)
            wit.tuple.emplace_back(it.key(), it.value().get<std::string>());
        wit.lhs = w.at("lhs");
        wit.rhs = w.at("rhs");
        wit.diff = w.at("diff");
        r.witnesses.push_back(std::move(wit));
    }
    if (j.contains("observations"))
        for (const auto& o : j.at("observations"))
            r.observations.push_back({o.at("label").get<std::string>(),
                                      o.at("computed").get<std::uint64_t>(),
                                      o.at("agreed").get<std::uint64_t>()});
    if (j.contains("max_abs_diff")) r.max_abs_diff = j.at("max_abs_diff").get<double>();
    if (j.contains("inapplicable")) r.inapplicable = j.at("inapplicable").get<std::string>();
    r.millis = j.at("millis").get<std::uint64_t>();
    return r;
}

nlohmann::ordered_json reports_to_json(const std::vector<IdentityReport>& rs, bool include_millis) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : rs) out.push_back(report_to_json(r, include_millis));
    return out;
}

unsigned default_jobs() {
    if (const char* env = std::getenv("FFHYP_JOBS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace ffhyp
