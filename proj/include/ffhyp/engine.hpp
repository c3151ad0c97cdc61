#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "ffhyp/character_sums.hpp"

// Shared evaluation core for both backends.  Every character-sum formula is
// written once, templated over a backend:
//
//   ExactBackend — values are integer monomial-count vectors in the group
//   ring Z[x]/(x^m - 1) with one exact rational scale factor; equality is
//   decided by reducing the cross-scaled difference to canonical form mod
//   Phi_m, so a "pass" is an exact statement in Q(zeta_m).
//
//   FloatBackend — values are complex doubles; equality means
//   |lhs - rhs| <= eps, with eps = 1e-6 * q unless overridden.
//
// Backends are immutable after construction apart from a relaxed operation
// counter, and safe to share across sweep workers.
namespace ffhyp::engine {

struct ZetaSum {
    std::vector<mpz_class> v;  // length m
    mpq_class scale{1};
};

class ExactBackend {
public:
    using Value = ZetaSum;
    static constexpr bool exact = true;

    explicit ExactBackend(const GaussTable& table)
        : table_(&table), f_(&table.field()), ctx_(table.context().get()), m_(ctx_->m()) {}

    const FiniteField& field() const { return *f_; }
    const GaussTable& table() const { return *table_; }

    Value zero() const { return {std::vector<mpz_class>(m_), 1}; }

    Value from_int(long k) const {
        Value z = zero();
        z.v[0] = k;
        return z;
    }

    Value mono(std::uint32_t e) const {
        Value z = zero();
        z.v[e] = 1;
        return z;
    }

    // Raw count accumulation; only valid while a.scale is untouched.
    void add_mono(Value& a, std::uint32_t e) const { ++a.v[e]; }

    void scale_by(Value& a, const mpq_class& s) const { a.scale *= s; }

    void negate(Value& a) const { a.scale = -a.scale; }

    Value mul(const Value& a, const Value& b) const {
        Value out;
        out.v.assign(m_, 0);
        out.scale = a.scale * b.scale;
        std::size_t na = 0, nb = 0;
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (a.v[i] != 0) ++na;
            if (b.v[i] != 0) ++nb;
        }
        const Value& s = (na <= nb) ? a : b;
        const Value& d = (na <= nb) ? b : a;
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (s.v[i] == 0) continue;
            std::uint32_t k = i;
            for (std::uint32_t j = 0; j < m_; ++j) {
                if (d.v[j] != 0) mpz_addmul(out.v[k].get_mpz_t(), s.v[i].get_mpz_t(), d.v[j].get_mpz_t());
                if (++k == m_) k = 0;
            }
        }
        return out;
    }

    void mul_mono_inplace(Value& a, std::uint32_t e) const {
        if (e == 0) return;
        std::vector<mpz_class> out(m_);
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint32_t k = i + e;
            if (k >= m_) k -= m_;
            out[k] = std::move(a.v[i]);
        }
        a.v = std::move(out);
    }

    // acc += x * zeta^e, reconciling the two rational scales exactly.
    void add_shifted(Value& acc, const Value& x, std::uint32_t e) const {
        mpz_class ma, mx;
        acc.scale = common_scale(acc.scale, x.scale, ma, mx);
        if (ma != 1)
            for (auto& c : acc.v) c *= ma;
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (x.v[i] == 0) continue;
            std::uint32_t k = i + e;
            if (k >= m_) k -= m_;
            mpz_addmul(acc.v[k].get_mpz_t(), x.v[i].get_mpz_t(), mx.get_mpz_t());
        }
    }

    void add_in(Value& acc, const Value& x) const { add_shifted(acc, x, 0); }

    bool is_zero(const Value& a) const {
        std::vector<mpz_class> canon(ctx_->phi());
        ctx_->reduce_accumulate(canon, a.v.data());
        for (const auto& c : canon)
            if (c != 0) return false;
        return true;
    }

    bool equal(const Value& a, const Value& b) const {
        mpz_class ma, mb;
        common_scale(a.scale, b.scale, ma, mb);
        std::vector<mpz_class> diff(m_);
        for (std::uint32_t i = 0; i < m_; ++i) {
            diff[i] = a.v[i] * ma;
            mpz_submul(diff[i].get_mpz_t(), b.v[i].get_mpz_t(), mb.get_mpz_t());
        }
        std::vector<mpz_class> canon(ctx_->phi());
        ctx_->reduce_accumulate(canon, diff.data());
        for (const auto& c : canon)
            if (c != 0) return false;
        return true;
    }

    double abs_diff(const Value&, const Value&) const { return 0.0; }

    Value gauss(std::uint32_t j) const {
        Value out = zero();
        const auto& raw = table_->raw(j);
        for (std::uint32_t e = 0; e < m_; ++e) out.v[e] = raw[e];
        return out;
    }

    // 1/G(chi_j): -1 for the trivial character (G(eps) = -1), otherwise
    // conj(G(chi_j))/q, by G(A) G(conj A) = A(-1) q together with
    // conj(G(A)) = A(-1) G(conj A).
    Value inv_gauss(std::uint32_t j) const {
        if (j == 0) return from_int(-1);
        Value out = zero();
        const auto& raw = table_->raw(j);
        for (std::uint32_t e = 0; e < m_; ++e)
            if (raw[e] != 0) out.v[(m_ - e) % m_] = raw[e];
        out.scale = mpq_class(1, f_->q());
        return out;
    }

    // chi_j(-1) as +/-1.
    int char_parity(std::uint32_t j) const {
        std::uint32_t qm1 = f_->q() - 1;
        return (static_cast<std::uint64_t>(j) * (qm1 / 2)) % qm1 == 0 ? 1 : -1;
    }

    CycNumber to_cyc(const Value& a) const {
        std::vector<mpz_class> canon(ctx_->phi());
        ctx_->reduce_accumulate(canon, a.v.data());
        std::vector<mpq_class> out(ctx_->phi());
        for (std::uint32_t i = 0; i < ctx_->phi(); ++i) {
            out[i] = mpq_class(canon[i]) * a.scale;
            out[i].canonicalize();
        }
        return CycNumber(table_->context(), std::move(out));
    }

    void count(std::uint64_t k) const { element_ops_.fetch_add(k, std::memory_order_relaxed); }
    std::uint64_t element_ops() const { return element_ops_.load(std::memory_order_relaxed); }

private:
    // sa = ma * g, sb = mb * g for the rational gcd g; ma, mb integers.
    static mpq_class common_scale(const mpq_class& sa, const mpq_class& sb, mpz_class& ma,
                                  mpz_class& mb) {
        mpz_class x = sa.get_num() * sb.get_den();
        mpz_class y = sb.get_num() * sa.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        if (g == 0) g = 1;
        ma = x / g;
        mb = y / g;
        mpq_class common(g, sa.get_den() * sb.get_den());
        common.canonicalize();
        return common;
    }

    const GaussTable* table_;
    const FiniteField* f_;
    const CycContext* ctx_;
    std::uint32_t m_;
    mutable std::atomic<std::uint64_t> element_ops_{0};
};

class FloatBackend {
public:
    using Value = std::complex<double>;
    static constexpr bool exact = false;

    explicit FloatBackend(const FiniteField& f, double eps = -1.0);

    const FiniteField& field() const { return *f_; }
    double epsilon() const { return eps_; }

    Value zero() const { return {0.0, 0.0}; }
    Value from_int(long k) const { return {static_cast<double>(k), 0.0}; }
    Value mono(std::uint32_t e) const { return root(e); }
    void add_mono(Value& a, std::uint32_t e) const { a += root(e); }
    void scale_by(Value& a, const mpq_class& s) const { a *= s.get_d(); }
    void negate(Value& a) const { a = -a; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    void mul_mono_inplace(Value& a, std::uint32_t e) const { a *= root(e); }
    void add_shifted(Value& acc, const Value& x, std::uint32_t e) const { acc += x * root(e); }
    void add_in(Value& acc, const Value& x) const { acc += x; }
    bool is_zero(const Value& a) const { return std::abs(a) <= eps_; }
    bool equal(const Value& a, const Value& b) const { return std::abs(a - b) <= eps_; }
    double abs_diff(const Value& a, const Value& b) const { return std::abs(a - b); }

    Value gauss(std::uint32_t j) const { return gauss_[j]; }
    Value inv_gauss(std::uint32_t j) const { return 1.0 / gauss_[j]; }
    int char_parity(std::uint32_t j) const {
        std::uint32_t qm1 = f_->q() - 1;
        return (static_cast<std::uint64_t>(j) * (qm1 / 2)) % qm1 == 0 ? 1 : -1;
    }

    Value root(std::uint32_t e) const {
        if (!roots_.empty()) return roots_[e];
        double t = 2.0 * std::numbers::pi * e / m_;
        return {std::cos(t), std::sin(t)};
    }

    void count(std::uint64_t k) const { element_ops_.fetch_add(k, std::memory_order_relaxed); }
    std::uint64_t element_ops() const { return element_ops_.load(std::memory_order_relaxed); }

private:
    const FiniteField* f_;
    std::uint32_t m_;
    double eps_;
    std::vector<Value> roots_;
    std::vector<Value> gauss_;
    mutable std::atomic<std::uint64_t> element_ops_{0};
};

// ---------------------------------------------------------------------------
// Formula layer.  Characters are passed as exponents j mod (q-1).

inline std::optional<std::uint32_t> chexp(const FiniteField& f, std::uint32_t j, FieldElement y) {
    if (y.index == 0) return std::nullopt;
    std::uint64_t e = static_cast<std::uint64_t>(f.p()) * j % f.conductor();
    return static_cast<std::uint32_t>(e * f.dlog(y) % f.conductor());
}

inline std::uint32_t jmod(const FiniteField& f, std::int64_t j) {
    std::int64_t qm1 = f.q() - 1;
    std::int64_t r = j % qm1;
    if (r < 0) r += qm1;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t jconj(const FiniteField& f, std::uint32_t j) {
    return (f.q() - 1 - j) % (f.q() - 1);
}

// J(A,B): Gauss-ratio with the standard special values.
template <class B>
typename B::Value jacobi_value(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    bk.count(1);
    if (ja == 0 && jb == 0) return bk.from_int(static_cast<long>(f.q()) - 2);
    if (ja == 0 || jb == 0) return bk.from_int(-1);
    std::uint32_t jab = jmod(f, static_cast<std::int64_t>(ja) + jb);
    if (jab == 0) return bk.from_int(-bk.char_parity(ja));
    return bk.mul(bk.mul(bk.gauss(ja), bk.gauss(jb)), bk.inv_gauss(jab));
}

// J(A,B) = sum_y A(y) B(1-y) by direct summation (q-sparse representation).
template <class B>
typename B::Value jacobi_direct_value(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    bk.count(f.q());
    auto acc = bk.zero();
    const std::uint32_t m = f.conductor();
    for (std::uint32_t yi = 0; yi < f.q(); ++yi) {
        FieldElement y = f.element_from_index(yi);
        auto e1 = chexp(f, ja, y);
        if (!e1) continue;
        auto e2 = chexp(f, jb, f.sub(f.one(), y));
        if (!e2) continue;
        bk.add_mono(acc, static_cast<std::uint32_t>((static_cast<std::uint64_t>(*e1) + *e2) % m));
    }
    return acc;
}

// (A over B) = B(-1)/q * J(A, conj B).
template <class B>
typename B::Value binomial_value(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    auto out = jacobi_value(bk, ja, jconj(f, jb));
    mpq_class s(bk.char_parity(jb), f.q());
    s.canonicalize();
    bk.scale_by(out, s);
    return out;
}

// 2F1(A,B;C | x) = eps(x)/q * sum_y B(y) (conj B)C(y-1) (conj A)(1-xy).
template <class B>
typename B::Value hyp2f1_value(const B& bk, std::uint32_t ja, std::uint32_t jb, std::uint32_t jc,
                               FieldElement x) {
    const FiniteField& f = bk.field();
    bk.count(f.q());
    auto acc = bk.zero();
    if (x.index == 0) return acc;
    const std::uint32_t m = f.conductor();
    std::uint32_t jbbarc = jmod(f, static_cast<std::int64_t>(jc) - jb);
    std::uint32_t jabar = jconj(f, ja);
    for (std::uint32_t yi = 0; yi < f.q(); ++yi) {
        FieldElement yy = f.element_from_index(yi);
        auto e1 = chexp(f, jb, yy);
        if (!e1) continue;
        auto e2 = chexp(f, jbbarc, f.sub(yy, f.one()));
        if (!e2) continue;
        auto e3 = chexp(f, jabar, f.sub(f.one(), f.mul(x, yy)));
        if (!e3) continue;
        bk.add_mono(acc, static_cast<std::uint32_t>((static_cast<std::uint64_t>(*e1) + *e2 + *e3) % m));
    }
    mpq_class s(1, f.q());
    bk.scale_by(acc, s);
    return acc;
}

// F*(C,D; x) = C(2)/q * sum_t C(conj D)^2(1-t) (conj C)D(1-x-t^2).
template <class B>
typename B::Value fstar_point_value(const B& bk, std::uint32_t jc, std::uint32_t jd, FieldElement x) {
    const FiniteField& f = bk.field();
    bk.count(f.q());
    auto acc = bk.zero();
    const std::uint32_t m = f.conductor();
    std::uint32_t j1 = jmod(f, static_cast<std::int64_t>(jc) - 2 * static_cast<std::int64_t>(jd));
    std::uint32_t j2 = jmod(f, static_cast<std::int64_t>(jd) - jc);
    FieldElement one_minus_x = f.sub(f.one(), x);
    for (std::uint32_t ti = 0; ti < f.q(); ++ti) {
        FieldElement t = f.element_from_index(ti);
        auto e1 = chexp(f, j1, f.sub(f.one(), t));
        if (!e1) continue;
        auto e2 = chexp(f, j2, f.sub(one_minus_x, f.mul(t, t)));
        if (!e2) continue;
        bk.add_mono(acc, static_cast<std::uint32_t>((static_cast<std::uint64_t>(*e1) + *e2) % m));
    }
    auto e2c = chexp(f, jc, f.from_int(2));
    bk.mul_mono_inplace(acc, *e2c);
    mpq_class s(1, f.q());
    bk.scale_by(acc, s);
    return acc;
}

// Per-(C,D) cache of (C chi^2 over chi) (C chi over D chi) for all chi.
template <class B>
struct FStarCache {
    std::vector<typename B::Value> prod;  // indexed by chi exponent
};

template <class B>
FStarCache<B> make_fstar_cache(const B& bk, std::uint32_t jc, std::uint32_t jd) {
    const FiniteField& f = bk.field();
    const std::uint32_t qm1 = f.q() - 1;
    FStarCache<B> cache;
    cache.prod.reserve(qm1);
    for (std::uint32_t j = 0; j < qm1; ++j) {
        auto b1 = binomial_value(bk, jmod(f, static_cast<std::int64_t>(jc) + 2 * j), j);
        auto b2 = binomial_value(bk, jmod(f, static_cast<std::int64_t>(jc) + j),
                                 jmod(f, static_cast<std::int64_t>(jd) + j));
        cache.prod.push_back(bk.mul(b1, b2));
    }
    return cache;
}

// Same cache contents built from the direct-sum Jacobi representation, which
// stays q-sparse; the sweep over all (C, D, x) uses this one.  The two Jacobi
// routes are verified equal elsewhere (ratio vs direct summation, all pairs).
template <class B>
FStarCache<B> make_fstar_cache_direct(const B& bk, std::uint32_t jc, std::uint32_t jd) {
    const FiniteField& f = bk.field();
    const std::uint32_t qm1 = f.q() - 1;
    const mpq_class inv_q(1, f.q());
    FStarCache<B> cache;
    cache.prod.reserve(qm1);
    for (std::uint32_t j = 0; j < qm1; ++j) {
        auto b1 = jacobi_direct_value(bk, jmod(f, static_cast<std::int64_t>(jc) + 2 * j), jconj(f, j));
        auto b2 = jacobi_direct_value(bk, jmod(f, static_cast<std::int64_t>(jc) + j),
                                      jconj(f, jmod(f, static_cast<std::int64_t>(jd) + j)));
        auto prod = bk.mul(b1, b2);
        int sign = bk.char_parity(j) * bk.char_parity(jmod(f, static_cast<std::int64_t>(jd) + j));
        mpq_class s = inv_q * inv_q;
        if (sign < 0) s = -s;
        bk.scale_by(prod, s);
        cache.prod.push_back(std::move(prod));
    }
    return cache;
}

// F*(C,D; x) by the character sum
//   q/(q-1) sum_chi (C chi^2 over chi)(C chi over D chi) chi(x/4)
//   + CD(-1) (conj C)(x/4) / q.
template <class B>
typename B::Value fstar_charsum_value(const B& bk, std::uint32_t jc, std::uint32_t jd, FieldElement x,
                                      const FStarCache<B>* cache = nullptr) {
    const FiniteField& f = bk.field();
    bk.count(f.q());
    FStarCache<B> local;
    if (!cache) {
        local = make_fstar_cache(bk, jc, jd);
        cache = &local;
    }
    auto acc = bk.zero();
    if (x.index == 0) return acc;
    FieldElement xo4 = f.mul(x, f.inv(f.from_int(4)));
    const std::uint32_t qm1 = f.q() - 1;
    for (std::uint32_t j = 0; j < qm1; ++j)
        bk.add_shifted(acc, cache->prod[j], *chexp(f, j, xo4));
    mpq_class s(f.q(), qm1);
    s.canonicalize();
    bk.scale_by(acc, s);

    auto tail = bk.mono(*chexp(f, jconj(f, jc), xo4));
    int cd_sign = bk.char_parity(jmod(f, static_cast<std::int64_t>(jc) + jd));
    mpq_class ts(cd_sign, f.q());
    ts.canonicalize();
    bk.scale_by(tail, ts);
    bk.add_in(acc, tail);
    return acc;
}

// G(A^2 conj B) G(phi conj A B), the pair-constant prefix of alpha.
template <class B>
typename B::Value alpha_prefix(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    std::uint32_t j1 = jmod(f, 2 * static_cast<std::int64_t>(ja) - jb);
    std::uint32_t j2 = jmod(f, static_cast<std::int64_t>(h) - ja + jb);
    return bk.mul(bk.gauss(j1), bk.gauss(j2));
}

// alpha = G(A^2 conj B) G(phi conj A B) sum_t (conj A)^2 B(1-t) phi A conj B(y - t^2)
template <class B>
typename B::Value alpha_value(const B& bk, std::uint32_t ja, std::uint32_t jb, FieldElement y,
                              const typename B::Value* prefix = nullptr) {
    const FiniteField& f = bk.field();
    bk.count(f.q());
    const std::uint32_t h = (f.q() - 1) / 2;
    std::uint32_t js1 = jmod(f, static_cast<std::int64_t>(jb) - 2 * static_cast<std::int64_t>(ja));
    std::uint32_t js2 = jmod(f, static_cast<std::int64_t>(h) + ja - jb);  // phi A conj B
    auto sum = bk.zero();
    const std::uint32_t m = f.conductor();
    for (std::uint32_t ti = 0; ti < f.q(); ++ti) {
        FieldElement t = f.element_from_index(ti);
        auto e1 = chexp(f, js1, f.sub(f.one(), t));
        if (!e1) continue;
        auto e2 = chexp(f, js2, f.sub(y, f.mul(t, t)));
        if (!e2) continue;
        bk.add_mono(sum, static_cast<std::uint32_t>((static_cast<std::uint64_t>(*e1) + *e2) % m));
    }
    if (prefix) return bk.mul(*prefix, sum);
    auto pre = alpha_prefix(bk, ja, jb);
    return bk.mul(pre, sum);
}

// phi B A(-1) A^2 conj B(2) G(phi) G(A), the pair-constant prefix of beta.
template <class B>
typename B::Value beta_prefix(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    std::uint32_t j1 = jmod(f, 2 * static_cast<std::int64_t>(ja) - jb);
    auto out = bk.mul(bk.gauss(h), bk.gauss(ja));
    bk.mul_mono_inplace(out, *chexp(f, j1, f.from_int(2)));
    if (bk.char_parity(jmod(f, static_cast<std::int64_t>(h) + jb + ja)) < 0) bk.negate(out);
    return out;
}

// beta = phi B A(-1) A^2 conj B(2) G(phi) G(A) sum_t A^2 conj B(1-t) conj A(1-y-t^2)
template <class B>
typename B::Value beta_value(const B& bk, std::uint32_t ja, std::uint32_t jb, FieldElement y,
                             const typename B::Value* prefix = nullptr) {
    const FiniteField& f = bk.field();
    bk.count(f.q());
    std::uint32_t j1 = jmod(f, 2 * static_cast<std::int64_t>(ja) - jb);  // A^2 conj B
    std::uint32_t jabar = jconj(f, ja);
    auto sum = bk.zero();
    const std::uint32_t m = f.conductor();
    FieldElement one_minus_y = f.sub(f.one(), y);
    for (std::uint32_t ti = 0; ti < f.q(); ++ti) {
        FieldElement t = f.element_from_index(ti);
        auto e1 = chexp(f, j1, f.sub(f.one(), t));
        if (!e1) continue;
        auto e2 = chexp(f, jabar, f.sub(one_minus_y, f.mul(t, t)));
        if (!e2) continue;
        bk.add_mono(sum, static_cast<std::uint32_t>((static_cast<std::uint64_t>(*e1) + *e2) % m));
    }
    if (prefix) return bk.mul(*prefix, sum);
    auto pre = beta_prefix(bk, ja, jb);
    return bk.mul(pre, sum);
}

// Hasse-Davenport product relation: A(4) G(A) G(A phi) = G(A^2) G(phi).
template <class B>
std::pair<typename B::Value, typename B::Value> hd_sides(const B& bk, std::uint32_t j) {
    const FiniteField& f = bk.field();
    bk.count(1);
    const std::uint32_t h = (f.q() - 1) / 2;
    auto lhs = bk.mul(bk.gauss(j), bk.gauss(jmod(f, static_cast<std::int64_t>(j) + h)));
    bk.mul_mono_inplace(lhs, *chexp(f, j, f.from_int(4)));
    auto rhs = bk.mul(bk.gauss(jmod(f, 2 * static_cast<std::int64_t>(j))), bk.gauss(h));
    return {std::move(lhs), std::move(rhs)};
}

// Shared constant of the linear/quadratic transformations:
//   G(A^2 conj B) G(phi conj A B) / (G(phi) G(A)).
template <class B>
typename B::Value gauss_ratio_constant(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    std::uint32_t j1 = jmod(f, 2 * static_cast<std::int64_t>(ja) - jb);
    std::uint32_t j2 = jmod(f, static_cast<std::int64_t>(h) - ja + jb);
    return bk.mul(bk.mul(bk.gauss(j1), bk.gauss(j2)), bk.mul(bk.inv_gauss(h), bk.inv_gauss(ja)));
}

// ---------------------------------------------------------------------------
// Sides of the transformation identities.  Hypotheses (which arguments and
// characters are admissible) are enforced by the callers; these evaluate the
// formulas as written.

// Linear transformation of F*:
//   F*(B, conj(A)B; y) = phi A B(-1) (conj A)^2 B(2) G(A^2 conj B) G(phi conj A B)
//                        / (G(phi) G(A)) * F*(B, phi A; 1-y)
template <class B>
typename B::Value lemma1_constant(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    auto k = gauss_ratio_constant(bk, ja, jb);
    std::uint32_t ja2b = jmod(f, static_cast<std::int64_t>(jb) - 2 * static_cast<std::int64_t>(ja));
    bk.mul_mono_inplace(k, *chexp(f, ja2b, f.from_int(2)));
    if (bk.char_parity(jmod(f, static_cast<std::int64_t>(h) + ja + jb)) < 0) bk.negate(k);
    return k;
}

template <class B>
typename B::Value lemma1_lhs(const B& bk, std::uint32_t ja, std::uint32_t jb, FieldElement y) {
    const FiniteField& f = bk.field();
    return fstar_point_value(bk, jb, jmod(f, static_cast<std::int64_t>(jb) - ja), y);
}

template <class B>
typename B::Value lemma1_rhs(const B& bk, std::uint32_t ja, std::uint32_t jb, FieldElement y,
                             const typename B::Value& constant) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    auto tail = fstar_point_value(bk, jb, jmod(f, static_cast<std::int64_t>(h) + ja), f.sub(f.one(), y));
    return bk.mul(constant, tail);
}

// Quadratic transformation:
//   2F1(A,B;A^2 | 4x/(1+x)^2) = conj(A)(4) phi B(-1) [Gauss ratio] B^2(1+x)
//                               2F1(phi conj(A) B, B; phi A | x^2)
template <class B>
typename B::Value thm2_constant(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    auto k = gauss_ratio_constant(bk, ja, jb);
    bk.mul_mono_inplace(k, *chexp(f, jconj(f, ja), f.from_int(4)));
    if (bk.char_parity(jmod(f, static_cast<std::int64_t>(h) + jb)) < 0) bk.negate(k);
    return k;
}

template <class B>
typename B::Value thm2_lhs(const B& bk, std::uint32_t ja, std::uint32_t jb, FieldElement x) {
    const FiniteField& f = bk.field();
    FieldElement onepx = f.add(f.one(), x);  // x != -1
    FieldElement arg = f.mul(f.mul(f.from_int(4), x), f.inv(f.mul(onepx, onepx)));
    return hyp2f1_value(bk, ja, jb, jmod(f, 2 * static_cast<std::int64_t>(ja)), arg);
}

// B^2(1+x) 2F1(phi conj(A) B, B; phi A | x^2), shared by thm2 and eq31.
template <class B>
typename B::Value quadratic_rhs(const B& bk, std::uint32_t ja, std::uint32_t jb, FieldElement x,
                                const typename B::Value& constant) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    auto val = hyp2f1_value(bk, jmod(f, static_cast<std::int64_t>(h) - ja + jb), jb,
                            jmod(f, static_cast<std::int64_t>(h) + ja), f.mul(x, x));
    auto out = bk.mul(constant, val);
    bk.mul_mono_inplace(out, *chexp(f, jmod(f, 2 * static_cast<std::int64_t>(jb)), f.add(f.one(), x)));
    return out;
}

// Equivalent form of the quadratic transformation:
//   2F1(A,B; conj(A)B | (1-x)^2/(1+x)^2) = conj(A)(4) phi A B(-1) [Gauss ratio]
//                                          B^2(1+x) 2F1(...; phi A | x^2)
template <class B>
typename B::Value eq31_constant(const B& bk, std::uint32_t ja, std::uint32_t jb) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    auto k = gauss_ratio_constant(bk, ja, jb);
    bk.mul_mono_inplace(k, *chexp(f, jconj(f, ja), f.from_int(4)));
    if (bk.char_parity(jmod(f, static_cast<std::int64_t>(h) + ja + jb)) < 0) bk.negate(k);
    return k;
}

template <class B>
typename B::Value eq31_lhs(const B& bk, std::uint32_t ja, std::uint32_t jb, FieldElement x) {
    const FiniteField& f = bk.field();
    FieldElement onepx = f.add(f.one(), x);  // x != -1
    FieldElement onemx = f.sub(f.one(), x);
    FieldElement arg = f.mul(f.mul(onemx, onemx), f.inv(f.mul(onepx, onepx)));
    return hyp2f1_value(bk, ja, jb, jmod(f, static_cast<std::int64_t>(jb) - ja), arg);
}

// Quartic transformation (q = 1 mod 4, chi4 either quartic character):
//   D^4(z-1) 2F1(D, D chi4; chi4 | z^4) = 2F1(D, D^2 phi; D phi | -((z+1)/(z-1))^2)
template <class B>
typename B::Value thm3_lhs(const B& bk, std::uint32_t jd, std::uint32_t j4, FieldElement z) {
    const FiniteField& f = bk.field();
    FieldElement z4 = f.pow(z, 4);
    auto val = hyp2f1_value(bk, jd, jmod(f, static_cast<std::int64_t>(jd) + j4), j4, z4);
    bk.mul_mono_inplace(val, *chexp(f, jmod(f, 4 * static_cast<std::int64_t>(jd)), f.sub(z, f.one())));
    return val;
}

template <class B>
typename B::Value thm3_rhs(const B& bk, std::uint32_t jd, FieldElement z) {
    const FiniteField& f = bk.field();
    const std::uint32_t h = (f.q() - 1) / 2;
    FieldElement ratio = f.mul(f.add(z, f.one()), f.inv(f.sub(z, f.one())));  // z != 1
    FieldElement arg = f.neg(f.mul(ratio, ratio));
    return hyp2f1_value(bk, jd, jmod(f, 2 * static_cast<std::int64_t>(jd) + h),
                        jmod(f, static_cast<std::int64_t>(jd) + h), arg);
}

// Inversion:
//   2F1(A,B;C | x) = ABC(-1) conj(B)(x) 2F1(B conj C, B; B conj A | 1/x), x != 0
template <class B>
typename B::Value eq42_rhs(const B& bk, std::uint32_t ja, std::uint32_t jb, std::uint32_t jc,
                           FieldElement x) {
    const FiniteField& f = bk.field();
    auto val = hyp2f1_value(bk, jmod(f, static_cast<std::int64_t>(jb) - jc), jb,
                            jmod(f, static_cast<std::int64_t>(jb) - ja), f.inv(x));
    bk.mul_mono_inplace(val, *chexp(f, jconj(f, jb), x));
    if (bk.char_parity(jmod(f, static_cast<std::int64_t>(ja) + jb + jc)) < 0) bk.negate(val);
    return val;
}

bool hd_check_exact(const GaussTable& t, std::uint32_t j);

}  // namespace ffhyp::engine
