#include "ffhyp/character_sums.hpp"

#include <stdexcept>

#include "ffhyp/engine.hpp"

namespace ffhyp {

GaussTable::GaussTable(const FiniteField& field)
    : field_(&field), ctx_(CycContext::get(field.conductor())) {
    const std::uint32_t q = field.q(), qm1 = q - 1, m = field.conductor();
    raw_.assign(qm1, std::vector<std::int64_t>(m, 0));
    for (std::uint32_t j = 0; j < qm1; ++j) {
        for (std::uint32_t yi = 1; yi < q; ++yi) {
            FieldElement y = field.element_from_index(yi);
            std::uint64_t e = (static_cast<std::uint64_t>(field.p()) * j % m) * field.dlog(y) % m;
            std::uint64_t ea = static_cast<std::uint64_t>(qm1) * field.trace(y) % m;
            ++raw_[j][(e + ea) % m];
        }
        build_element_ops_ += qm1;
    }
    exact_.reserve(qm1);
    std::vector<mpz_class> buf(m);
    for (std::uint32_t j = 0; j < qm1; ++j) {
        for (std::uint32_t e = 0; e < m; ++e) buf[e] = raw_[j][e];
        std::vector<mpz_class> canon(ctx_->phi());
        ctx_->reduce_accumulate(canon, buf.data());
        std::vector<mpq_class> c(ctx_->phi());
        for (std::uint32_t i = 0; i < ctx_->phi(); ++i) c[i] = mpq_class(canon[i]);
        exact_.emplace_back(ctx_, std::move(c));
    }
}

static void check_field(const GaussTable& t, Character a) {
    if (a.field != &t.field()) throw std::invalid_argument("character belongs to a different field");
}

const CycNumber& gauss(const GaussTable& t, Character a) {
    check_field(t, a);
    return t.exact(a.j);
}

CycNumber jacobi(const GaussTable& t, Character a, Character b) {
    check_field(t, a);
    check_field(t, b);
    engine::ExactBackend bk(t);
    return bk.to_cyc(engine::jacobi_value(bk, a.j, b.j));
}

CycNumber jacobi_direct(const GaussTable& t, Character a, Character b) {
    check_field(t, a);
    check_field(t, b);
    engine::ExactBackend bk(t);
    return bk.to_cyc(engine::jacobi_direct_value(bk, a.j, b.j));
}

CycNumber binomial(const GaussTable& t, Character a, Character b) {
    check_field(t, a);
    check_field(t, b);
    engine::ExactBackend bk(t);
    return bk.to_cyc(engine::binomial_value(bk, a.j, b.j));
}

bool hasse_davenport_check(const GaussTable& t, Character a) {
    check_field(t, a);
    return engine::hd_check_exact(t, a.j);
}

ApproxNumber gauss_approx(const FiniteField& f, Character a) {
    engine::FloatBackend bk(f);
    return bk.gauss(a.j);
}

ApproxNumber jacobi_approx(const FiniteField& f, Character a, Character b) {
    engine::FloatBackend bk(f);
    return engine::jacobi_value(bk, a.j, b.j);
}

ApproxNumber binomial_approx(const FiniteField& f, Character a, Character b) {
    engine::FloatBackend bk(f);
    return engine::binomial_value(bk, a.j, b.j);
}

}  // namespace ffhyp
