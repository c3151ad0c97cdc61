#include "ffhyp/engine.hpp"

namespace ffhyp::engine {

FloatBackend::FloatBackend(const FiniteField& f, double eps)
    : f_(&f), m_(f.conductor()), eps_(eps < 0 ? approx_epsilon(f.q()) : eps) {
    if (m_ <= (1u << 22)) {
        roots_.resize(m_);
        for (std::uint32_t e = 0; e < m_; ++e) {
            double t = 2.0 * std::numbers::pi * e / m_;
            roots_[e] = {std::cos(t), std::sin(t)};
        }
    }
    const std::uint32_t qm1 = f.q() - 1;
    gauss_.assign(qm1, {0.0, 0.0});
    for (std::uint32_t j = 0; j < qm1; ++j) {
        Value g{0.0, 0.0};
        for (std::uint32_t yi = 1; yi < f.q(); ++yi) {
            FieldElement y = f.element_from_index(yi);
            std::uint64_t e = (static_cast<std::uint64_t>(f.p()) * j % m_) * f.dlog(y) % m_;
            std::uint64_t ea = static_cast<std::uint64_t>(qm1) * f.trace(y) % m_;
            g += root(static_cast<std::uint32_t>((e + ea) % m_));
        }
        gauss_[j] = g;
    }
    count(static_cast<std::uint64_t>(qm1) * qm1);
}

bool hd_check_exact(const GaussTable& t, std::uint32_t j) {
    ExactBackend bk(t);
    auto [lhs, rhs] = hd_sides(bk, j);
    return bk.equal(lhs, rhs);
}

}  // namespace ffhyp::engine
