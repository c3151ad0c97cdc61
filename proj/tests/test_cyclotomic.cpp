#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <numbers>

#include "ffhyp/cyclotomic.hpp"

using namespace ffhyp;

namespace {

mpq_class q(long n, long d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

CycNumber rat(std::uint32_t m, long n, long d = 1) {
    return CycNumber::from_rational(CycContext::get(m), q(n, d));
}

// Small deterministic generator for property tests.
struct Lcg {
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

std::vector<mpq_class> random_poly(Lcg& rng, std::size_t deg_max) {
    std::vector<mpq_class> p(rng.range(1, static_cast<long>(deg_max)) + 1);
    for (auto& c : p) c = q(rng.range(-9, 9), rng.range(1, 4));
    return p;
}

std::vector<mpq_class> poly_mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    std::vector<mpq_class> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

TEST_SUITE("cyclotomic") {

TEST_CASE("zeta basics") {
    for (std::uint32_t m : {1u, 2u, 5u, 12u, 20u, 24u}) CHECK(zeta(m, 0) == rat(m, 1));
    CHECK(zeta(5, 1) + zeta(5, 2) + zeta(5, 3) + zeta(5, 4) == rat(5, -1));
    CHECK(zeta(12, 6) == rat(12, -1));
    for (std::uint32_t m : {2u, 3u, 8u, 12u, 20u, 24u}) {
        CycNumber s(CycContext::get(m));
        for (std::uint32_t a = 0; a < m; ++a) s = s + zeta(m, a);
        CHECK(s.is_zero());  // vanishing sum of all m-th roots, m > 1
    }
}

TEST_CASE("zeta multiplication law") {
    Lcg rng;
    for (std::uint32_t m : {12u, 20u, 24u}) {
        for (int it = 0; it < 50; ++it) {
            long a = rng.range(0, 3 * m), b = rng.range(-2 * m, 2 * m);
            CHECK(zeta(m, a) * zeta(m, b) == zeta(m, a + b));
        }
        CHECK(zeta(m, m) == rat(m, 1));
    }
}

TEST_CASE("reduction examples") {
    for (std::uint32_t m : {8u, 12u, 20u, 24u}) {
        auto ctx = CycContext::get(m);
        std::vector<mpq_class> xm(m + 1, 0);
        xm[0] = -1;
        xm[m] = 1;
        CHECK(reduce_mod_cyclotomic(xm, m).is_zero());  // x^m - 1 -> 0

        std::vector<mpq_class> phi;
        for (const auto& c : ctx->cyclotomic_poly()) phi.emplace_back(c);
        CHECK(reduce_mod_cyclotomic(phi, m).is_zero());  // Phi_m -> 0

        std::vector<mpq_class> xphi(ctx->phi() + 1, 0);
        xphi[ctx->phi()] = 1;
        auto val = reduce_mod_cyclotomic(xphi, m).embed();
        double t = 2.0 * std::numbers::pi * ctx->phi() / m;
        CHECK(std::abs(val - ApproxNumber{std::cos(t), std::sin(t)}) < 1e-10);
    }
}

TEST_CASE("canonicality: reduce(P)*reduce(Q) == reduce(P*Q)") {
    Lcg rng;
    for (std::uint32_t m : {12u, 20u, 24u}) {
        for (int it = 0; it < 40; ++it) {
            auto p = random_poly(rng, 2 * m);
            auto qq = random_poly(rng, 2 * m);
            CHECK(reduce_mod_cyclotomic(p, m) * reduce_mod_cyclotomic(qq, m) ==
                  reduce_mod_cyclotomic(poly_mul(p, qq), m));
        }
    }
}

TEST_CASE("conjugation") {
    Lcg rng;
    for (std::uint32_t m : {8u, 20u, 24u}) {
        for (int it = 0; it < 30; ++it) {
            auto x = reduce_mod_cyclotomic(random_poly(rng, m), m);
            auto y = reduce_mod_cyclotomic(random_poly(rng, m), m);
            CHECK(x.conj().conj() == x);
            CHECK((x * y).conj() == x.conj() * y.conj());
        }
        CHECK(zeta(m, 1).conj() == zeta(m, -1));
    }
}

TEST_CASE("conj fixes G(phi) over F5") {
    // G(phi) = zeta5 - zeta5^2 - zeta5^3 + zeta5^4 in Q(zeta_20), zeta5 = zeta20^4.
    auto g = zeta(20, 4) - zeta(20, 8) - zeta(20, 12) + zeta(20, 16);
    CHECK(g.conj() == g);
    CHECK(std::abs(g.embed() - ApproxNumber{std::sqrt(5.0), 0.0}) < 1e-12);
}

TEST_CASE("division by extended gcd") {
    CHECK(zeta(8, 1) / zeta(8, 1) == rat(8, 1));
    CHECK_THROWS_AS(zeta(8, 1) / CycNumber(CycContext::get(8)), std::domain_error);

    Lcg rng;
    for (std::uint32_t m : {8u, 20u, 24u}) {
        for (int it = 0; it < 25; ++it) {
            auto u = reduce_mod_cyclotomic(random_poly(rng, m), m);
            auto v = reduce_mod_cyclotomic(random_poly(rng, m), m);
            if (v.is_zero()) continue;
            CHECK((u * v) / v == u);
            CHECK(v / v == rat(m, 1));
        }
    }
}

TEST_CASE("embedding") {
    CHECK(std::abs(rat(20, 1).embed() - ApproxNumber{1.0, 0.0}) == 0.0);
    CHECK(std::abs(zeta(4, 1).embed() - ApproxNumber{0.0, 1.0}) < 1e-15);

    // ring homomorphism up to 1e-10 on small products
    Lcg rng;
    for (std::uint32_t m : {20u, 24u}) {
        for (int it = 0; it < 20; ++it) {
            auto a = reduce_mod_cyclotomic(random_poly(rng, m), m);
            auto b = reduce_mod_cyclotomic(random_poly(rng, m), m);
            auto c = reduce_mod_cyclotomic(random_poly(rng, m), m);
            auto d = reduce_mod_cyclotomic(random_poly(rng, m), m);
            auto prod = a * b * c * d;
            CHECK(std::abs(prod.embed() - a.embed() * b.embed() * c.embed() * d.embed()) < 1e-10);
        }
    }
}

TEST_CASE("json serialization") {
    auto x = zeta(12, 1) * q(3, 2) + rat(12, -1);
    std::string js = x.to_json();
    CHECK(js.find("\"m\":12") != std::string::npos);
    CHECK(js.find("-1") != std::string::npos);
    CHECK(js.find("3/2") != std::string::npos);
}

TEST_CASE("conductor guard") {
    CHECK_THROWS_AS(CycContext::get(1u << 20), std::invalid_argument);
}

}  // TEST_SUITE
