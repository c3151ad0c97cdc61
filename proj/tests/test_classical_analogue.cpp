#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ffhyp/classical_analogue.hpp"

using namespace ffhyp;

namespace {

mpq_class q(long n, long d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

}  // namespace

TEST_SUITE("classical_analogue") {

TEST_CASE("rational polynomial arithmetic") {
    RationalPoly zm1({q(-1), q(1)});
    RationalPoly zp1({q(1), q(1)});
    CHECK((zm1 * zp1).coeffs() == std::vector<mpq_class>{q(-1), q(0), q(1)});
    CHECK(zm1.pow(0).coeffs() == std::vector<mpq_class>{q(1)});
    CHECK((zm1 - zm1).is_zero());
    CHECK((zm1 - zm1).degree() == -1);
    CHECK(RationalPoly({q(1), q(2), q(0), q(0)}).degree() == 1);  // trailing zeros trimmed
    CHECK(RationalPoly::monomial(q(3), 4).to_string() == "3*z^4");
}

TEST_CASE("terminating series construction") {
    TerminatingHypSeries s(q(-1, 4), q(0), q(5, 4));
    CHECK(s.terms == 1);  // upper parameter 0: the series is the constant 1
    CHECK(terminating_2f1_poly(s, RationalPoly::monomial(q(1), 4)).coeffs() ==
          std::vector<mpq_class>{q(1)});

    TerminatingHypSeries s2(q(-3), q(-1, 2), q(1, 3));
    CHECK(s2.terms == 4);

    CHECK_THROWS_AS(TerminatingHypSeries(q(1, 2), q(1, 3), q(5, 4)), std::invalid_argument);
    // (c)_k hits zero inside the termination range
    CHECK_THROWS_AS(TerminatingHypSeries(q(-2), q(1, 2), q(-1)), std::domain_error);
}

TEST_CASE("gamma ratio") {
    CHECK(gamma_ratio(0) == q(2));
    CHECK(gamma_ratio(1) == q(16));
    for (unsigned n = 0; n <= 10; ++n) {
        double expected = std::exp(std::lgamma(2.0 * n + 3) + std::lgamma(0.75) -
                                   std::lgamma(n + 2.0) - std::lgamma(n + 0.75));
        CHECK(std::abs(gamma_ratio(n).get_d() / expected - 1.0) < 1e-9);
    }
}

TEST_CASE("n = 0 expansion in closed form") {
    // (z-1)^2 2F1(-1/4, -1; 1/4 | -((z+1)/(z-1))^2) = (z-1)^2 - (z+1)^2 = -4z
    auto lhs = stanton_lhs(0);
    CHECK(lhs.coeffs() == std::vector<mpq_class>{q(0), q(-4)});
    auto rhs = stanton_rhs(0);
    CHECK(rhs.coeffs() == std::vector<mpq_class>{q(0), q(-4)});
}

TEST_CASE("degrees and vanishing constant term") {
    for (unsigned n = 0; n <= 6; ++n) {
        auto lhs = stanton_lhs(n);
        auto rhs = stanton_rhs(n);
        CHECK(lhs.degree() == static_cast<int>(4 * n + 1));
        CHECK(rhs.degree() == static_cast<int>(4 * n + 1));
        CHECK(lhs.coeff(0) == 0);
        CHECK(rhs.coeff(0) == 0);
    }
}

TEST_CASE("polynomial identity for n = 0..10") {
    auto r = verify_stanton(10);
    CHECK(r.identity == "stanton");
    CHECK(r.tested == 11);
    CHECK(r.failed == 0);
    CHECK(r.witnesses.empty());
    auto j = report_to_json(r);
    CHECK(report_to_json(report_from_json(j)).dump() == j.dump());
}

TEST_CASE("coefficient-wise comparison, spot degrees at larger n") {
    CHECK(stanton_lhs(3).degree() == 13);  // 4n+1 at n = 3
    CHECK(stanton_lhs(3) == stanton_rhs(3));
}

}  // TEST_SUITE
