#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "ffhyp/identity_verifier.hpp"

namespace ffhyp {

/// Dense polynomial over Q, low-degree-first, canonical (no trailing zeros).
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<mpq_class> coeffs);
    static RationalPoly constant(const mpq_class& c);
    /// c * z^k
    static RationalPoly monomial(const mpq_class& c, std::size_t k);

    const std::vector<mpq_class>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    mpq_class coeff(std::size_t k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
    bool is_zero() const { return c_.empty(); }

    RationalPoly operator+(const RationalPoly& o) const;
    RationalPoly operator-(const RationalPoly& o) const;
    RationalPoly operator*(const RationalPoly& o) const;
    RationalPoly operator*(const mpq_class& s) const;
    RationalPoly pow(unsigned e) const;
    bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

/// Terminating 2F1 series: upper a, b; lower c; the number of terms comes
/// from the least nonpositive-integer upper parameter.  Construction throws
/// std::invalid_argument when neither upper parameter terminates the series,
/// or std::domain_error when c hits a nonpositive integer within range.
struct TerminatingHypSeries {
    mpq_class a, b, c;
    unsigned terms;  // series has terms k = 0 .. terms-1

    TerminatingHypSeries(mpq_class a, mpq_class b, mpq_class c);
};

/// sum_k (a)_k (b)_k / ((c)_k k!) * argument^k, an exact polynomial.
RationalPoly terminating_2f1_poly(const TerminatingHypSeries& s, const RationalPoly& argument);

/// Gamma(2n+3) Gamma(3/4) / (Gamma(n+2) Gamma(n+3/4)) as an exact rational
/// via Pochhammer reduction; the transcendental Gamma(3/4) cancels.
mpq_class gamma_ratio(unsigned n);

/// LHS of the quartic-analogue polynomial identity:
///   (z-1)^(4n+2) 2F1(-n-1/4, -2n-1; -n+1/4 | -((z+1)/(z-1))^2),
/// expanded term by term with the (z-1) powers cleared exactly.
RationalPoly stanton_lhs(unsigned n);

/// RHS: (-2z) Gamma(2n+3)Gamma(3/4)/(Gamma(n+2)Gamma(n+3/4))
///        * 2F1(-n-1/4, -n; 5/4 | z^4).
RationalPoly stanton_rhs(unsigned n);

/// Coefficient-wise comparison of both sides for n = 0..n_max, plus the
/// degree (4n+1) and vanishing-constant-term checks.  Shares the identity
/// report schema; field is "Q".
IdentityReport verify_stanton(unsigned n_max);

}  // namespace ffhyp
