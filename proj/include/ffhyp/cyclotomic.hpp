#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ffhyp {

/// Floating-point counterpart of CycNumber; the identity sweeps accept a
/// a float result as equal when |lhs - rhs| <= approx_epsilon(q).
using ApproxNumber = std::complex<double>;

inline double approx_epsilon(std::uint32_t q) { return 1e-6 * q; }

/// Shared per-conductor data for exact arithmetic in Q(zeta_m):
/// the cyclotomic polynomial Phi_m, the reduction table of x^e mod Phi_m for
/// every e in [0, m), and the complex embedding roots e^(2*pi*i*e/m).
///
/// Values are represented canonically in the power basis
/// 1, zeta, .., zeta^(phi(m)-1); two values are equal iff their coefficient
/// vectors are equal.  Contexts are immutable and shared; get() memoizes one
/// context per conductor and is safe to call concurrently.
class CycContext {
public:
    static std::shared_ptr<const CycContext> get(std::uint32_t m);

    std::uint32_t m() const { return m_; }
    std::uint32_t phi() const { return phi_; }

    /// Phi_m, low-degree-first, length phi(m)+1, monic.
    const std::vector<mpz_class>& cyclotomic_poly() const { return phi_poly_; }

    /// Coefficients of x^e mod Phi_m (length phi).  Requires e < m.
    const std::int64_t* row(std::uint32_t e) const { return rows_.data() + std::size_t(e) * phi_; }

    std::int64_t max_row_entry() const { return max_row_entry_; }

    /// out[0..phi) += reduction of sum_{e} in[e] * x^e, where in has m entries.
    void reduce_accumulate(std::vector<mpz_class>& out, const mpz_class* in) const;

    /// Canonical residue of an arbitrary-degree rational polynomial
    /// (exponents first folded mod m since x^m = 1 in the quotient).
    std::vector<mpq_class> reduce_poly(const std::vector<mpq_class>& poly) const;

    const std::vector<ApproxNumber>& roots() const { return roots_; }

private:
    explicit CycContext(std::uint32_t m);

    std::uint32_t m_, phi_;
    std::vector<mpz_class> phi_poly_;
    std::vector<std::int64_t> rows_;  // flat, m rows of length phi
    std::int64_t max_row_entry_ = 0;
    std::vector<ApproxNumber> roots_;
};

/// Exact element of Q(zeta_m) in canonical power-basis form.
class CycNumber {
public:
    CycNumber() = default;
    explicit CycNumber(std::shared_ptr<const CycContext> ctx);
    CycNumber(std::shared_ptr<const CycContext> ctx, std::vector<mpq_class> canonical_coeffs);

    static CycNumber from_rational(std::shared_ptr<const CycContext> ctx, const mpq_class& v);

    const std::shared_ptr<const CycContext>& context() const { return ctx_; }
    std::uint32_t m() const { return ctx_->m(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;

    CycNumber operator-() const;
    CycNumber operator+(const CycNumber& o) const;
    CycNumber operator-(const CycNumber& o) const;
    CycNumber operator*(const CycNumber& o) const;
    /// Exact division; the inverse is computed modulo Phi_m by the extended
    /// Euclidean algorithm over Q[x].  Throws std::domain_error on zero.
    CycNumber operator/(const CycNumber& o) const;
    CycNumber operator*(const mpq_class& s) const;

    bool operator==(const CycNumber& o) const;
    bool operator!=(const CycNumber& o) const { return !(*this == o); }

    /// The automorphism zeta -> zeta^(-1) (complex conjugation).
    CycNumber conj() const;

    ApproxNumber embed() const;

    /// {"m": m, "coeffs": ["a/b", ...]}
    std::string to_json() const;
    std::string to_string() const;

private:
    std::shared_ptr<const CycContext> ctx_;
    std::vector<mpq_class> c_;
};

/// zeta_m^a in canonical form.
CycNumber zeta(std::uint32_t m, std::int64_t a);

/// Canonical residue of a rational polynomial (low-degree-first) mod Phi_m.
CycNumber reduce_mod_cyclotomic(const std::vector<mpq_class>& poly, std::uint32_t m);

}  // namespace ffhyp
