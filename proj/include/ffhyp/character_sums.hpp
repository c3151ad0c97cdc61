#pragma once

#include <cstdint>
#include <vector>

#include "ffhyp/characters.hpp"
#include "ffhyp/cyclotomic.hpp"
#include "ffhyp/finite_field.hpp"

namespace ffhyp {

/// Per-field cache of all Gauss sums G(chi_j) = sum_y chi_j(y) zeta^y,
/// j in [0, q-2].  Raw monomial counts (in the group ring Z[x]/(x^m - 1))
/// are kept alongside the canonical values; sweeps work on the raw form.
/// Built eagerly; immutable and shareable afterwards.
class GaussTable {
public:
    explicit GaussTable(const FiniteField& field);

    const FiniteField& field() const { return *field_; }
    const std::shared_ptr<const CycContext>& context() const { return ctx_; }

    const CycNumber& exact(std::uint32_t j) const { return exact_[j]; }
    /// Monomial counts of G(chi_j), length m.
    const std::vector<std::int64_t>& raw(std::uint32_t j) const { return raw_[j]; }

    /// Field-element visits performed during construction; O(q^2).
    std::uint64_t build_element_ops() const { return build_element_ops_; }

private:
    const FiniteField* field_;
    std::shared_ptr<const CycContext> ctx_;
    std::vector<std::vector<std::int64_t>> raw_;
    std::vector<CycNumber> exact_;
    std::uint64_t build_element_ops_ = 0;
};

/// G(A), from the table.
const CycNumber& gauss(const GaussTable& t, Character a);

/// J(A,B) by the Gauss-ratio formula G(A)G(B)/G(AB) when AB is nontrivial,
/// with the special values J(eps,eps) = q-2, J(eps,A) = J(A,eps) = -1 and
/// J(A, conj A) = -A(-1) otherwise.
CycNumber jacobi(const GaussTable& t, Character a, Character b);

/// J(A,B) = sum_y A(y) B(1-y) by direct summation; must agree with jacobi().
CycNumber jacobi_direct(const GaussTable& t, Character a, Character b);

/// Binomial coefficient (A over B) = B(-1)/q * J(A, conj B).
CycNumber binomial(const GaussTable& t, Character a, Character b);

/// Whether the Hasse-Davenport product relation
/// A(4) G(A) G(A phi) = G(A^2) G(phi) holds exactly for this A.
bool hasse_davenport_check(const GaussTable& t, Character a);

ApproxNumber gauss_approx(const FiniteField& f, Character a);
ApproxNumber jacobi_approx(const FiniteField& f, Character a, Character b);
ApproxNumber binomial_approx(const FiniteField& f, Character a, Character b);

}  // namespace ffhyp
