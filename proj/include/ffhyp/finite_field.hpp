#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <vector>

namespace ffhyp {

/// Element of F_q, identified by its canonical index:
/// index 0 is the zero element, index k (1 <= k <= q-1) is g^(k-1) for the
/// canonical generator g.  Equality of elements is equality of indices.
struct FieldElement {
    std::uint32_t index = 0;
    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// Arithmetic context for F_q, q = p^n with p an odd prime.
///
/// The field is modelled as F_p[x]/(f) for the lexicographically least monic
/// irreducible f of degree n (coefficients compared low-degree-first); for
/// n = 1 this is f = x.  The canonical generator is the primitive element
/// least in the coefficient ("affine") enumeration a = c0 + c1*p + ... .
/// All tables (powers, discrete logs, traces) are built eagerly at
/// construction and the object is immutable afterwards, so it can be shared
/// freely across threads.
class FiniteField {
public:
    /// Builds F_q for q = p^n.  Throws std::invalid_argument for even or
    /// composite p, n < 1, or q > 2^20.
    FiniteField(std::uint32_t p, std::uint32_t n);

    /// Parses "13" or "3^3" style descriptors.
    static FiniteField from_descriptor(const std::string& desc);

    std::uint32_t p() const { return p_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t q() const { return q_; }
    /// Conductor of the cyclotomic field holding all character sums: p*(q-1).
    std::uint32_t conductor() const { return p_ * (q_ - 1); }
    std::string descriptor() const;

    /// Monic modulus polynomial, coefficients low-degree-first, length n+1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement generator() const { return q_ > 2 ? FieldElement{2} : one(); }
    FieldElement minus_one() const;

    /// Embeds an integer via the prime subfield (v mod p times 1).
    FieldElement from_int(std::int64_t v) const;
    /// g^k (k may be any integer; reduced mod q-1).
    FieldElement generator_pow(std::int64_t k) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    /// Throws std::domain_error on zero.
    FieldElement inv(FieldElement a) const;
    /// 0^0 = 1, 0^e = 0 for e > 0; negative e requires a nonzero base.
    FieldElement pow(FieldElement a, std::int64_t e) const;

    /// Discrete log base g, in [0, q-2].  Throws std::domain_error on zero.
    std::uint32_t dlog(FieldElement a) const;
    /// Absolute trace to F_p, in [0, p-1].
    std::uint32_t trace(FieldElement a) const { return trace_[check(a).index]; }

    /// Primitive fourth root of unity i = g^((q-1)/4).
    /// Throws std::domain_error unless q = 1 (mod 4).
    FieldElement sqrt_of_minus_one() const;

    /// Coefficient-vector view (length n, low-degree-first) — the portable
    /// representation for I/O and cross-implementation comparison.
    std::vector<std::uint32_t> coeffs(FieldElement a) const;
    std::uint32_t to_affine(FieldElement a) const { return index_to_affine_[check(a).index]; }
    FieldElement from_affine(std::uint32_t a) const;
    FieldElement from_coeffs(const std::vector<std::uint32_t>& c) const;

    FieldElement element_from_index(std::uint32_t index) const;

    /// "0" for zero, "1" for one, "g^k" otherwise.
    std::string format(FieldElement a) const;
    /// Accepts a canonical index, "g^k", or "0"/"1".
    FieldElement parse_element(const std::string& spec) const;

    /// JSON dump of the full field (modulus, generator, power/dlog/trace
    /// tables indexed by affine value) for cross-implementation comparison.
    std::string to_json() const;

private:
    FieldElement check(FieldElement a) const;

    std::uint32_t p_, n_, q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> index_to_affine_;  // size q
    std::vector<std::uint32_t> affine_to_index_;  // size q
    std::vector<std::uint32_t> trace_;            // size q, by index
};

}  // namespace ffhyp
