#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ffhyp/cyclotomic.hpp"
#include "ffhyp/finite_field.hpp"

namespace ffhyp {

/// Multiplicative character chi_j of F_q*, defined by chi_j(g^k) = zeta_{q-1}^(j*k)
/// against the canonical generator g, and extended by chi_j(0) = 0 — including
/// the trivial character.  Values live in Q(zeta_m), m = p*(q-1).
struct Character {
    const FiniteField* field = nullptr;
    std::uint32_t j = 0;

    bool operator==(const Character& o) const { return field == o.field && j == o.j; }
    bool is_trivial() const { return j == 0; }
    std::uint32_t order() const;
};

Character trivial(const FiniteField& f);
Character quadratic(const FiniteField& f);
/// chi_{(q-1)/4}; the other quartic character is its conjugate.
/// Throws std::domain_error unless q = 1 (mod 4).
Character quartic(const FiniteField& f);
Character character(const FiniteField& f, std::int64_t j);

Character char_product(Character a, Character b);
Character char_conj(Character a);
Character char_pow(Character a, std::int64_t e);

/// chi(-1) = 1, equivalently j*(q-1)/2 = 0 (mod q-1).
bool is_even(Character a);
/// chi(-1) as +/-1.
int sign_at_minus_one(Character a);

/// Exponent e with chi(y) = zeta_m^e, or nullopt when y = 0.
std::optional<std::uint32_t> eval_exponent(Character chi, FieldElement y);
/// Exponent of the additive character: zeta^y = zeta_m^((q-1)*trace(y)).
std::uint32_t additive_exponent(const FiniteField& f, FieldElement y);

CycNumber eval(Character chi, FieldElement y);
CycNumber additive(const FiniteField& f, FieldElement y);

ApproxNumber eval_approx(Character chi, FieldElement y);
ApproxNumber additive_approx(const FiniteField& f, FieldElement y);

/// "eps", "phi", "chi4", "chi4bar" when applicable, else "chi_j".
std::string character_name(Character a);
/// Accepts the symbolic names above or an integer exponent.
Character parse_character(const FiniteField& f, const std::string& spec);

}  // namespace ffhyp
