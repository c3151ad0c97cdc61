#include "ffhyp/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ffhyp {

std::uint32_t Character::order() const {
    std::uint32_t qm1 = field->q() - 1;
    return qm1 / std::gcd(j, qm1);
}

Character trivial(const FiniteField& f) { return {&f, 0}; }

Character quadratic(const FiniteField& f) { return {&f, (f.q() - 1) / 2}; }

Character quartic(const FiniteField& f) {
    if (f.q() % 4 != 1) throw std::domain_error("quartic character requires q = 1 (mod 4)");
    return {&f, (f.q() - 1) / 4};
}

Character character(const FiniteField& f, std::int64_t j) {
    std::int64_t qm1 = f.q() - 1;
    std::int64_t r = j % qm1;
    if (r < 0) r += qm1;
    return {&f, static_cast<std::uint32_t>(r)};
}

Character char_product(Character a, Character b) {
    if (a.field != b.field) throw std::invalid_argument("characters of different fields");
    return {a.field, (a.j + b.j) % (a.field->q() - 1)};
}

Character char_conj(Character a) {
    std::uint32_t qm1 = a.field->q() - 1;
    return {a.field, (qm1 - a.j) % qm1};
}

Character char_pow(Character a, std::int64_t e) {
    return character(*a.field, static_cast<std::int64_t>(a.j) * (e % static_cast<std::int64_t>(a.field->q() - 1)));
}

bool is_even(Character a) {
    return (static_cast<std::uint64_t>(a.j) * ((a.field->q() - 1) / 2)) % (a.field->q() - 1) == 0;
}

int sign_at_minus_one(Character a) { return is_even(a) ? 1 : -1; }

std::optional<std::uint32_t> eval_exponent(Character chi, FieldElement y) {
    if (y.index == 0) return std::nullopt;
    const auto& f = *chi.field;
    // zeta_{q-1} = zeta_m^p with m = p*(q-1).
    std::uint64_t e = static_cast<std::uint64_t>(f.p()) * chi.j % f.conductor();
    return static_cast<std::uint32_t>(e * f.dlog(y) % f.conductor());
}

std::uint32_t additive_exponent(const FiniteField& f, FieldElement y) {
    return static_cast<std::uint64_t>(f.q() - 1) * f.trace(y) % f.conductor();
}

CycNumber eval(Character chi, FieldElement y) {
    auto ctx = CycContext::get(chi.field->conductor());
    auto e = eval_exponent(chi, y);
    if (!e) return CycNumber(ctx);
    return zeta(chi.field->conductor(), *e);
}

CycNumber additive(const FiniteField& f, FieldElement y) {
    return zeta(f.conductor(), additive_exponent(f, y));
}

static ApproxNumber unit_root(std::uint32_t m, std::uint32_t e) {
    double t = 2.0 * std::numbers::pi * e / m;
    return {std::cos(t), std::sin(t)};
}

ApproxNumber eval_approx(Character chi, FieldElement y) {
    auto e = eval_exponent(chi, y);
    if (!e) return {0.0, 0.0};
    return unit_root(chi.field->conductor(), *e);
}

ApproxNumber additive_approx(const FiniteField& f, FieldElement y) {
    return unit_root(f.conductor(), additive_exponent(f, y));
}

std::string character_name(Character a) {
    std::uint32_t qm1 = a.field->q() - 1;
    if (a.j == 0) return "eps";
    if (a.j == qm1 / 2) return "phi";
    if (qm1 % 4 == 0 && a.j == qm1 / 4) return "chi4";
    if (qm1 % 4 == 0 && a.j == qm1 - qm1 / 4) return "chi4bar";
    return "chi_" + std::to_string(a.j);
}

Character parse_character(const FiniteField& f, const std::string& spec) {
    if (spec == "eps") return trivial(f);
    if (spec == "phi") return quadratic(f);
    if (spec == "chi4") return quartic(f);
    if (spec == "chi4bar") return char_conj(quartic(f));
    if (spec.rfind("chi_", 0) == 0) return character(f, std::stoll(spec.substr(4)));
    return character(f, std::stoll(spec));
}

}  // namespace ffhyp
