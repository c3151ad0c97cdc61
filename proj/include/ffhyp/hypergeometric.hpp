#pragma once

#include "ffhyp/character_sums.hpp"

namespace ffhyp {

/// Parameters of a finite-field 2F1: upper A, B; lower C; argument x.
struct Hyp2F1Params {
    Character a, b, c;
    FieldElement x;
};

/// Parameters of the pseudo hypergeometric function F*(C, D; x).
struct FStarParams {
    Character c, d;
    FieldElement x;
};

/// 2F1(A,B;C | x) = eps(x)/q * sum_y B(y) (conj B)C(y-1) (conj A)(1-xy).
/// Total in all arguments; the eps(x) factor makes the value 0 at x = 0.
CycNumber hyp2f1(const GaussTable& t, Character a, Character b, Character c, FieldElement x);
CycNumber hyp2f1(const GaussTable& t, const Hyp2F1Params& p);

/// F*(C,D;x) by the character sum over all chi of
/// (C chi^2 over chi)(C chi over D chi) chi(x/4), plus the CD(-1) tail term.
CycNumber fstar_char_sum(const GaussTable& t, Character c, Character d, FieldElement x);
CycNumber fstar_char_sum(const GaussTable& t, const FStarParams& p);

/// F*(C,D;x) = C(2)/q * sum_t C(conj D)^2(1-t) (conj C)D(1-x-t^2).
/// Agrees with fstar_char_sum whenever C != D and x is outside {0,1}.
CycNumber fstar_point_count(const GaussTable& t, Character c, Character d, FieldElement x);
CycNumber fstar_point_count(const GaussTable& t, const FStarParams& p);

ApproxNumber hyp2f1_approx(const FiniteField& f, Character a, Character b, Character c, FieldElement x);
ApproxNumber fstar_char_sum_approx(const FiniteField& f, Character c, Character d, FieldElement x);
ApproxNumber fstar_point_count_approx(const FiniteField& f, Character c, Character d, FieldElement x);

}  // namespace ffhyp
