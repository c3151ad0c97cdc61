#include "ffhyp/hypergeometric.hpp"

#include "ffhyp/engine.hpp"

namespace ffhyp {

CycNumber hyp2f1(const GaussTable& t, Character a, Character b, Character c, FieldElement x) {
    engine::ExactBackend bk(t);
    return bk.to_cyc(engine::hyp2f1_value(bk, a.j, b.j, c.j, x));
}

CycNumber hyp2f1(const GaussTable& t, const Hyp2F1Params& p) {
    return hyp2f1(t, p.a, p.b, p.c, p.x);
}

CycNumber fstar_char_sum(const GaussTable& t, Character c, Character d, FieldElement x) {
    engine::ExactBackend bk(t);
    return bk.to_cyc(engine::fstar_charsum_value(bk, c.j, d.j, x));
}

CycNumber fstar_char_sum(const GaussTable& t, const FStarParams& p) {
    return fstar_char_sum(t, p.c, p.d, p.x);
}

CycNumber fstar_point_count(const GaussTable& t, Character c, Character d, FieldElement x) {
    engine::ExactBackend bk(t);
    return bk.to_cyc(engine::fstar_point_value(bk, c.j, d.j, x));
}

CycNumber fstar_point_count(const GaussTable& t, const FStarParams& p) {
    return fstar_point_count(t, p.c, p.d, p.x);
}

ApproxNumber hyp2f1_approx(const FiniteField& f, Character a, Character b, Character c, FieldElement x) {
    engine::FloatBackend bk(f);
    return engine::hyp2f1_value(bk, a.j, b.j, c.j, x);
}

ApproxNumber fstar_char_sum_approx(const FiniteField& f, Character c, Character d, FieldElement x) {
    engine::FloatBackend bk(f);
    return engine::fstar_charsum_value(bk, c.j, d.j, x);
}

ApproxNumber fstar_point_count_approx(const FiniteField& f, Character c, Character d, FieldElement x) {
    engine::FloatBackend bk(f);
    return engine::fstar_point_value(bk, c.j, d.j, x);
}

}  // namespace ffhyp
