#include "ffhyp/classical_analogue.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace ffhyp {

RationalPoly::RationalPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

RationalPoly RationalPoly::constant(const mpq_class& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const mpq_class& c, std::size_t k) {
    std::vector<mpq_class> v(k + 1, 0);
    v[k] = c;
    return RationalPoly(std::move(v));
}

void RationalPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
    std::vector<mpq_class> out(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const {
    std::vector<mpq_class> out(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<mpq_class> out(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) out[i + j] += c_[i] * o.c_[j];
    }
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::operator*(const mpq_class& s) const {
    std::vector<mpq_class> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * s;
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::pow(unsigned e) const {
    RationalPoly out = constant(1);
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
}

std::string RationalPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i == 1) os << "*z";
        if (i > 1) os << "*z^" << i;
    }
    return os.str();
}

namespace {

bool is_nonpositive_integer(const mpq_class& v) {
    return v.get_den() == 1 && v.get_num() <= 0;
}

}  // namespace

TerminatingHypSeries::TerminatingHypSeries(mpq_class a_, mpq_class b_, mpq_class c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    mpz_class best(-1);
    for (const mpq_class* u : {&a, &b}) {
        if (!is_nonpositive_integer(*u)) continue;
        mpz_class len = -u->get_num();
        if (best < 0 || len < best) best = len;
    }
    if (best < 0) throw std::invalid_argument("series does not terminate");
    terms = static_cast<unsigned>(best.get_ui()) + 1;
    // (c)_k must stay nonzero for k < terms.
    if (is_nonpositive_integer(c) && -c.get_num() < terms)
        throw std::domain_error("lower parameter collides with a series term");
}

RationalPoly terminating_2f1_poly(const TerminatingHypSeries& s, const RationalPoly& argument) {
    RationalPoly out = RationalPoly::constant(1);
    RationalPoly arg_pow = RationalPoly::constant(1);
    mpq_class coef(1);
    for (unsigned k = 1; k < s.terms; ++k) {
        // (a)_k/(a)_{k-1} = a + k - 1, etc.
        coef *= (s.a + static_cast<long>(k) - 1) * (s.b + static_cast<long>(k) - 1);
        coef /= (s.c + static_cast<long>(k) - 1) * static_cast<long>(k);
        arg_pow = arg_pow * argument;
        out = out + arg_pow * coef;
    }
    return out;
}

mpq_class gamma_ratio(unsigned n) {
    // Gamma(2n+3)/Gamma(n+2) = (n+2)(n+3)...(2n+2)
    mpq_class num(1);
    for (unsigned k = n + 2; k <= 2 * n + 2; ++k) num *= k;
    // Gamma(n+3/4)/Gamma(3/4) = (3/4)(7/4)...(n-1+3/4)
    mpq_class den(1);
    for (unsigned j = 0; j < n; ++j) den *= mpq_class(4 * static_cast<long>(j) + 3, 4);
    return num / den;
}

RationalPoly stanton_lhs(unsigned n) {
    // (z-1)^(4n+2) 2F1(-n-1/4, -2n-1; -n+1/4 | -((z+1)/(z-1))^2):
    // term k contributes [Pochhammer ratio] (-1)^k (z+1)^(2k) (z-1)^(4n+2-2k).
    TerminatingHypSeries s(mpq_class(-4 * static_cast<long>(n) - 1, 4), mpq_class(-2 * static_cast<long>(n) - 1),
                           mpq_class(-4 * static_cast<long>(n) + 1, 4));
    RationalPoly zp1({mpq_class(1), mpq_class(1)});
    RationalPoly zm1({mpq_class(-1), mpq_class(1)});
    RationalPoly out;
    mpq_class coef(1);
    for (unsigned k = 0; k < s.terms; ++k) {
        if (k > 0) {
            coef *= (s.a + static_cast<long>(k) - 1) * (s.b + static_cast<long>(k) - 1);
            coef /= (s.c + static_cast<long>(k) - 1) * static_cast<long>(k);
            coef = -coef;  // the (-1)^k from the squared-ratio argument
        }
        out = out + zp1.pow(2 * k) * zm1.pow(4 * n + 2 - 2 * k) * coef;
    }
    return out;
}

RationalPoly stanton_rhs(unsigned n) {
    TerminatingHypSeries s(mpq_class(-4 * static_cast<long>(n) - 1, 4), mpq_class(-static_cast<long>(n)),
                           mpq_class(5, 4));
    RationalPoly series = terminating_2f1_poly(s, RationalPoly::monomial(1, 4));
    return series * RationalPoly::monomial(mpq_class(-2) * gamma_ratio(n), 1);
}

IdentityReport verify_stanton(unsigned n_max) {
    auto start = std::chrono::steady_clock::now();
    IdentityReport r;
    r.identity = "stanton";
    r.field = "Q";
    r.backend = "exact";
    for (unsigned n = 0; n <= n_max; ++n) {
        RationalPoly lhs = stanton_lhs(n);
        RationalPoly rhs = stanton_rhs(n);
        ++r.tested;
        bool ok = lhs == rhs && lhs.degree() == static_cast<int>(4 * n + 1) && lhs.coeff(0) == 0;
        if (ok) {
            ++r.passed;
            continue;
        }
        ++r.failed;
        Witness w;
        w.tuple = {{"n", std::to_string(n)}};
        w.lhs = lhs.to_string();
        w.rhs = rhs.to_string();
        w.diff = (lhs - rhs).to_string();
        r.witnesses.push_back(std::move(w));
    }
    r.millis = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count());
    return r;
}

}  // namespace ffhyp
