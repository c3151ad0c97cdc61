#include "ffhyp/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ffhyp {

namespace {

std::uint32_t euler_phi(std::uint32_t m) {
    std::uint32_t result = m;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d) {
        if (m % d) continue;
        result -= result / d;
        while (m % d == 0) m /= d;
    }
    if (m > 1) result -= result / m;
    return result;
}

// Exact division of integer polynomials, num / den with den monic.
std::vector<mpz_class> exact_div(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
    const std::size_t dd = den.size() - 1;
    if (num.size() < den.size()) throw std::logic_error("bad cyclotomic division");
    std::vector<mpz_class> quot(num.size() - dd);
    for (std::size_t i = num.size(); i-- > dd;) {
        mpz_class c = num[i];
        quot[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j)
            num[i - dd + j] -= c * den[j];
    }
    for (const auto& r : num)
        if (r != 0) throw std::logic_error("bad cyclotomic division");
    return quot;
}

}  // namespace

CycContext::CycContext(std::uint32_t m) : m_(m), phi_(euler_phi(m)) {
    if (m < 1) throw std::invalid_argument("conductor must be >= 1");
    if (static_cast<std::uint64_t>(m) * phi_ > (1u << 24))
        throw std::invalid_argument(
            "conductor too large for the exact backend; use the float backend");

    // Phi_d for all d | m by exact division: Phi_d = (x^d - 1) / prod_{e|d, e<d} Phi_e.
    std::map<std::uint32_t, std::vector<mpz_class>> phis;
    for (std::uint32_t d = 1; d <= m; ++d) {
        if (m % d) continue;
        std::vector<mpz_class> num(d + 1);
        num[0] = -1;
        num[d] = 1;
        std::vector<mpz_class> acc = num;
        for (const auto& [e, phi_e] : phis)
            if (d % e == 0) acc = exact_div(std::move(acc), phi_e);
        phis.emplace(d, std::move(acc));
    }
    phi_poly_ = phis.at(m);
    if (phi_poly_.size() != phi_ + 1) throw std::logic_error("cyclotomic degree mismatch");

    // Rows of x^e mod Phi_m, e in [0, m).  Built in exact integers; entries
    // must fit int64 (checked).
    std::vector<mpz_class> cur(phi_, 0);
    rows_.assign(std::size_t(m_) * phi_, 0);
    for (std::uint32_t e = 0; e < m_; ++e) {
        if (e < phi_) {
            cur.assign(phi_, 0);
            cur[e] = 1;
        } else {
            // cur <- x * cur mod Phi_m
            mpz_class top = cur[phi_ - 1];
            for (std::uint32_t i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (top != 0)
                for (std::uint32_t i = 0; i < phi_; ++i) cur[i] -= top * phi_poly_[i];
        }
        for (std::uint32_t i = 0; i < phi_; ++i) {
            if (!cur[i].fits_slong_p())
                throw std::overflow_error("cyclotomic reduction table overflow");
            std::int64_t v = cur[i].get_si();
            rows_[std::size_t(e) * phi_ + i] = v;
            if (std::llabs(v) > max_row_entry_) max_row_entry_ = std::llabs(v);
        }
    }

    roots_.resize(m_);
    for (std::uint32_t e = 0; e < m_; ++e) {
        double t = 2.0 * std::numbers::pi * e / m_;
        roots_[e] = {std::cos(t), std::sin(t)};
    }
}

std::shared_ptr<const CycContext> CycContext::get(std::uint32_t m) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const CycContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto ctx = std::shared_ptr<const CycContext>(new CycContext(m));
    cache.emplace(m, ctx);
    return ctx;
}

void CycContext::reduce_accumulate(std::vector<mpz_class>& out, const mpz_class* in) const {
    for (std::uint32_t e = 0; e < phi_; ++e) out[e] += in[e];
    for (std::uint32_t e = phi_; e < m_; ++e) {
        if (in[e] == 0) continue;
        const std::int64_t* r = row(e);
        for (std::uint32_t i = 0; i < phi_; ++i) {
            if (r[i] == 0) continue;
            if (r[i] > 0)
                mpz_addmul_ui(out[i].get_mpz_t(), in[e].get_mpz_t(), static_cast<unsigned long>(r[i]));
            else
                mpz_submul_ui(out[i].get_mpz_t(), in[e].get_mpz_t(), static_cast<unsigned long>(-r[i]));
        }
    }
}

std::vector<mpq_class> CycContext::reduce_poly(const std::vector<mpq_class>& poly) const {
    std::vector<mpq_class> folded(m_, 0);
    for (std::size_t e = 0; e < poly.size(); ++e) folded[e % m_] += poly[e];
    std::vector<mpq_class> out(phi_, 0);
    for (std::uint32_t e = 0; e < phi_; ++e) out[e] += folded[e];
    for (std::uint32_t e = phi_; e < m_; ++e) {
        if (folded[e] == 0) continue;
        const std::int64_t* r = row(e);
        for (std::uint32_t i = 0; i < phi_; ++i)
            if (r[i] != 0) out[i] += folded[e] * mpq_class(r[i]);
    }
    for (auto& c : out) c.canonicalize();
    return out;
}

CycNumber::CycNumber(std::shared_ptr<const CycContext> ctx)
    : ctx_(std::move(ctx)), c_(ctx_->phi(), 0) {}

CycNumber::CycNumber(std::shared_ptr<const CycContext> ctx, std::vector<mpq_class> canonical_coeffs)
    : ctx_(std::move(ctx)), c_(std::move(canonical_coeffs)) {
    if (c_.size() != ctx_->phi()) throw std::invalid_argument("coefficient vector length mismatch");
}

CycNumber CycNumber::from_rational(std::shared_ptr<const CycContext> ctx, const mpq_class& v) {
    CycNumber out(std::move(ctx));
    out.c_[0] = v;
    return out;
}

bool CycNumber::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool CycNumber::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

static void check_same(const CycNumber& a, const CycNumber& b) {
    if (a.m() != b.m()) throw std::invalid_argument("conductor mismatch");
}

CycNumber CycNumber::operator-() const {
    CycNumber out(ctx_);
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = -c_[i];
    return out;
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
    check_same(*this, o);
    CycNumber out(ctx_);
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] + o.c_[i];
    return out;
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
    check_same(*this, o);
    CycNumber out(ctx_);
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] - o.c_[i];
    return out;
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
    check_same(*this, o);
    const std::size_t n = c_.size();
    std::vector<mpq_class> prod(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    return CycNumber(ctx_, ctx_->reduce_poly(prod));
}

CycNumber CycNumber::operator*(const mpq_class& s) const {
    CycNumber out(ctx_);
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] * s;
    return out;
}

namespace {

int q_degree(const std::vector<mpq_class>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

}  // namespace

CycNumber CycNumber::operator/(const CycNumber& o) const {
    check_same(*this, o);
    if (o.is_zero()) throw std::domain_error("division by zero");

    // Extended Euclid over Q[x] against Phi_m (irreducible over Q, so any
    // nonzero residue is invertible).  Track t with t * o = r (mod Phi_m);
    // remainders are normalized monic each step to limit coefficient growth.
    const std::uint32_t phi = ctx_->phi();
    std::vector<mpq_class> r0(phi + 1), r1(o.c_.begin(), o.c_.end());
    for (std::uint32_t i = 0; i <= phi; ++i) r0[i] = mpq_class(ctx_->cyclotomic_poly()[i]);
    std::vector<mpq_class> t0(1, 0), t1(1, 1);

    auto normalize = [](std::vector<mpq_class>& r, std::vector<mpq_class>& t) {
        int d = q_degree(r);
        mpq_class lead = r[d];
        for (auto& c : r) c /= lead;
        for (auto& c : t) c /= lead;
    };
    normalize(r1, t1);

    while (q_degree(r1) > 0) {
        int d0 = q_degree(r0), d1 = q_degree(r1);
        std::vector<mpq_class> rem = r0, quot(d0 - d1 + 1, 0);
        for (int i = d0; i >= d1; --i) {
            mpq_class c = rem[i];  // r1 is monic
            if (c == 0) continue;
            quot[i - d1] = c;
            for (int j = 0; j <= d1; ++j) rem[i - d1 + j] -= c * r1[j];
        }
        std::vector<mpq_class> tn(std::max(t0.size(), t1.size() + quot.size()), 0);
        for (std::size_t i = 0; i < t0.size(); ++i) tn[i] = t0[i];
        for (std::size_t i = 0; i < quot.size(); ++i) {
            if (quot[i] == 0) continue;
            for (std::size_t j = 0; j < t1.size(); ++j) tn[i + j] -= quot[i] * t1[j];
        }
        r0 = std::move(r1);
        t0 = std::move(t1);
        r1 = std::move(rem);
        t1 = std::move(tn);
        if (q_degree(r1) < 0) throw std::logic_error("cyclotomic polynomial not irreducible?");
        normalize(r1, t1);
    }
    // r1 is now the constant 1 (monic constant): t1 * o = 1 (mod Phi_m).
    CycNumber inv(ctx_, ctx_->reduce_poly(t1));
    return *this * inv;
}

bool CycNumber::operator==(const CycNumber& o) const {
    check_same(*this, o);
    return c_ == o.c_;
}

CycNumber CycNumber::conj() const {
    std::vector<mpq_class> poly(ctx_->m(), 0);
    const std::uint32_t m = ctx_->m();
    for (std::size_t i = 0; i < c_.size(); ++i)
        poly[(m - i) % m] += c_[i];
    return CycNumber(ctx_, ctx_->reduce_poly(poly));
}

ApproxNumber CycNumber::embed() const {
    ApproxNumber out{0.0, 0.0};
    const auto& roots = ctx_->roots();
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) out += roots[i] * c_[i].get_d();
    return out;
}

std::string CycNumber::to_json() const {
    std::ostringstream os;
    os << "{\"m\":" << ctx_->m() << ",\"coeffs\":[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        os << (i ? "," : "") << '"' << c_[i].get_str() << '"';
    }
    os << "]}";
    return os.str();
}

std::string CycNumber::to_string() const {
    if (is_zero()) return "0";
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

CycNumber zeta(std::uint32_t m, std::int64_t a) {
    auto ctx = CycContext::get(m);
    std::int64_t e = a % static_cast<std::int64_t>(m);
    if (e < 0) e += m;
    std::vector<mpq_class> poly(static_cast<std::size_t>(e) + 1, 0);
    poly[static_cast<std::size_t>(e)] = 1;
    return CycNumber(ctx, ctx->reduce_poly(poly));
}

CycNumber reduce_mod_cyclotomic(const std::vector<mpq_class>& poly, std::uint32_t m) {
    auto ctx = CycContext::get(m);
    return CycNumber(ctx, ctx->reduce_poly(poly));
}

}  // namespace ffhyp
