#include "ffhyp/finite_field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ffhyp {

namespace {

constexpr std::uint64_t kMaxQ = 1u << 20;

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

// Dense polynomials over Z/p, low-degree-first, no trailing-zero trimming
// invariants; degree tracked by scanning.
using Poly = std::vector<std::uint32_t>;

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    // mod is monic of degree d: eliminate top coefficients downwards.
    const int d = degree(mod);
    for (int i = static_cast<int>(prod.size()) - 1; i >= d; --i) {
        std::uint32_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < d; ++j) {
            std::uint64_t sub = static_cast<std::uint64_t>(c) * mod[j] % p;
            prod[i - d + j] = (prod[i - d + j] + p - sub) % p;
        }
    }
    prod.resize(d, 0);
    prod.resize(std::max<std::size_t>(d, 1), 0);
    return prod;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
    Poly r{1};
    r.resize(std::max<std::size_t>(degree(mod), 1), 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

bool poly_is_one(const Poly& f) { return degree(f) == 0 && f[0] == 1; }

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    auto inv_mod_p = [p](std::uint32_t v) {
        std::uint32_t r = 1;
        std::uint64_t base = v, e = p - 2;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>(r) * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    while (degree(b) >= 0) {
        // a mod b
        int db = degree(b);
        std::uint32_t lead_inv = inv_mod_p(b[db]);
        for (int i = degree(a); i >= db; --i) {
            std::uint32_t c = static_cast<std::uint64_t>(a[i]) * lead_inv % p;
            if (c == 0) continue;
            for (int j = 0; j <= db; ++j) {
                std::uint64_t sub = static_cast<std::uint64_t>(c) * b[j] % p;
                a[i - db + j] = (a[i - db + j] + p - sub) % p;
            }
        }
        std::swap(a, b);
    }
    int da = degree(a);
    if (da >= 0 && a[da] != 1) {  // normalize monic
        std::uint32_t lead_inv = inv_mod_p(a[da]);
        for (auto& c : a) c = static_cast<std::uint64_t>(c) * lead_inv % p;
    }
    return a;
}

// Rabin test: f (monic, degree n) is irreducible over F_p iff
// x^(p^n) = x (mod f) and gcd(x^(p^(n/r)) - x, f) = 1 for each prime r | n.
bool is_irreducible(const Poly& f, std::uint32_t n, std::uint32_t p) {
    Poly x{0, 1};
    std::uint64_t pn = 1;
    for (std::uint32_t i = 0; i < n; ++i) pn *= p;
    Poly xq = poly_powmod(x, pn, f, p);
    Poly xm = xq;
    // xq - x
    xm.resize(std::max<std::size_t>(xm.size(), 2), 0);
    xm[1] = (xm[1] + p - 1) % p;
    if (degree(xm) >= 0) return false;
    std::uint32_t rem = n;
    for (std::uint32_t r = 2; r <= rem; ++r) {
        if (rem % r != 0) continue;
        while (rem % r == 0) rem /= r;
        std::uint64_t pk = 1;
        for (std::uint32_t i = 0; i < n / r; ++i) pk *= p;
        Poly t = poly_powmod(x, pk, f, p);
        t.resize(std::max<std::size_t>(t.size(), 2), 0);
        t[1] = (t[1] + p - 1) % p;
        if (degree(t) < 0) return false;  // every root lies in a proper subfield
        if (!poly_is_one(poly_gcd(t, f, p))) return false;
    }
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= v; ++d) {
        if (v % d) continue;
        out.push_back(d);
        while (v % d == 0) v /= d;
    }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace

FiniteField::FiniteField(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {
    if (p % 2 == 0) throw std::invalid_argument("characteristic must be odd");
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        q *= p;
        if (q > kMaxQ) throw std::invalid_argument("q exceeds the table guard (2^20)");
    }
    q_ = static_cast<std::uint32_t>(q);

    // Modulus: lexicographically least monic irreducible of degree n,
    // coefficient tuples (c0, .., c_{n-1}) compared with c0 most significant.
    if (n == 1) {
        modulus_ = {0, 1};
    } else {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < n; ++i) count *= p;
        for (std::uint64_t k = 0; k < count; ++k) {
            Poly f(n + 1, 0);
            f[n] = 1;
            std::uint64_t rest = k;
            for (std::uint32_t i = 0; i < n; ++i) {  // c0 varies slowest
                std::uint64_t place = 1;
                for (std::uint32_t j = 0; j < n - 1 - i; ++j) place *= p;
                f[i] = static_cast<std::uint32_t>(rest / place);
                rest %= place;
            }
            if (is_irreducible(f, n, p)) {
                modulus_ = f;
                break;
            }
        }
        if (modulus_.empty()) throw std::logic_error("no irreducible polynomial found");
    }

    auto affine_of = [&](const Poly& e) {
        std::uint32_t a = 0, place = 1;
        for (std::uint32_t i = 0; i < n_; ++i) {
            a += (i < e.size() ? e[i] : 0) * place;
            place *= p_;
        }
        return a;
    };
    auto poly_of_affine = [&](std::uint32_t a) {
        Poly e(std::max<std::uint32_t>(n_, 1), 0);
        for (std::uint32_t i = 0; i < n_; ++i) {
            e[i] = a % p_;
            a /= p_;
        }
        return e;
    };

    // Generator: affine-least element of multiplicative order q-1.
    auto factors = prime_factors(q_ - 1);
    std::uint32_t gen_affine = 0;
    for (std::uint32_t a = 1; a < q_; ++a) {
        Poly e = poly_of_affine(a);
        bool primitive = true;
        for (std::uint32_t r : factors) {
            if (poly_is_one(poly_powmod(e, (q_ - 1) / r, modulus_, p_))) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen_affine = a;
            break;
        }
    }
    if (gen_affine == 0) throw std::logic_error("no generator found");

    index_to_affine_.assign(q_, 0);
    affine_to_index_.assign(q_, 0);
    Poly g = poly_of_affine(gen_affine);
    Poly acc{1};
    for (std::uint32_t k = 1; k <= q_ - 1; ++k) {
        std::uint32_t a = affine_of(acc);
        index_to_affine_[k] = a;
        affine_to_index_[a] = k;
        acc = poly_mulmod(acc, g, modulus_, p_);
    }
    if (!poly_is_one(acc)) throw std::logic_error("generator order mismatch");

    // trace(x^i) for the power basis; traces of arbitrary elements extend
    // F_p-linearly.  trace(b) = b + b^p + ... + b^(p^(n-1)), which must land
    // in the prime subfield.
    std::vector<std::uint32_t> basis_trace(n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i) {
        Poly b(i + 1, 0);
        b[i] = 1;
        Poly total(std::max<std::uint32_t>(n_, 1), 0);
        Poly t = b;
        for (std::uint32_t k = 0; k < n_; ++k) {
            for (std::size_t j = 0; j < t.size(); ++j)
                total[j] = (total[j] + t[j]) % p_;
            t = poly_powmod(t, p_, modulus_, p_);
        }
        if (degree(total) > 0) throw std::logic_error("trace not in prime field");
        basis_trace[i] = total.empty() ? 0 : total[0];
    }
    trace_.assign(q_, 0);
    for (std::uint32_t idx = 0; idx < q_; ++idx) {
        std::uint32_t a = index_to_affine_[idx];
        std::uint64_t s = 0;
        for (std::uint32_t i = 0; i < n_; ++i) {
            s += static_cast<std::uint64_t>(a % p_) * basis_trace[i];
            a /= p_;
        }
        trace_[idx] = static_cast<std::uint32_t>(s % p_);
    }
}

FiniteField FiniteField::from_descriptor(const std::string& desc) {
    std::size_t caret = desc.find('^');
    auto parse_u32 = [](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad field descriptor");
        unsigned long v = std::stoul(s);
        if (v > 0xffffffffUL) throw std::invalid_argument("bad field descriptor");
        return static_cast<std::uint32_t>(v);
    };
    if (caret != std::string::npos)
        return FiniteField(parse_u32(desc.substr(0, caret)), parse_u32(desc.substr(caret + 1)));
    // A bare integer may be a prime power: "9" means 3^2.
    std::uint32_t v = parse_u32(desc);
    if (v < 3) throw std::invalid_argument("q must be an odd prime power >= 3");
    std::uint32_t p = v;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= v; ++d)
        if (v % d == 0) {
            p = d;
            break;
        }
    std::uint32_t n = 0, rest = v;
    while (rest % p == 0) {
        rest /= p;
        ++n;
    }
    if (rest != 1) throw std::invalid_argument("q must be a prime power");
    return FiniteField(p, n);
}

std::string FiniteField::descriptor() const {
    if (n_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(n_);
}

FieldElement FiniteField::check(FieldElement a) const {
    if (a.index >= q_) throw std::invalid_argument("element index out of range");
    return a;
}

FieldElement FiniteField::minus_one() const {
    return {1 + (q_ - 1) / 2};  // g^((q-1)/2)
}

FieldElement FiniteField::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return from_affine(static_cast<std::uint32_t>(r));
}

FieldElement FiniteField::generator_pow(std::int64_t k) const {
    std::int64_t r = k % static_cast<std::int64_t>(q_ - 1);
    if (r < 0) r += q_ - 1;
    return {static_cast<std::uint32_t>(r) + 1};
}

FieldElement FiniteField::add(FieldElement a, FieldElement b) const {
    std::uint32_t x = to_affine(a), y = to_affine(b);
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        out += ((x % p_) + (y % p_)) % p_ * place;
        x /= p_;
        y /= p_;
        place *= p_;
    }
    return {affine_to_index_[out]};
}

FieldElement FiniteField::neg(FieldElement a) const {
    if (check(a).index == 0) return a;
    std::uint32_t e = (a.index - 1 + (q_ - 1) / 2) % (q_ - 1);
    return {e + 1};
}

FieldElement FiniteField::sub(FieldElement a, FieldElement b) const {
    return add(a, neg(b));
}

FieldElement FiniteField::mul(FieldElement a, FieldElement b) const {
    if (check(a).index == 0 || check(b).index == 0) return {0};
    return {(a.index - 1 + b.index - 1) % (q_ - 1) + 1};
}

FieldElement FiniteField::inv(FieldElement a) const {
    if (check(a).index == 0) throw std::domain_error("inverse of zero");
    return {(q_ - 1 - (a.index - 1)) % (q_ - 1) + 1};
}

FieldElement FiniteField::pow(FieldElement a, std::int64_t e) const {
    if (check(a).index == 0) {
        if (e > 0) return {0};
        if (e == 0) return one();
        throw std::domain_error("negative power of zero");
    }
    std::int64_t d = static_cast<std::int64_t>(a.index - 1) % (q_ - 1);
    std::int64_t er = e % static_cast<std::int64_t>(q_ - 1);
    std::int64_t x = (d * er) % static_cast<std::int64_t>(q_ - 1);
    if (x < 0) x += q_ - 1;
    return {static_cast<std::uint32_t>(x) + 1};
}

std::uint32_t FiniteField::dlog(FieldElement a) const {
    if (check(a).index == 0) throw std::domain_error("dlog of zero");
    return a.index - 1;
}

FieldElement FiniteField::sqrt_of_minus_one() const {
    if (q_ % 4 != 1) throw std::domain_error("q must be 1 mod 4");
    return {(q_ - 1) / 4 + 1};
}

std::vector<std::uint32_t> FiniteField::coeffs(FieldElement a) const {
    std::uint32_t v = to_affine(a);
    std::vector<std::uint32_t> c(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

FieldElement FiniteField::from_affine(std::uint32_t a) const {
    if (a >= q_) throw std::invalid_argument("affine value out of range");
    return {affine_to_index_[a]};
}

FieldElement FiniteField::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != n_) throw std::invalid_argument("coefficient vector length mismatch");
    std::uint32_t a = 0, place = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
        a += c[i] * place;
        place *= p_;
    }
    return {affine_to_index_[a]};
}

FieldElement FiniteField::element_from_index(std::uint32_t index) const {
    return check({index});
}

std::string FiniteField::format(FieldElement a) const {
    if (a.index == 0) return "0";
    if (a.index == 1) return "1";
    return "g^" + std::to_string(a.index - 1);
}

FieldElement FiniteField::parse_element(const std::string& spec) const {
    if (spec.rfind("g^", 0) == 0) {
        long long k = std::stoll(spec.substr(2));
        return generator_pow(k);
    }
    if (spec == "g") return generator();
    unsigned long v = std::stoul(spec);
    if (v >= q_) throw std::invalid_argument("element index out of range");
    return {static_cast<std::uint32_t>(v)};
}

std::string FiniteField::to_json() const {
    std::ostringstream os;
    os << "{\"p\":" << p_ << ",\"n\":" << n_ << ",\"q\":" << q_ << ",\"modulus\":[";
    for (std::size_t i = 0; i < modulus_.size(); ++i)
        os << (i ? "," : "") << modulus_[i];
    os << "],\"generator_affine\":" << to_affine(generator()) << ",\"power_to_affine\":[";
    for (std::uint32_t k = 0; k < q_ - 1; ++k)
        os << (k ? "," : "") << index_to_affine_[k + 1];
    os << "],\"dlog_by_affine\":[";
    for (std::uint32_t a = 0; a < q_; ++a) {
        os << (a ? "," : "");
        if (affine_to_index_[a] == 0)
            os << "null";
        else
            os << (affine_to_index_[a] - 1);
    }
    os << "],\"trace_by_affine\":[";
    for (std::uint32_t a = 0; a < q_; ++a)
        os << (a ? "," : "") << trace_[affine_to_index_[a]];
    os << "]}";
    return os.str();
}

}  // namespace ffhyp
