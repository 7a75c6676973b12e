#include "pgl/fq.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgl {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, constant first

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

// f mod g over F_p, g monic.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    f = trim(f);
    while (f.size() >= g.size()) {
        std::uint32_t c = f.back();
        std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::uint64_t t = f[shift + i] + static_cast<std::uint64_t>(p - 1) * c % p * g[i];
            f[shift + i] = static_cast<std::uint32_t>(t % p);
        }
        f = trim(f);
    }
    return f;
}

bool poly_divides(const Poly& g, const Poly& f, std::uint32_t p) {
    return poly_mod(f, g, p).empty();
}

// Irreducibility of a monic polynomial of degree >= 1 by trial division by
// all monic polynomials of degree 1..deg/2.  Fine at q <= 2^16.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
    std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) { g[i] = c % p; c /= p; }
            g[d] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

FieldPtr FqField::make(std::uint32_t p, std::uint32_t e) {
    if (!is_prime(p)) throw std::invalid_argument("FqField: p is not prime");
    if (e < 1) throw std::invalid_argument("FqField: e must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > (1u << 16)) throw std::invalid_argument("FqField: p^e exceeds 2^16");
    }

    auto F = std::shared_ptr<FqField>(new FqField());
    F->p_ = p;
    F->e_ = e;
    F->q_ = static_cast<std::uint32_t>(q);

    if (e > 1) {
        // Lexicographically first monic irreducible modulus: scan coefficient
        // encodings in increasing order.
        bool found = false;
        for (std::uint32_t code = 0; code < F->q_ && !found; ++code) {
            Poly f(e + 1, 0);
            std::uint32_t c = code;
            for (std::uint32_t i = 0; i < e; ++i) { f[i] = c % p; c /= p; }
            f[e] = 1;
            if (poly_irreducible(f, p)) {
                F->modulus_ = f;
                found = true;
            }
        }
        if (!found) throw std::logic_error("FqField: no irreducible modulus found");
    }

    // Find the least multiplicative generator and verify its order is q-1.
    std::uint32_t m = F->q_ - 1;
    auto factors = prime_factors(m);
    FqElem gen = 0;
    for (FqElem a = 1; a < F->q_; ++a) {
        bool ok = true;
        for (auto f : factors) {
            if (F->pow(a, m / f) == F->one()) { ok = false; break; }
        }
        if (ok && F->pow(a, m) == F->one()) { gen = a; break; }
    }
    if (m > 0 && gen == 0 && F->q_ > 2)
        throw std::logic_error("FqField: no multiplicative generator found");
    F->gen_ = F->q_ == 2 ? 1 : gen;

    if (F->q_ <= 4096 && F->q_ > 2) {
        F->log_.assign(F->q_, 0);
        F->alog_.assign(2 * m, 0);
        FqElem x = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            F->alog_[i] = x;
            F->alog_[i + m] = x;
            F->log_[x] = i;
            x = F->mul_poly(x, F->gen_);
        }
    }
    return F;
}

FqElem FqField::add(FqElem a, FqElem b) const {
    if (e_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    FqElem out = 0, mul = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        out += (a % p_ + b % p_) % p_ * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return out;
}

FqElem FqField::neg(FqElem a) const {
    if (e_ == 1) return (p_ - a) % p_;
    if (p_ == 2) return a;
    FqElem out = 0, mul = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        out += (p_ - a % p_) % p_ * mul;
        a /= p_;
        mul *= p_;
    }
    return out;
}

FqElem FqField::mul_poly(FqElem a, FqElem b) const {
    if (e_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    Poly prod(2 * e_ - 1, 0);
    auto da = digits(a), db = digits(b);
    for (std::uint32_t i = 0; i < e_; ++i)
        for (std::uint32_t j = 0; j < e_; ++j)
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
    prod = poly_mod(prod, modulus_, p_);
    prod.resize(e_, 0);
    return from_digits(prod);
}

FqElem FqField::mul(FqElem a, FqElem b) const {
    if (e_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return alog_[log_[a] + log_[b]];
    return mul_poly(a, b);
}

FqElem FqField::pow(FqElem a, std::uint64_t n) const {
    FqElem out = one(), base = a;
    while (n) {
        if (n & 1) out = mul_poly(out, base);
        base = mul_poly(base, base);
        n >>= 1;
    }
    return out;
}

FqElem FqField::inv(FqElem a) const {
    if (a == 0) throw std::domain_error("FqField: inverse of zero");
    if (!log_.empty()) return alog_[(q_ - 1) - log_[a]];
    return pow(a, q_ - 2);
}

FqElem FqField::frobenius(FqElem x, std::uint32_t d) const {
    // x^{p^d}; Frob^e = id, so reduce d mod e.
    std::uint32_t k = d % e_;
    FqElem out = x;
    for (std::uint32_t i = 0; i < k; ++i) out = pow(out, p_);
    return out;
}

std::uint32_t FqField::element_order(FqElem a) const {
    if (a == 0) throw std::domain_error("FqField: order of zero");
    std::uint32_t n = 1;
    FqElem x = a;
    while (x != one()) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

std::vector<std::uint32_t> FqField::digits(FqElem a) const {
    std::vector<std::uint32_t> d(e_);
    for (std::uint32_t i = 0; i < e_; ++i) { d[i] = a % p_; a /= p_; }
    return d;
}

FqElem FqField::from_digits(const std::vector<std::uint32_t>& d) const {
    FqElem a = 0, mul = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        a += (i < d.size() ? d[i] % p_ : 0) * mul;
        mul *= p_;
    }
    return a;
}

std::vector<std::uint32_t> FqField::mult_matrix(FqElem a) const {
    std::vector<std::uint32_t> m(e_ * e_, 0);  // m[i + e*j] = coeff i of a*x^j
    FqElem ax = a;
    for (std::uint32_t j = 0; j < e_; ++j) {
        auto d = digits(ax);
        for (std::uint32_t i = 0; i < e_; ++i) m[i + e_ * j] = d[i];
        // multiply by x
        FqElem x = e_ == 1 ? 1 % p_ : p_;  // the element "x" (or 1 for e=1)
        ax = mul(ax, x);
    }
    return m;
}

std::string FqField::to_string(FqElem a) const { return std::to_string(a); }

std::string FqField::name() const {
    return "F_" + std::to_string(q_);
}

}  // namespace pgl
