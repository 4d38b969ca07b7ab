#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pfs {

using Elt = std::uint16_t;

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace detail {

// polynomials over GF(p), coefficients low to high, no trailing zeros
using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline unsigned inv_mod(unsigned a, unsigned p) {
    for (unsigned x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    return 0;
}

inline Poly poly_mod(Poly a, const Poly& m, unsigned p) {
    trim(a);
    unsigned lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        unsigned c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
        trim(a);
    }
    return a;
}

// monic polynomial of degree d whose lower coefficients are the base-p
// digits of code
inline Poly monic_from_code(unsigned code, unsigned d, unsigned p) {
    Poly f(d + 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        f[i] = code % p;
        code /= p;
    }
    f[d] = 1;
    return f;
}

inline unsigned ipow(unsigned b, unsigned e) {
    unsigned r = 1;
    while (e--) r *= b;
    return r;
}

inline bool irreducible(const Poly& f, unsigned p) {
    unsigned k = static_cast<unsigned>(f.size()) - 1;
    for (unsigned d = 1; 2 * d <= k; ++d) {
        unsigned count = ipow(p, d);
        for (unsigned c = 0; c < count; ++c)
            if (poly_mod(f, monic_from_code(c, d, p), p).empty()) return false;
    }
    return true;
}

}  // namespace detail

// GF(p^k). Elements are codes 0..q-1; code = sum c_i p^i in the
// polynomial basis 1, x, ..., x^(k-1) modulo the chosen modulus.
class Field {
public:
    unsigned p = 2, k = 1, q = 2;
    std::vector<unsigned> modulus;  // length k+1, low to high, monic

    // Least irreducible monic degree-k polynomial, ordered by the integer
    // sum c_i p^i (so the top non-leading coefficient is most significant).
    static std::vector<unsigned> default_modulus(unsigned p, unsigned k) {
        unsigned count = detail::ipow(p, k);
        for (unsigned c = 0; c < count; ++c) {
            auto f = detail::monic_from_code(c, k, p);
            if (detail::irreducible(f, p)) return f;
        }
        throw InternalInconsistency("no irreducible polynomial found");
    }

    static constexpr unsigned kMaxOrder = 1024;

    Field(unsigned p_, unsigned k_) : p(p_), k(k_) {
        if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
        if (k == 0) throw InputError("field degree must be positive");
        unsigned long long qq = 1;
        for (unsigned i = 0; i < k; ++i) {
            qq *= p;
            if (qq > kMaxOrder)
                throw InputError("field order " + std::to_string(p) + "^" + std::to_string(k) +
                                 " exceeds " + std::to_string(kMaxOrder));
        }
        q = static_cast<unsigned>(qq);
        modulus = default_modulus(p, k);
        build_tables();
    }

    Elt add(Elt a, Elt b) const { return add_[a * q + b]; }
    Elt sub(Elt a, Elt b) const { return add_[a * q + neg_[b]]; }
    Elt neg(Elt a) const { return neg_[a]; }
    Elt mul(Elt a, Elt b) const { return mul_[a * q + b]; }
    Elt inv(Elt a) const {
        if (a == 0) throw InternalInconsistency("inverse of zero");
        return inv_[a];
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, unsigned long long e) const {
        Elt r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Elt frobenius(Elt a) const { return pow(a, p); }
    // image of an integer in the prime field
    Elt from_int(long long n) const {
        long long r = n % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<Elt>(r);
    }
    // the class of x in GF(p)[x]/(modulus); equals p when k > 1
    Elt generator() const { return k == 1 ? static_cast<Elt>(1) : static_cast<Elt>(p); }

    std::vector<unsigned> digits(Elt a) const {
        std::vector<unsigned> d(k);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = a % p;
            a = static_cast<Elt>(a / p);
        }
        return d;
    }
    Elt from_digits(const std::vector<unsigned>& d) const {
        unsigned c = 0;
        for (unsigned i = k; i-- > 0;) c = c * p + d[i] % p;
        return static_cast<Elt>(c);
    }

    bool char2() const { return p == 2; }
    const Elt* mul_row(Elt a) const { return &mul_[a * q]; }
    const Elt* add_row(Elt a) const { return &add_[a * q]; }

    std::string name() const {
        return "GF(" + std::to_string(q) + ")";
    }

    bool operator==(const Field& o) const { return p == o.p && k == o.k; }

private:
    std::vector<Elt> add_, mul_, neg_, inv_;

    void build_tables() {
        add_.assign(static_cast<std::size_t>(q) * q, 0);
        mul_.assign(static_cast<std::size_t>(q) * q, 0);
        neg_.assign(q, 0);
        inv_.assign(q, 0);
        std::vector<std::vector<unsigned>> dig(q);
        for (unsigned a = 0; a < q; ++a) dig[a] = digits(static_cast<Elt>(a));
        for (unsigned a = 0; a < q; ++a) {
            std::vector<unsigned> n(k);
            for (unsigned i = 0; i < k; ++i) n[i] = (p - dig[a][i]) % p;
            neg_[a] = from_digits(n);
            for (unsigned b = 0; b < q; ++b) {
                std::vector<unsigned> s(k);
                for (unsigned i = 0; i < k; ++i) s[i] = (dig[a][i] + dig[b][i]) % p;
                add_[a * q + b] = from_digits(s);
                detail::Poly prod(2 * k, 0);
                for (unsigned i = 0; i < k; ++i)
                    for (unsigned j = 0; j < k; ++j)
                        prod[i + j] = (prod[i + j] + dig[a][i] * dig[b][j]) % p;
                auto r = detail::poly_mod(prod, modulus, p);
                r.resize(k, 0);
                mul_[a * q + b] = from_digits(r);
            }
        }
        for (unsigned a = 1; a < q; ++a)
            for (unsigned b = 1; b < q; ++b)
                if (mul_[a * q + b] == 1) {
                    inv_[a] = static_cast<Elt>(b);
                    break;
                }
    }
};

using FieldPtr = std::shared_ptr<const Field>;

// Fields are cached so that repeated requests share tables.
inline FieldPtr make_field(unsigned p, unsigned k) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const Field>(p, k);
    cache.emplace(key, f);
    return f;
}

}  // namespace pfs
