#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace pfs {

using Rng = std::mt19937_64;

inline Vec random_vec(const Field& F, std::size_t n, Rng& rng) {
    std::uniform_int_distribution<unsigned> d(0, F.q - 1);
    Vec v(n);
    for (auto& x : v) x = static_cast<Elt>(d(rng));
    return v;
}

// Associative unital algebra given by structure constants:
// b_i b_j = sum_m c[(i*d + j)*d + m] b_m.
class Algebra {
public:
    FieldPtr F;
    std::size_t d = 0;
    std::vector<Elt> c;
    Vec one;

    Algebra() = default;
    Algebra(FieldPtr f, std::size_t dim) : F(std::move(f)), d(dim), c(dim * dim * dim, 0), one(dim, 0) {}

    const Elt* prod(std::size_t i, std::size_t j) const { return c.data() + (i * d + j) * d; }
    Elt* prod(std::size_t i, std::size_t j) { return c.data() + (i * d + j) * d; }

    Vec basis(std::size_t i) const {
        Vec v(d, 0);
        v[i] = 1;
        return v;
    }
    Vec zero() const { return Vec(d, 0); }

    Vec mul(const Vec& x, const Vec& y) const {
        Vec r(d, 0);
        const Field& f = *F;
        for (std::size_t i = 0; i < d; ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (!y[j]) continue;
                axpy(f, f.mul(x[i], y[j]), prod(i, j), r.data(), d);
            }
        }
        return r;
    }
    Vec mul3(const Vec& x, const Vec& y, const Vec& z) const { return mul(mul(x, y), z); }

    // column j = x b_j
    Matrix left_mult(const Vec& x) const {
        Matrix M(F, d, d);
        const Field& f = *F;
        for (std::size_t i = 0; i < d; ++i) {
            if (!x[i]) continue;
            const Elt* mrow = f.mul_row(x[i]);
            for (std::size_t j = 0; j < d; ++j) {
                const Elt* p = prod(i, j);
                for (std::size_t m = 0; m < d; ++m)
                    if (p[m]) M(m, j) = f.add(M(m, j), mrow[p[m]]);
            }
        }
        return M;
    }

    // all basis triples when d <= 64, otherwise sampled
    bool check_associative(Rng& rng, std::size_t samples = 4000) const {
        const Field& f = *F;
        auto triple_ok = [&](std::size_t i, std::size_t j, std::size_t k, Vec& lhs, Vec& rhs) {
            std::fill(lhs.begin(), lhs.end(), 0);
            std::fill(rhs.begin(), rhs.end(), 0);
            const Elt* ij = prod(i, j);
            const Elt* jk = prod(j, k);
            for (std::size_t m = 0; m < d; ++m) {
                if (ij[m]) axpy(f, ij[m], prod(m, k), lhs.data(), d);
                if (jk[m]) axpy(f, jk[m], prod(i, m), rhs.data(), d);
            }
            return lhs == rhs;
        };
        Vec lhs(d), rhs(d);
        if (d <= 64) {
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t k = 0; k < d; ++k)
                        if (!triple_ok(i, j, k, lhs, rhs)) return false;
            return true;
        }
        std::uniform_int_distribution<std::size_t> u(0, d - 1);
        for (std::size_t s = 0; s < samples; ++s)
            if (!triple_ok(u(rng), u(rng), u(rng), lhs, rhs)) return false;
        return true;
    }
    bool check_identity() const {
        for (std::size_t i = 0; i < d; ++i)
            if (mul(one, basis(i)) != basis(i) || mul(basis(i), one) != basis(i)) return false;
        return true;
    }

    // Algebra on a subspace closed under mul, with the given identity.
    static Algebra on_subspace(const Subspace& S, const std::function<Vec(const Vec&, const Vec&)>& mul,
                               const Vec& identity) {
        Algebra A(S.basis.F, S.dim());
        std::vector<Vec> rows(S.dim());
        for (std::size_t i = 0; i < S.dim(); ++i) rows[i] = S.basis.row_vec(i);
        for (std::size_t i = 0; i < A.d; ++i)
            for (std::size_t j = 0; j < A.d; ++j) {
                Vec p = mul(rows[i], rows[j]);
                Vec cc = S.coords(p);
                check_internal(S.combine(cc) == p, "subspace is not closed under multiplication");
                std::copy(cc.begin(), cc.end(), A.prod(i, j));
            }
        A.one = S.coords(identity);
        check_internal(S.combine(A.one) == identity, "identity outside subspace");
        return A;
    }

    // x^p for small exponents in the algebra
    Vec power(const Vec& x, unsigned e, const Vec& unit) const {
        Vec r = unit;
        for (unsigned i = 0; i < e; ++i) r = mul(r, x);
        return r;
    }
};

// Fixed points of an action by algebra automorphisms (matrices acting on
// coordinate columns), with the embedding back into the ambient algebra.
struct SubAlgebra {
    Algebra alg;
    Subspace embed;  // rows in ambient coordinates

    Vec to_sub(const Vec& x) const {
        Vec cc = embed.coords(x);
        check_internal(embed.combine(cc) == x, "element does not lie in the subalgebra");
        return cc;
    }
    Vec from_sub(const Vec& cc) const { return embed.combine(cc); }
};

inline SubAlgebra fixed_subalgebra(const Algebra& A, const std::vector<Matrix>& action) {
    Matrix stacked(A.F, 0, A.d);
    for (auto& M : action) {
        Matrix D = M - Matrix::identity(A.F, A.d);
        for (std::size_t i = 0; i < D.rows; ++i) stacked.append_row(D.row_vec(i));
    }
    Matrix fixed = stacked.rows ? nullspace(stacked) : Matrix::identity(A.F, A.d);
    SubAlgebra S;
    S.embed = Subspace(fixed);
    S.alg = Algebra::on_subspace(
        S.embed, [&](const Vec& x, const Vec& y) { return A.mul(x, y); }, A.one);
    return S;
}

namespace detail {

// polynomials over F (codes), low to high, trimmed
using FPoly = std::vector<Elt>;

inline void ptrim(FPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FPoly pmul(const Field& F, const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    ptrim(r);
    return r;
}

inline FPoly psub(const Field& F, FPoly a, const FPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    ptrim(a);
    return a;
}

inline void pdivmod(const Field& F, const FPoly& a, const FPoly& b, FPoly& q, FPoly& r) {
    r = a;
    ptrim(r);
    q.clear();
    if (b.empty()) throw InternalInconsistency("polynomial division by zero");
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    Elt li = F.inv(b.back());
    while (r.size() >= b.size()) {
        Elt c = F.mul(r.back(), li);
        std::size_t s = r.size() - b.size();
        q[s] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[s + i] = F.sub(r[s + i], F.mul(c, b[i]));
        ptrim(r);
    }
    ptrim(q);
}

inline Elt peval(const Field& F, const FPoly& a, Elt x) {
    Elt r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

// s a + t b = g with g monic
inline void pextgcd(const Field& F, FPoly a, FPoly b, FPoly& g, FPoly& s, FPoly& t) {
    FPoly s0{1}, s1{}, t0{}, t1{1};
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        FPoly q, r;
        pdivmod(F, a, b, q, r);
        a = b;
        b = r;
        FPoly s2 = psub(F, s0, pmul(F, q, s1));
        FPoly t2 = psub(F, t0, pmul(F, q, t1));
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    Elt li = F.inv(a.back());
    for (auto& x : a) x = F.mul(x, li);
    for (auto& x : s0) x = F.mul(x, li);
    for (auto& x : t0) x = F.mul(x, li);
    g = a;
    s = s0;
    t = t0;
}

// Roots with multiplicity plus the root-free remainder.
struct RootSplit {
    std::vector<std::pair<Elt, unsigned>> roots;
    FPoly rest;
};

inline RootSplit split_roots(const Field& F, FPoly f) {
    RootSplit out;
    for (unsigned x = 0; x < F.q && f.size() > 1; ++x) {
        unsigned mult = 0;
        while (f.size() > 1 && peval(F, f, static_cast<Elt>(x)) == 0) {
            FPoly q, r;
            pdivmod(F, f, FPoly{F.neg(static_cast<Elt>(x)), 1}, q, r);
            f = q;
            ++mult;
        }
        if (mult) out.roots.push_back({static_cast<Elt>(x), mult});
    }
    out.rest = f;
    return out;
}

// Tracks a growing list of vectors and finds the first dependency.
class IncrementalSpan {
public:
    IncrementalSpan(FieldPtr f, std::size_t n) : F_(std::move(f)), n_(n) {}

    // Adds v. Returns true and sets coeffs (v = sum coeffs_i added_i) when
    // v is already in the span; v is then not added.
    bool add(const Vec& v, Vec& coeffs) {
        const Field& F = *F_;
        Vec r = v;
        Vec comb(count_ + 1, 0);
        comb[count_] = 1;  // r = v - sum comb_i * added_i, tracked with signs
        for (std::size_t t = 0; t < rows_.size(); ++t) {
            Elt c = r[piv_[t]];
            if (!c) continue;
            Elt nc = F.neg(c);
            axpy(F, nc, rows_[t].data(), r.data(), n_);
            for (std::size_t s = 0; s < combs_[t].size(); ++s) comb[s] = F.add(comb[s], F.mul(nc, combs_[t][s]));
        }
        std::size_t p = 0;
        while (p < n_ && r[p] == 0) ++p;
        if (p == n_) {
            // 0 = v·comb_last + sum_{i<count} comb_i added_i
            coeffs.assign(count_, 0);
            Elt lead = comb[count_];
            Elt li = F.inv(lead);
            for (std::size_t i = 0; i < count_; ++i) coeffs[i] = F.neg(F.mul(comb[i], li));
            return true;
        }
        Elt pi = F.inv(r[p]);
        for (auto& x : r) x = F.mul(x, pi);
        for (auto& x : comb) x = F.mul(x, pi);
        rows_.push_back(r);
        piv_.push_back(p);
        combs_.push_back(comb);
        for (auto& cb : combs_) cb.resize(count_ + 1, 0);
        ++count_;
        return false;
    }
    std::size_t size() const { return count_; }

private:
    FieldPtr F_;
    std::size_t n_;
    std::size_t count_ = 0;
    std::vector<Vec> rows_;
    std::vector<std::size_t> piv_;
    std::vector<Vec> combs_;
};

// monic minimal polynomial of x in an algebra with identity `unit`
inline FPoly min_poly(const Algebra& A, const Vec& x, const Vec& unit) {
    const Field& F = *A.F;
    IncrementalSpan span(A.F, A.d);
    Vec pw = unit, coeffs;
    while (true) {
        if (span.add(pw, coeffs)) {
            FPoly m(coeffs.size() + 1);
            for (std::size_t i = 0; i < coeffs.size(); ++i) m[i] = F.neg(coeffs[i]);
            m.back() = 1;
            return m;
        }
        pw = A.mul(pw, x);
    }
}

// f(x) with unit as x^0
inline Vec poly_at(const Algebra& A, const FPoly& f, const Vec& x, const Vec& unit) {
    Vec r(A.d, 0);
    for (std::size_t i = f.size(); i-- > 0;) {
        r = A.mul(r, x);
        axpy(*A.F, f[i], unit, r);
    }
    return r;
}

// integer matrices for the trace chain
template <class T>
std::vector<T> imatmul(const std::vector<T>& a, const std::vector<T>& b, std::size_t n, T mod) {
    std::vector<T> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        T* ci = c.data() + i * n;
        for (std::size_t l = 0; l < n; ++l) {
            T x = a[i * n + l];
            if (!x) continue;
            const T* bl = b.data() + l * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += x * bl[j];
        }
        if (mod)
            for (std::size_t j = 0; j < n; ++j) ci[j] %= mod;
    }
    return c;
}

}  // namespace detail

// Jacobson radical by the p-power trace chain. The algebra is viewed over
// GF(p) (dimension N = d k); I_0 is the kernel of the trace form, and
// I_i = {a in I_{i-1} : g_i(ab) = 0 for all b}, where
// g_i(a) = (Tr(â^(p^i)) mod p^(i+1)) / p^i for an integer lift â of the
// regular matrix of a. I_l is the radical for l = floor(log_p N).
inline Subspace radical(const Algebra& A) {
    const Field& F = *A.F;
    const std::size_t d = A.d;
    const unsigned p = F.p, k = F.k;
    if (d == 0) return Subspace(Matrix(A.F, 0, 0));

    // trace functional and Gram matrix over F
    Vec t(d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t m = 0; m < d; ++m) t[i] = F.add(t[i], A.prod(i, m)[m]);
    Matrix gram(A.F, d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Elt* pr = A.prod(i, j);
            Elt s = 0;
            for (std::size_t m = 0; m < d; ++m)
                if (pr[m] && t[m]) s = F.add(s, F.mul(pr[m], t[m]));
            gram(j, i) = s;  // row j of the transpose
        }
    Matrix I0 = nullspace(gram);
    if (I0.rows == 0) return Subspace(Matrix(A.F, 0, d));

    const std::size_t N = d * k;
    unsigned levels = 0;
    for (unsigned long long pw = p; pw <= N; pw *= p) ++levels;

    FieldPtr Fp = make_field(p, 1);
    auto to_fp = [&](const Vec& a) {
        Vec v(N);
        for (std::size_t j = 0; j < d; ++j) {
            auto dg = F.digits(a[j]);
            for (unsigned s = 0; s < k; ++s) v[j * k + s] = static_cast<Elt>(dg[s]);
        }
        return v;
    };
    auto from_fp = [&](const Vec& v) {
        Vec a(d);
        std::vector<unsigned> dg(k);
        for (std::size_t j = 0; j < d; ++j) {
            for (unsigned s = 0; s < k; ++s) dg[s] = v[j * k + s];
            a[j] = F.from_digits(dg);
        }
        return a;
    };
    std::vector<Elt> xpow(k);
    for (unsigned s = 0; s < k; ++s) xpow[s] = F.pow(F.generator(), s);

    Matrix cur(Fp, 0, N);
    for (std::size_t r = 0; r < I0.rows; ++r)
        for (unsigned s = 0; s < k; ++s) cur.append_row(to_fp(scaled(F, xpow[s], I0.row_vec(r))));
    Subspace I(cur);

    for (unsigned lev = 1; lev <= levels && I.dim() > 0; ++lev) {
        unsigned long long mod = 1;
        for (unsigned s = 0; s <= lev; ++s) mod *= p;
        unsigned long long pl = mod / p;
        const std::size_t r = I.dim();
        std::vector<unsigned> g(r);
        for (std::size_t s = 0; s < r; ++s) {
            Vec a = from_fp(I.basis.row_vec(s));
            Matrix L = A.left_mult(a);
            // integer lift of the GF(p)-matrix of L: entry (j,t),(l,t') is
            // digit t of L(j,l) x^t'
            unsigned long long tr = 0;
            if (p == 2) {
                std::vector<std::uint32_t> M(N * N, 0);
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t l = 0; l < d; ++l) {
                        Elt e = L(j, l);
                        if (!e) continue;
                        for (unsigned t2 = 0; t2 < k; ++t2) {
                            auto dg = F.digits(F.mul(e, xpow[t2]));
                            for (unsigned t1 = 0; t1 < k; ++t1) M[(j * k + t1) * N + l * k + t2] = dg[t1];
                        }
                    }
                for (unsigned sq = 1; sq < lev; ++sq) M = detail::imatmul<std::uint32_t>(M, M, N, 0);
                std::uint32_t acc = 0;
                for (std::size_t i = 0; i < N; ++i)
                    for (std::size_t j = 0; j < N; ++j) acc += M[i * N + j] * M[j * N + i];
                tr = acc % mod;
            } else {
                std::vector<std::uint64_t> M(N * N, 0);
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t l = 0; l < d; ++l) {
                        Elt e = L(j, l);
                        if (!e) continue;
                        for (unsigned t2 = 0; t2 < k; ++t2) {
                            auto dg = F.digits(F.mul(e, xpow[t2]));
                            for (unsigned t1 = 0; t1 < k; ++t1) M[(j * k + t1) * N + l * k + t2] = dg[t1];
                        }
                    }
                auto pow_p = [&](const std::vector<std::uint64_t>& X, unsigned e) {
                    std::vector<std::uint64_t> R = X;
                    for (unsigned i = 1; i < e; ++i) R = detail::imatmul<std::uint64_t>(R, X, N, mod);
                    return R;
                };
                for (unsigned sq = 1; sq < lev; ++sq) M = pow_p(M, p);
                auto Mp1 = pow_p(M, p - 1);
                std::uint64_t acc = 0;
                for (std::size_t i = 0; i < N; ++i)
                    for (std::size_t j = 0; j < N; ++j) acc = (acc + Mp1[i * N + j] * M[j * N + i]) % mod;
                tr = acc;
            }
            check_internal(tr % pl == 0, "trace chain: p-power trace not divisible");
            g[s] = static_cast<unsigned>(tr / pl);
        }
        // constraint rows: for each GF(p)-basis element b, sum_t λ_t g(u_t b)
        Matrix C(Fp, N, r);
        std::vector<Vec> uq(r);
        for (std::size_t s = 0; s < r; ++s) uq[s] = from_fp(I.basis.row_vec(s));
        for (std::size_t tt = 0; tt < r; ++tt) {
            for (std::size_t j = 0; j < d; ++j) {
                Vec ub = A.mul(uq[tt], A.basis(j));
                for (unsigned s = 0; s < k; ++s) {
                    Vec v = to_fp(scaled(F, xpow[s], ub));
                    Vec co = I.coords(v);
                    unsigned acc = 0;
                    for (std::size_t q2 = 0; q2 < r; ++q2) acc += co[q2] * g[q2];
                    C(j * k + s, tt) = static_cast<Elt>(acc % p);
                }
            }
        }
        Matrix lam = nullspace(C);
        Matrix next(Fp, lam.rows, N);
        for (std::size_t a = 0; a < lam.rows; ++a)
            for (std::size_t s = 0; s < r; ++s)
                if (lam(a, s)) axpy(*Fp, lam(a, s), I.basis.row(s), next.row(a), N);
        I = Subspace(next);
    }

    Matrix Jq(A.F, 0, d);
    for (std::size_t s = 0; s < I.dim(); ++s) Jq.append_row(from_fp(I.basis.row_vec(s)));
    if (Jq.rows == 0) Jq = Matrix(A.F, 0, d);
    Subspace J(Jq);
    check_internal(J.dim() * k == I.dim(), "radical is not a subspace over the full field");
    return J;
}

// Semisimple quotient A/J with its Wedderburn components in canonical order.
struct Wedderburn {
    Subspace J;
    std::vector<std::size_t> qcols;  // quotient basis: non-pivot columns of rref(J)
    Algebra Abar;
    std::vector<Vec> central;  // central primitive idempotents of Abar
    std::vector<std::size_t> dims;
    std::vector<std::size_t> msize;

    std::size_t ell() const { return central.size(); }

    Vec project(const Vec& a) const {
        Vec r = J.reduce(a);
        Vec out(qcols.size());
        for (std::size_t i = 0; i < qcols.size(); ++i) out[i] = r[qcols[i]];
        return out;
    }
    Vec section(const Vec& abar, std::size_t ambient) const {
        Vec v(ambient, 0);
        for (std::size_t i = 0; i < qcols.size(); ++i) v[qcols[i]] = abar[i];
        return v;
    }
};

namespace detail {

// rows e*b_j for all basis b_j
inline Matrix left_ideal_span(const Algebra& A, const Vec& e) {
    Matrix M(A.F, A.d, A.d);
    for (std::size_t j = 0; j < A.d; ++j) {
        Vec r = A.mul(e, A.basis(j));
        std::copy(r.begin(), r.end(), M.row(j));
    }
    return M;
}

// Orthogonal primitive idempotents of a commutative semisimple algebra
// spanned by zb, splitting 'unit'.
inline std::vector<Vec> split_commutative(const Algebra& A, const std::vector<Vec>& zb, const Vec& unit, Rng& rng) {
    const Field& F = *A.F;
    std::vector<Vec> todo{unit}, done;
    while (!todo.empty()) {
        Vec e = todo.back();
        todo.pop_back();
        Matrix span(A.F, zb.size(), A.d);
        for (std::size_t j = 0; j < zb.size(); ++j) {
            Vec r = A.mul(e, zb[j]);
            std::copy(r.begin(), r.end(), span.row(j));
        }
        std::size_t dim = rank(span);
        if (dim <= 1) {
            done.push_back(e);
            continue;
        }
        bool split = false;
        const std::size_t random_tries = 24;
        for (std::size_t attempt = 0; attempt < random_tries + zb.size() && !split; ++attempt) {
            Vec z(A.d, 0);
            if (attempt < random_tries) {
                Vec r = random_vec(F, zb.size(), rng);
                for (std::size_t j = 0; j < zb.size(); ++j) axpy(F, r[j], zb[j], z);
            } else {
                z = zb[attempt - random_tries];
            }
            z = A.mul(e, z);
            FPoly mu = min_poly(A, z, e);
            RootSplit rs = split_roots(F, mu);
            if (rs.rest.size() > 1)
                throw SplitFieldError("centre does not split over " + F.name() +
                                      ": minimal polynomial has an irreducible factor of degree " +
                                      std::to_string(rs.rest.size() - 1) + "; use a larger field degree");
            if (rs.roots.size() < 2) continue;
            for (auto& [lam, mult] : rs.roots)
                check_internal(mult == 1, "commutative semisimple algebra with a non-separable element");
            for (auto& [lam, mult] : rs.roots) {
                FPoly L{1};
                Elt denom = 1;
                for (auto& [mu2, m2] : rs.roots) {
                    if (mu2 == lam) continue;
                    L = pmul(F, L, FPoly{F.neg(mu2), 1});
                    denom = F.mul(denom, F.sub(lam, mu2));
                }
                Elt di = F.inv(denom);
                for (auto& x : L) x = F.mul(x, di);
                todo.push_back(poly_at(A, L, z, e));
            }
            split = true;
        }
        check_internal(split, "failed to split a commutative semisimple algebra");
    }
    return done;
}

inline bool lex_less_matrix(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) return a.rows < b.rows;
    return a.a < b.a;
}

}  // namespace detail

inline Wedderburn wedderburn(const Algebra& A, const Subspace& J, std::uint64_t seed) {
    const Field& F = *A.F;
    Wedderburn W;
    W.J = J;
    std::vector<char> piv(A.d, 0);
    for (auto c : J.pivots) piv[c] = 1;
    for (std::size_t c = 0; c < A.d; ++c)
        if (!piv[c]) W.qcols.push_back(c);
    const std::size_t D = W.qcols.size();
    W.Abar = Algebra(A.F, D);
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            Vec pr(A.prod(W.qcols[i], W.qcols[j]), A.prod(W.qcols[i], W.qcols[j]) + A.d);
            Vec b = W.project(pr);
            std::copy(b.begin(), b.end(), W.Abar.prod(i, j));
        }
    W.Abar.one = W.project(A.one);
    const Algebra& B = W.Abar;
    if (D == 0) return W;

    // centre: z b_j = b_j z for all j
    Matrix eq(A.F, D * D, D);
    for (std::size_t j = 0; j < D; ++j)
        for (std::size_t i = 0; i < D; ++i) {
            const Elt* ij = B.prod(i, j);
            const Elt* ji = B.prod(j, i);
            for (std::size_t m = 0; m < D; ++m) eq(j * D + m, i) = F.sub(ij[m], ji[m]);
        }
    Matrix Z = nullspace(eq);
    std::vector<Vec> zb;
    for (std::size_t i = 0; i < Z.rows; ++i) zb.push_back(Z.row_vec(i));

    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto cent = detail::split_commutative(B, zb, B.one, rng);

    struct Comp {
        Vec eps;
        Matrix basis;
        std::size_t dim;
    };
    std::vector<Comp> comps;
    for (auto& e : cent) {
        Matrix bas = row_basis(detail::left_ideal_span(B, e));
        comps.push_back({e, bas, bas.rows});
    }
    std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return detail::lex_less_matrix(a.basis, b.basis);
    });
    for (auto& c : comps) {
        std::size_t m = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(c.dim))));
        check_internal(m * m == c.dim, "simple component of non-square dimension over a split centre");
        W.central.push_back(c.eps);
        W.dims.push_back(c.dim);
        W.msize.push_back(m);
    }
    return W;
}

// Radical plus semisimple quotient of one algebra; computed once and
// shared by every idempotent computation inside that algebra.
struct Analysis {
    Wedderburn W;
    std::size_t ambient = 0;

    std::size_t ell() const { return W.ell(); }
    const Subspace& J() const { return W.J; }
};

inline Analysis analyze(const Algebra& A, std::uint64_t seed = 0) {
    Analysis an;
    an.W = wedderburn(A, radical(A), seed);
    an.ambient = A.d;
    return an;
}

// Component indices where ē ε_k ≠ 0.
inline std::vector<std::size_t> components_hit(const Analysis& an, const Vec& e) {
    const auto& W = an.W;
    Vec eb = W.project(e);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < W.central.size(); ++k)
        if (!is_zero(W.Abar.mul(eb, W.central[k]))) out.push_back(k);
    return out;
}

inline std::size_t corner_dim_bar(const Analysis& an, const Vec& ebar) {
    const Algebra& B = an.W.Abar;
    Matrix M(B.F, B.d, B.d);
    for (std::size_t j = 0; j < B.d; ++j) {
        Vec r = B.mul3(ebar, B.basis(j), ebar);
        std::copy(r.begin(), r.end(), M.row(j));
    }
    return rank(M);
}

// primitive ⇔ dim ē(A/J)ē = 1
inline bool is_primitive(const Analysis& an, const Vec& e) {
    if (is_zero(e)) return false;
    return corner_dim_bar(an, an.W.project(e)) == 1;
}

// canonical point label of a primitive idempotent
inline std::size_t point_label(const Analysis& an, const Vec& e) {
    if (!is_primitive(an, e)) throw InputError("point_label: idempotent is not primitive");
    auto hit = components_hit(an, e);
    check_internal(hit.size() == 1, "primitive idempotent meets several components");
    return hit[0];
}

inline bool same_point(const Analysis& an, const Vec& e, const Vec& f) { return point_label(an, e) == point_label(an, f); }

namespace detail {

// Split an idempotent of one simple component into rank-one pieces.
inline void split_in_component(const Algebra& B, const Vec& f, std::size_t rank_f, std::vector<Vec>& out, Rng& rng) {
    const Field& F = *B.F;
    if (rank_f <= 1) {
        out.push_back(f);
        return;
    }
    for (int attempt = 0; attempt < 400; ++attempt) {
        Vec y = random_vec(F, B.d, rng);
        Vec x = B.mul3(f, y, f);
        FPoly mu = min_poly(B, x, f);
        RootSplit rs = split_roots(F, mu);
        std::size_t parts = rs.roots.size() + (rs.rest.size() > 1 ? 1 : 0);
        if (parts < 2) continue;
        FPoly P1{1};
        for (unsigned i = 0; i < rs.roots[0].second; ++i) P1 = pmul(F, P1, FPoly{F.neg(rs.roots[0].first), 1});
        FPoly P2, rem;
        pdivmod(F, mu, P1, P2, rem);
        FPoly g, s, t;
        pextgcd(F, P1, P2, g, s, t);
        check_internal(g.size() == 1, "coprime factors expected");
        FPoly u = pmul(F, t, P2);
        Vec e1 = poly_at(B, u, x, f);
        Vec e2 = subtracted(F, f, e1);
        // ranks from corner dimensions: dim e M_m e = r^2
        auto corner_rank = [&](const Vec& e) {
            Matrix M(B.F, B.d, B.d);
            for (std::size_t j = 0; j < B.d; ++j) {
                Vec r = B.mul3(e, B.basis(j), e);
                std::copy(r.begin(), r.end(), M.row(j));
            }
            std::size_t c = rank(M);
            std::size_t r = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(c))));
            check_internal(r * r == c, "corner of a simple component of non-square dimension");
            return r;
        };
        std::size_t r1 = corner_rank(e1), r2 = corner_rank(e2);
        check_internal(r1 + r2 == rank_f && r1 > 0 && r2 > 0, "component idempotent split lost rank");
        split_in_component(B, e1, r1, out, rng);
        split_in_component(B, e2, r2, out, rng);
        return;
    }
    throw InternalInconsistency("could not split an idempotent of a simple component");
}

inline std::size_t lift_iteration_cap(std::size_t d) {
    std::size_t c = 0;
    while ((std::size_t{1} << c) < d) ++c;
    return c + 1;
}

// iterate y <- 3y^2 - 2y^3 until idempotent
inline Vec lift_from(const Algebra& A, Vec y) {
    const Field& F = *A.F;
    Elt three = F.from_int(3), mtwo = F.from_int(-2);
    std::size_t cap = lift_iteration_cap(A.d);
    for (std::size_t it = 0; it <= cap; ++it) {
        Vec y2 = A.mul(y, y);
        if (y2 == y) return y;
        Vec y3 = A.mul(y2, y);
        Vec nxt = scaled(F, three, y2);
        axpy(F, mtwo, y3, nxt);
        y = nxt;
    }
    throw InternalInconsistency("idempotent lifting did not converge");
}

}  // namespace detail

// Lift an idempotent ē of A/J to A.
inline Vec lift_idempotent(const Algebra& A, const Analysis& an, const Vec& ebar) {
    if (an.W.Abar.mul(ebar, ebar) != ebar) throw InputError("lift_idempotent: input is not idempotent");
    Vec e = detail::lift_from(A, an.W.section(ebar, A.d));
    check_internal(an.W.project(e) == ebar, "lift does not reduce to the given idempotent");
    return e;
}

// Primitive orthogonal idempotents summing to e (e idempotent in A).
inline std::vector<Vec> decompose(const Algebra& A, const Analysis& an, const Vec& e, Rng& rng) {
    const Field& F = *A.F;
    if (is_zero(e)) return {};
    const auto& W = an.W;
    const Algebra& B = W.Abar;
    Vec eb = W.project(e);
    std::vector<Vec> pieces;
    for (std::size_t k = 0; k < W.central.size(); ++k) {
        Vec fk = B.mul(eb, W.central[k]);
        if (is_zero(fk)) continue;
        std::size_t r = rank(detail::left_ideal_span(B, fk)) / W.msize[k];
        detail::split_in_component(B, fk, r, pieces, rng);
    }
    std::vector<Vec> out;
    Vec cur = e;
    for (std::size_t t = 0; t + 1 < pieces.size(); ++t) {
        Vec x = W.section(pieces[t], A.d);
        Vec y = A.mul3(cur, x, cur);
        Vec f = detail::lift_from(A, y);
        check_internal(W.project(f) == pieces[t], "lifted piece has the wrong image");
        out.push_back(f);
        cur = subtracted(F, cur, f);
    }
    if (!pieces.empty()) {
        check_internal(W.project(cur) == pieces.back(), "remainder idempotent has the wrong image");
        out.push_back(cur);
    }
    Vec sum(A.d, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        axpy(F, 1, out[i], sum);
        for (std::size_t j = 0; j < out.size(); ++j) {
            Vec pr = A.mul(out[i], out[j]);
            check_internal(i == j ? pr == out[i] : is_zero(pr), "decomposition is not orthogonal");
        }
    }
    check_internal(sum == e, "decomposition does not sum to the idempotent");
    return out;
}

inline std::vector<Vec> decompose_identity(const Algebra& A, const Analysis& an, Rng& rng) {
    return decompose(A, an, A.one, rng);
}

// c_ij = dim e_i A e_j for primitive e_i, e_j in points i, j.
inline std::vector<std::vector<int>> cartan_matrix(const Algebra& A, const Analysis& an, Rng& rng) {
    auto prims = decompose_identity(A, an, rng);
    std::size_t l = an.ell();
    std::vector<Vec> rep(l);
    std::vector<char> have(l, 0);
    for (auto& e : prims) {
        std::size_t lab = point_label(an, e);
        if (!have[lab]) {
            rep[lab] = e;
            have[lab] = 1;
        }
    }
    for (std::size_t i = 0; i < l; ++i) check_internal(have[i], "some point has no primitive in a decomposition of 1");
    std::vector<std::vector<int>> C(l, std::vector<int>(l, 0));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            Matrix M(A.F, A.d, A.d);
            for (std::size_t b = 0; b < A.d; ++b) {
                Vec r = A.mul3(rep[i], A.basis(b), rep[j]);
                std::copy(r.begin(), r.end(), M.row(b));
            }
            C[i][j] = static_cast<int>(rank(M));
        }
    return C;
}

}  // namespace pfs
