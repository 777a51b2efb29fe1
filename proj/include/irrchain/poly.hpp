#pragma once

// Dense univariate polynomials over a Field, with the irreducibility and
// factorization machinery the chain constructions rely on.
//
// The heavy modular loops (Rabin's test, big-exponent powmod, equal-degree
// splitting) run on one generic kernel instantiated over three coefficient
// representations: plain residues for prime fields, fixed-size blocks for an
// extension directly over a prime field, and Element values for anything
// taller. The block limit is 4; taller or wider towers take the generic path.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "irrchain/errors.hpp"
#include "irrchain/field.hpp"
#include "irrchain/numbers.hpp"

namespace irrchain {

class Poly {
  public:
    Poly() = default;

    static Poly zero(FieldPtr f) { return Poly(std::move(f), {}); }
    static Poly one(const FieldPtr& f) { return from_coeffs(f, {f->one()}); }
    static Poly x(const FieldPtr& f) { return from_coeffs(f, {f->zero(), f->one()}); }
    static Poly constant(const FieldPtr& f, Element c) { return from_coeffs(f, {std::move(c)}); }

    static Poly from_coeffs(FieldPtr f, std::vector<Element> coeffs) {
        for (const Element& c : coeffs)
            if (!c.field()->same(*f)) throw CtxMismatchError("coefficient in a different field");
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
        return Poly(std::move(f), std::move(coeffs));
    }

    static Poly from_ints(const FieldPtr& f, const std::vector<std::int64_t>& cs) {
        std::vector<Element> es;
        es.reserve(cs.size());
        for (auto v : cs) es.push_back(f->from_int(v));
        return from_coeffs(f, std::move(es));
    }

    /// Monic polynomial of degree n whose lower coefficients are the base-q
    /// digits of idx, constant coordinate fastest. This fixes the canonical
    /// enumeration order used everywhere (modulus search, seed search).
    static Poly monic_from_index(const FieldPtr& f, std::size_t n, u128 idx) {
        std::vector<Element> cs;
        cs.reserve(n + 1);
        const u128 q = f->order();
        for (std::size_t j = 0; j < n; ++j) {
            cs.push_back(f->from_index(idx % q));
            idx /= q;
        }
        cs.push_back(f->one());
        return Poly(f, std::move(cs));
    }

    const FieldPtr& field() const { return f_; }
    bool valid() const { return f_ != nullptr; }
    bool is_zero() const { return c_.empty(); }
    /// Degree, or nullopt for the zero polynomial.
    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    std::size_t size() const { return c_.size(); }
    Element coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_->zero(); }
    const std::vector<Element>& coeffs() const { return c_; }
    const Element& lead() const {
        if (c_.empty()) throw ZeroPolynomialError("zero polynomial has no leading coefficient");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    friend bool operator==(const Poly& a, const Poly& b) {
        a.check_same(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    /// Canonical order: by degree, then coefficient tuples highest first.
    friend bool operator<(const Poly& a, const Poly& b) {
        a.check_same(b);
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (std::size_t i = a.c_.size(); i-- > 0;) {
            if (a.c_[i] < b.c_[i]) return true;
            if (b.c_[i] < a.c_[i]) return false;
        }
        return false;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_same(b);
        std::vector<Element> cs(std::max(a.c_.size(), b.c_.size()), a.f_->zero());
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i < a.c_.size() && i < b.c_.size())
                cs[i] = a.c_[i] + b.c_[i];
            else if (i < a.c_.size())
                cs[i] = a.c_[i];
            else
                cs[i] = b.c_[i];
        }
        return from_coeffs(a.f_, std::move(cs));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check_same(b);
        std::vector<Element> cs(std::max(a.c_.size(), b.c_.size()), a.f_->zero());
        for (std::size_t i = 0; i < cs.size(); ++i) {
            Element x = i < a.c_.size() ? a.c_[i] : a.f_->zero();
            Element y = i < b.c_.size() ? b.c_[i] : a.f_->zero();
            cs[i] = x - y;
        }
        return from_coeffs(a.f_, std::move(cs));
    }
    Poly operator-() const {
        std::vector<Element> cs;
        cs.reserve(c_.size());
        for (const Element& c : c_) cs.push_back(-c);
        return Poly(f_, std::move(cs));
    }
    friend Poly operator*(const Poly& a, const Poly& b);

  private:
    Poly(FieldPtr f, std::vector<Element> c) : f_(std::move(f)), c_(std::move(c)) {}
    void check_same(const Poly& o) const {
        if (!f_ || !o.f_ || !f_->same(*o.f_))
            throw CtxMismatchError("polynomials over different fields");
    }
    FieldPtr f_;
    std::vector<Element> c_;
};

// ---------------------------------------------------------------------------
// Coefficient kernels
// ---------------------------------------------------------------------------

namespace pk {

constexpr std::size_t kMaxBlock = 4;

struct PrimeOps {
    using Coeff = u64;
    u64 p;
    FieldPtr f;

    Coeff zero() const { return 0; }
    Coeff one() const { return 1 % p; }
    static bool is_zero(const Coeff& a) { return a == 0; }
    bool is_one(const Coeff& a) const { return a == 1 % p; }
    Coeff add(const Coeff& a, const Coeff& b) const { return detail::addmod_u64(a, b, p); }
    Coeff sub(const Coeff& a, const Coeff& b) const { return detail::submod_u64(a, b, p); }
    Coeff mul(const Coeff& a, const Coeff& b) const { return detail::mulmod_u64(a, b, p); }
    Coeff inv(const Coeff& a) const { return detail::invmod_u64(a, p); }
    static bool eq(const Coeff& a, const Coeff& b) { return a == b; }

    void convolve(Coeff* dst, const Coeff* a, std::size_t na, const Coeff* b,
                  std::size_t nb) const {
        for (std::size_t m = 0; m + 1 < na + nb; ++m) {
            u128 acc = 0;
            const std::size_t lo = m >= nb ? m - nb + 1 : 0;
            const std::size_t hi = std::min(na - 1, m);
            for (std::size_t i = lo; i <= hi; ++i) acc += static_cast<u128>(a[i]) * b[m - i];
            dst[m] = static_cast<u64>(acc % p);
        }
    }

    Coeff from_element(const Element& e) const { return e.flat()[0]; }
    Element to_element(const Coeff& c) const { return f->from_flat({c}); }
};

// Extension of degree k <= kMaxBlock directly over a prime field.
struct BlockOps {
    using Coeff = std::array<u64, kMaxBlock>;
    u64 p = 0;
    std::size_t k = 0;
    std::array<u64, kMaxBlock> mod{};  // lower modulus coefficients, prime residues
    FieldPtr f;

    Coeff zero() const { return Coeff{}; }
    Coeff one() const {
        Coeff c{};
        c[0] = 1 % p;
        return c;
    }
    static bool is_zero(const Coeff& a) {
        for (u64 w : a)
            if (w) return false;
        return true;
    }
    bool is_one(const Coeff& a) const {
        if (a[0] != 1 % p) return false;
        for (std::size_t i = 1; i < kMaxBlock; ++i)
            if (a[i]) return false;
        return true;
    }
    Coeff add(const Coeff& a, const Coeff& b) const {
        Coeff c{};
        for (std::size_t i = 0; i < k; ++i) c[i] = detail::addmod_u64(a[i], b[i], p);
        return c;
    }
    Coeff sub(const Coeff& a, const Coeff& b) const {
        Coeff c{};
        for (std::size_t i = 0; i < k; ++i) c[i] = detail::submod_u64(a[i], b[i], p);
        return c;
    }
    Coeff mul(const Coeff& a, const Coeff& b) const {
        std::array<u128, 2 * kMaxBlock - 1> acc{};
        for (std::size_t i = 0; i < k; ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < k; ++j) acc[i + j] += static_cast<u128>(a[i]) * b[j];
        }
        return reduce(acc);
    }
    Coeff inv(const Coeff& a) const { return from_element(to_element(a).inv()); }
    static bool eq(const Coeff& a, const Coeff& b) { return a == b; }

    Coeff reduce(std::array<u128, 2 * kMaxBlock - 1>& acc) const {
        for (std::size_t i = 2 * k - 2; i >= k && i < 2 * kMaxBlock; --i) {
            const u64 v = static_cast<u64>(acc[i] % p);
            if (v) {
                for (std::size_t j = 0; j < k; ++j) {
                    if (mod[j])
                        acc[i - k + j] += static_cast<u128>(v) * (p - mod[j]);
                }
            }
            if (i == k) break;
        }
        Coeff c{};
        for (std::size_t j = 0; j < k; ++j) c[j] = static_cast<u64>(acc[j] % p);
        return c;
    }

    void convolve(Coeff* dst, const Coeff* a, std::size_t na, const Coeff* b,
                  std::size_t nb) const {
        for (std::size_t m = 0; m + 1 < na + nb; ++m) {
            std::array<u128, 2 * kMaxBlock - 1> acc{};
            const std::size_t lo = m >= nb ? m - nb + 1 : 0;
            const std::size_t hi = std::min(na - 1, m);
            for (std::size_t i = lo; i <= hi; ++i) {
                const Coeff& A = a[i];
                const Coeff& B = b[m - i];
                for (std::size_t u = 0; u < k; ++u) {
                    if (!A[u]) continue;
                    for (std::size_t v = 0; v < k; ++v) acc[u + v] += static_cast<u128>(A[u]) * B[v];
                }
            }
            dst[m] = reduce(acc);
        }
    }

    Coeff from_element(const Element& e) const {
        Coeff c{};
        auto w = e.flat();
        for (std::size_t i = 0; i < k; ++i) c[i] = w[i];
        return c;
    }
    Element to_element(const Coeff& c) const {
        std::vector<u64> w(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
        return f->from_flat(std::move(w));
    }
};

// Fallback for arbitrary towers; coefficient operations allocate.
struct ElementOps {
    using Coeff = Element;
    FieldPtr f;

    Coeff zero() const { return f->zero(); }
    Coeff one() const { return f->one(); }
    static bool is_zero(const Coeff& a) { return a.is_zero(); }
    static bool is_one_st(const Coeff& a) { return a.is_one(); }
    bool is_one(const Coeff& a) const { return a.is_one(); }
    static Coeff add(const Coeff& a, const Coeff& b) { return a + b; }
    static Coeff sub(const Coeff& a, const Coeff& b) { return a - b; }
    static Coeff mul(const Coeff& a, const Coeff& b) { return a * b; }
    static Coeff inv(const Coeff& a) { return a.inv(); }
    static bool eq(const Coeff& a, const Coeff& b) { return a == b; }

    void convolve(Coeff* dst, const Coeff* a, std::size_t na, const Coeff* b,
                  std::size_t nb) const {
        for (std::size_t m = 0; m + 1 < na + nb; ++m) {
            Coeff acc = zero();
            const std::size_t lo = m >= nb ? m - nb + 1 : 0;
            const std::size_t hi = std::min(na - 1, m);
            for (std::size_t i = lo; i <= hi; ++i) {
                if (!a[i].is_zero() && !b[m - i].is_zero()) acc = acc + a[i] * b[m - i];
            }
            dst[m] = acc;
        }
    }

    Coeff from_element(const Element& e) const { return e; }
    Element to_element(const Coeff& c) const { return c; }
};

template <class Ops>
struct Kernel {
    using C = typename Ops::Coeff;
    using Vec = std::vector<C>;

    static void strip(const Ops& ops, Vec& v) {
        while (!v.empty() && ops.is_zero(v.back())) v.pop_back();
    }

    static Vec mul(const Ops& ops, const Vec& a, const Vec& b) {
        if (a.empty() || b.empty()) return {};
        Vec dst(a.size() + b.size() - 1, ops.zero());
        ops.convolve(dst.data(), a.data(), a.size(), b.data(), b.size());
        strip(ops, dst);
        return dst;
    }

    // In-place remainder of r by monic-normalized divisor d (linv = inverse of
    // the true leading coefficient of d).
    static void reduce_inplace(const Ops& ops, Vec& r, const Vec& d, const C& linv) {
        const std::size_t nd = d.size();
        while (r.size() >= nd) {
            C t = ops.mul(r.back(), linv);
            const std::size_t shift = r.size() - nd;
            if (!ops.is_zero(t)) {
                for (std::size_t j = 0; j + 1 < nd; ++j)
                    r[shift + j] = ops.sub(r[shift + j], ops.mul(t, d[j]));
            }
            r.pop_back();
            while (!r.empty() && ops.is_zero(r.back())) r.pop_back();
        }
    }

    static std::pair<Vec, Vec> divrem(const Ops& ops, Vec a, const Vec& d) {
        if (d.empty()) throw DivisionByZeroError("polynomial division by zero");
        if (a.size() < d.size()) return {Vec{}, std::move(a)};
        const C linv = ops.inv(d.back());
        Vec q(a.size() - d.size() + 1, ops.zero());
        while (a.size() >= d.size()) {
            C t = ops.mul(a.back(), linv);
            const std::size_t shift = a.size() - d.size();
            q[shift] = t;
            if (!ops.is_zero(t)) {
                for (std::size_t j = 0; j + 1 < d.size(); ++j)
                    a[shift + j] = ops.sub(a[shift + j], ops.mul(t, d[j]));
            }
            a.pop_back();
            while (!a.empty() && ops.is_zero(a.back())) a.pop_back();
        }
        strip(ops, q);
        return {std::move(q), std::move(a)};
    }

    static Vec mulmod(const Ops& ops, const Vec& a, const Vec& b, const Vec& d, const C& linv) {
        Vec r = mul(ops, a, b);
        reduce_inplace(ops, r, d, linv);
        return r;
    }

    static Vec powmod(const Ops& ops, Vec base, u128 e, const Vec& d, const C& linv) {
        Vec acc{ops.one()};
        reduce_inplace(ops, base, d, linv);
        while (e > 0) {
            if (e & 1) acc = mulmod(ops, acc, base, d, linv);
            e >>= 1;
            if (e == 0) break;
            base = mulmod(ops, base, base, d, linv);
        }
        return acc;
    }

    static Vec gcd(const Ops& ops, Vec a, Vec b) {
        strip(ops, a);
        strip(ops, b);
        while (!b.empty()) {
            auto [q, r] = divrem(ops, std::move(a), b);
            (void)q;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.empty() && !ops.is_one(a.back())) {
            const C linv = ops.inv(a.back());
            for (C& c : a) c = ops.mul(c, linv);
        }
        return a;
    }

    static Vec sub(const Ops& ops, const Vec& a, const Vec& b) {
        Vec r(std::max(a.size(), b.size()), ops.zero());
        for (std::size_t i = 0; i < r.size(); ++i) {
            C x = i < a.size() ? a[i] : ops.zero();
            C y = i < b.size() ? b[i] : ops.zero();
            r[i] = ops.sub(x, y);
        }
        strip(ops, r);
        return r;
    }

    // Rabin: monic f of degree n >= 1 is irreducible iff x^(q^n) = x (mod f)
    // and gcd(x^(q^(n/l)) - x, f) = 1 for every prime l | n. The Frobenius
    // tower is walked one q-power step at a time.
    static bool rabin(const Ops& ops, const Vec& f, u128 q) {
        const std::size_t n = f.size() - 1;
        if (n == 1) return true;
        std::vector<std::size_t> targets;
        for (u64 l : prime_factors_u64(static_cast<u64>(n))) targets.push_back(n / l);
        std::sort(targets.begin(), targets.end());
        const C linv = ops.inv(f.back());
        Vec xpoly{ops.zero(), ops.one()};
        Vec cur = xpoly;
        for (std::size_t step = 1; step <= n; ++step) {
            cur = powmod(ops, cur, q, f, linv);
            if (std::binary_search(targets.begin(), targets.end(), step)) {
                Vec diff = sub(ops, cur, xpoly);
                Vec g = gcd(ops, diff, f);
                if (g.size() != 1) return false;  // includes diff == 0
            }
        }
        Vec diff = sub(ops, cur, xpoly);
        return diff.empty();
    }
};

}  // namespace pk

namespace detail {

template <class Ops>
typename pk::Kernel<Ops>::Vec poly_to_kernel(const Ops& ops, const Poly& f) {
    typename pk::Kernel<Ops>::Vec v;
    v.reserve(f.size());
    for (const Element& c : f.coeffs()) v.push_back(ops.from_element(c));
    return v;
}

template <class Ops>
Poly poly_from_kernel(const Ops& ops, const FieldPtr& f,
                      const typename pk::Kernel<Ops>::Vec& v) {
    std::vector<Element> cs;
    cs.reserve(v.size());
    for (const auto& c : v) cs.push_back(ops.to_element(c));
    return Poly::from_coeffs(f, std::move(cs));
}

// Calls fn(ops) with the fastest kernel the coefficient field admits.
template <class Fn>
auto with_kernel(const FieldPtr& f, Fn&& fn) {
    if (f->is_prime_field()) return fn(pk::PrimeOps{f->characteristic(), f});
    if (f->height() == 1 && f->extension_degree() <= pk::kMaxBlock) {
        pk::BlockOps ops;
        ops.p = f->characteristic();
        ops.k = f->extension_degree();
        const auto& m = f->modulus_flat();
        for (std::size_t j = 0; j < ops.k; ++j) ops.mod[j] = m[j];
        ops.f = f;
        return fn(ops);
    }
    return fn(pk::ElementOps{f});
}

}  // namespace detail

inline Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
    return detail::with_kernel(a.field(), [&](auto ops) {
        using K = pk::Kernel<decltype(ops)>;
        auto va = detail::poly_to_kernel(ops, a);
        auto vb = detail::poly_to_kernel(ops, b);
        return detail::poly_from_kernel(ops, a.field(), K::mul(ops, va, vb));
    });
}

inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    if (!a.field()->same(*b.field())) throw CtxMismatchError("polynomials over different fields");
    return detail::with_kernel(a.field(), [&](auto ops) {
        using K = pk::Kernel<decltype(ops)>;
        auto [q, r] = K::divrem(ops, detail::poly_to_kernel(ops, a), detail::poly_to_kernel(ops, b));
        return std::make_pair(detail::poly_from_kernel(ops, a.field(), q),
                              detail::poly_from_kernel(ops, a.field(), r));
    });
}

/// Monic greatest common divisor.
inline Poly gcd(const Poly& a, const Poly& b) {
    if (!a.field()->same(*b.field())) throw CtxMismatchError("polynomials over different fields");
    return detail::with_kernel(a.field(), [&](auto ops) {
        using K = pk::Kernel<decltype(ops)>;
        return detail::poly_from_kernel(
            ops, a.field(),
            K::gcd(ops, detail::poly_to_kernel(ops, a), detail::poly_to_kernel(ops, b)));
    });
}

inline Poly scale(const Poly& f, const Element& s) {
    std::vector<Element> cs;
    cs.reserve(f.size());
    for (const Element& c : f.coeffs()) cs.push_back(c * s);
    return Poly::from_coeffs(f.field(), std::move(cs));
}

inline Poly derivative(const Poly& f) {
    if (f.size() <= 1) return Poly::zero(f.field());
    std::vector<Element> cs;
    cs.reserve(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        cs.push_back(f.coeff(i) * f.field()->from_int(static_cast<std::int64_t>(i)));
    return Poly::from_coeffs(f.field(), std::move(cs));
}

/// Lift every coefficient into an extension field above the coefficient field.
inline Poly embed_poly(const Poly& f, const FieldPtr& target) {
    std::vector<Element> cs;
    cs.reserve(f.size());
    for (const Element& c : f.coeffs()) cs.push_back(embed(c, target));
    return Poly::from_coeffs(target, std::move(cs));
}

/// Horner evaluation; alpha may live in an extension of the coefficient field.
inline Element evaluate(const Poly& f, const Element& alpha) {
    const FieldPtr& K = alpha.field();
    Element acc = K->zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * alpha + embed(f.coeff(i), K);
    return acc;
}

/// f(x^t).
inline Poly substitute_power(const Poly& f, u64 t) {
    if (t == 0) throw PreconditionViolatedError("power substitution needs t >= 1");
    if (f.is_zero() || t == 1) return f;
    const std::size_t n = *f.degree();
    std::vector<Element> cs(n * t + 1, f.field()->zero());
    for (std::size_t i = 0; i < f.size(); ++i) cs[i * t] = f.coeff(i);
    return Poly::from_coeffs(f.field(), std::move(cs));
}

/// Coefficient reversal x^n f(1/x); the degree drops when f(0) = 0.
inline Poly reciprocal(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomialError("reciprocal of the zero polynomial");
    std::vector<Element> cs(f.coeffs().rbegin(), f.coeffs().rend());
    return Poly::from_coeffs(f.field(), std::move(cs));
}

inline Poly monic(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomialError("monic normalization of the zero polynomial");
    if (f.is_monic()) return f;
    return scale(f, f.lead().inv());
}

/// x^(q^k) mod f, as k successive modular q-th powers; q^k itself is never
/// materialized.
inline Poly frobenius_powmod(const Poly& f, std::size_t k) {
    if (f.is_zero() || *f.degree() < 1) throw PreconditionViolatedError("modulus must have degree >= 1");
    if (!f.is_monic()) throw PreconditionViolatedError("modulus must be monic");
    if (k < 1) throw PreconditionViolatedError("k must be >= 1");
    const u128 q = f.field()->order();
    return detail::with_kernel(f.field(), [&](auto ops) {
        using K = pk::Kernel<decltype(ops)>;
        auto fd = detail::poly_to_kernel(ops, f);
        const auto linv = ops.inv(fd.back());
        typename K::Vec cur{ops.zero(), ops.one()};
        K::reduce_inplace(ops, cur, fd, linv);
        for (std::size_t i = 0; i < k; ++i) cur = K::powmod(ops, cur, q, fd, linv);
        return detail::poly_from_kernel(ops, f.field(), cur);
    });
}

/// Rabin's irreducibility test, applied to the monic normalization.
inline bool is_irreducible(const Poly& f) {
    if (f.is_zero() || *f.degree() < 1)
        throw PreconditionViolatedError("irreducibility needs degree >= 1");
    const Poly m = monic(f);
    const u128 q = f.field()->order();
    return detail::with_kernel(f.field(), [&](auto ops) {
        using K = pk::Kernel<decltype(ops)>;
        return K::rabin(ops, detail::poly_to_kernel(ops, m), q);
    });
}

struct EnumOptions {
    enum class Mode { automatic, exhaustive, random };
    Mode mode = Mode::automatic;
    u64 prng_seed = 0x1c39a6f2d4b08e57ull;  // fixed default, surfaced by the CLI
    u128 exhaustive_budget = 10'000'000;
    u64 random_tries = 200'000;
};

/// Monic irreducible polynomials of degree n satisfying predicate, in
/// canonical order (exhaustive mode) or reproducible seeded order.
inline std::vector<Poly> enumerate_irreducibles(
    const FieldPtr& ctx, std::size_t n, const std::function<bool(const Poly&)>& predicate,
    std::size_t limit, const EnumOptions& opt = {}) {
    if (n < 1) throw PreconditionViolatedError("degree must be >= 1");
    std::vector<Poly> out;
    const u128 q = ctx->order();
    u128 space = 1;
    bool over_budget = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (space > opt.exhaustive_budget / q) {
            over_budget = true;
            break;
        }
        space *= q;
    }
    const bool exhaustive_ok = !over_budget && space <= opt.exhaustive_budget;
    EnumOptions::Mode mode = opt.mode;
    if (mode == EnumOptions::Mode::automatic)
        mode = exhaustive_ok ? EnumOptions::Mode::exhaustive : EnumOptions::Mode::random;
    if (mode == EnumOptions::Mode::exhaustive) {
        if (!exhaustive_ok)
            throw BudgetExceededError("exhaustive enumeration over q^n > budget");
        for (u128 idx = 0; idx < space && out.size() < limit; ++idx) {
            Poly cand = Poly::monic_from_index(ctx, n, idx);
            if (is_irreducible(cand) && (!predicate || predicate(cand))) out.push_back(cand);
        }
        return out;
    }
    std::mt19937_64 rng(opt.prng_seed);
    for (u64 tries = 0; tries < opt.random_tries && out.size() < limit; ++tries) {
        std::vector<Element> cs;
        cs.reserve(n + 1);
        for (std::size_t j = 0; j < n; ++j) {
            u128 idx = ((static_cast<u128>(rng()) << 64) | rng()) % q;
            cs.push_back(ctx->from_index(idx));
        }
        cs.push_back(ctx->one());
        Poly cand = Poly::from_coeffs(ctx, std::move(cs));
        if (!is_irreducible(cand)) continue;
        if (predicate && !predicate(cand)) continue;
        bool dup = false;
        for (const Poly& p : out) dup = dup || p == cand;
        if (!dup) out.push_back(cand);
    }
    if (out.size() < limit && limit != static_cast<std::size_t>(-1))
        throw BudgetExceededError("random irreducible search exhausted its try budget");
    return out;
}

/// Multiplicative order of x in F_q[x]/(f) for monic irreducible f != x:
/// divide prime factors out of q^n - 1. Factorization failures surface as
/// FactorizationBudgetExceededError so callers can fall back to eta-based
/// criteria.
inline u128 exponent_of(const Poly& f) {
    if (f.is_zero() || *f.degree() < 1 || !f.is_monic())
        throw PreconditionViolatedError("exponent needs a monic polynomial of degree >= 1");
    if (f.coeff(0).is_zero()) throw PreconditionViolatedError("exponent of x is undefined");
    if (!is_irreducible(f)) throw PreconditionViolatedError("exponent needs an irreducible polynomial");
    const std::size_t n = *f.degree();
    const u128 group = checked_pow_u128(f.field()->order(), static_cast<unsigned>(n)) - 1;
    const auto factors = factorize(group);
    return detail::with_kernel(f.field(), [&](auto ops) {
        using K = pk::Kernel<decltype(ops)>;
        auto fd = detail::poly_to_kernel(ops, f);
        const auto linv = ops.inv(fd.back());
        const typename K::Vec xpoly{ops.zero(), ops.one()};
        auto is_one_pow = [&](u128 e) {
            auto r = K::powmod(ops, xpoly, e, fd, linv);
            return r.size() == 1 && ops.is_one(r[0]);
        };
        u128 e = group;
        for (const auto& [prime, mult] : factors) {
            for (unsigned i = 0; i < mult; ++i) {
                if (e % prime == 0 && is_one_pow(e / prime))
                    e /= prime;
                else
                    break;
            }
        }
        return e;
    });
}

inline constexpr u64 kSplitPrngSeed = 0x6a09e667f3bcc908ull;

/// Split a monic irreducible g in F_q[x] of even degree into its two conjugate
/// irreducible factors over the quadratic extension, by Cantor-Zassenhaus
/// equal-degree splitting with a fixed candidate sequence. Returns (r, s) with
/// r the canonically smaller factor and s its coefficient-wise q-th power.
inline std::pair<Poly, Poly> split_over_quadratic(const Poly& g, const FieldPtr& ctx2) {
    const FieldPtr& F = g.field();
    if (ctx2->is_prime_field() || !ctx2->base()->same(*F) || ctx2->extension_degree() != 2)
        throw CtxMismatchError("target is not a quadratic extension of the coefficient field");
    if (F->characteristic() == 2)
        throw EvenCharacteristicError("equal-degree splitting requires odd characteristic");
    if (g.is_zero() || !g.is_monic() || *g.degree() % 2 != 0 || *g.degree() == 0)
        throw PreconditionViolatedError("input must be monic of positive even degree");
    if (!is_irreducible(g)) throw PreconditionViolatedError("input must be irreducible");

    const std::size_t n = *g.degree();
    const std::size_t half = n / 2;
    const u128 Q = ctx2->order();
    const u128 e = (checked_pow_u128(Q, static_cast<unsigned>(half)) - 1) / 2;
    const Poly gh = embed_poly(g, ctx2);

    return detail::with_kernel(ctx2, [&](auto ops) -> std::pair<Poly, Poly> {
        using K = pk::Kernel<decltype(ops)>;
        auto fd = detail::poly_to_kernel(ops, gh);
        const auto linv = ops.inv(fd.back());
        std::mt19937_64 rng(kSplitPrngSeed);
        Poly factor;
        for (int tries = 0; tries < 256; ++tries) {
            std::vector<Element> ucs;
            for (std::size_t i = 0; i < n; ++i) {
                u128 idx = ((static_cast<u128>(rng()) << 64) | rng()) % Q;
                ucs.push_back(ctx2->from_index(idx));
            }
            Poly u = Poly::from_coeffs(ctx2, std::move(ucs));
            if (u.is_zero()) continue;
            Poly d = gcd(u, gh);
            if (d.degree() && *d.degree() > 0 && *d.degree() < n) {
                factor = d;
                break;
            }
            auto w = K::powmod(ops, detail::poly_to_kernel(ops, u), e, fd, linv);
            if (!w.empty()) w[0] = ops.sub(w[0], ops.one());
            Poly wp = detail::poly_from_kernel(ops, ctx2, w);
            d = gcd(wp, gh);
            if (d.degree() && *d.degree() > 0 && *d.degree() < n) {
                factor = d;
                break;
            }
        }
        if (!factor.valid() || factor.is_zero())
            throw Error("internal: equal-degree splitting did not converge");
        Poly r = monic(factor);
        Poly s = monic(divrem(gh, r).first);
        // s must be the coefficient-wise q-th power of r
        const u128 q = F->order();
        std::vector<Element> conj;
        for (const Element& c : r.coeffs()) conj.push_back(c.pow(q));
        if (Poly::from_coeffs(ctx2, conj) != s)
            throw Error("internal: split factors are not Galois conjugates");
        if (s < r) std::swap(r, s);
        return {r, s};
    });
}

/// Deterministic extension: the canonically smallest monic irreducible
/// modulus of degree k over the base.
inline FieldPtr make_extension(const FieldPtr& base, std::size_t k) {
    if (k < 2) throw PreconditionViolatedError("extension degree must be >= 2");
    checked_pow_u128(base->order(), static_cast<unsigned>(k));  // OrderOverflowError early
    for (u128 idx = 0;; ++idx) {
        Poly cand = Poly::monic_from_index(base, k, idx);
        if (is_irreducible(cand)) {
            std::vector<u64> flat;
            flat.reserve(k * base->dim());
            for (std::size_t j = 0; j < k; ++j) {
                const Element cj = cand.coeff(j);
                flat.insert(flat.end(), cj.flat().begin(), cj.flat().end());
            }
            return detail::make_extension_raw(base, k, std::move(flat));
        }
    }
}

/// Extension with a caller-chosen modulus (validated monic irreducible).
inline FieldPtr make_extension_with_modulus(const FieldPtr& base, const Poly& modulus) {
    if (!modulus.field()->same(*base)) throw CtxMismatchError("modulus not over the base field");
    if (modulus.is_zero() || *modulus.degree() < 2 || !modulus.is_monic())
        throw PreconditionViolatedError("modulus must be monic of degree >= 2");
    if (!is_irreducible(modulus)) throw ReducibleModulusError("modulus is reducible");
    const std::size_t k = *modulus.degree();
    std::vector<u64> flat;
    flat.reserve(k * base->dim());
    for (std::size_t j = 0; j < k; ++j) {
        const Element cj = modulus.coeff(j);
        flat.insert(flat.end(), cj.flat().begin(), cj.flat().end());
    }
    return detail::make_extension_raw(base, k, std::move(flat));
}

}  // namespace irrchain
