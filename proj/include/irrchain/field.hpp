#pragma once

// Finite fields: prime fields F_p and extension towers F_q[y]/(m(y)).
//
// A Field is an immutable shared descriptor. An Element stores its
// coordinates flattened over the prime subfield, so equality and ordering
// are plain word comparisons and all arithmetic reduces recursively along
// the tower. Elements are canonical at all times (every residue in [0,p)).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irrchain/errors.hpp"
#include "irrchain/numbers.hpp"

namespace irrchain {

class Field;
using FieldPtr = std::shared_ptr<const Field>;
class Element;

namespace detail {

inline u64 addmod_u64(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 submod_u64(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mulmod_u64(u64 a, u64 b, u64 p) { return (a * b) % p; }  // p < 2^31

inline u64 invmod_u64(u64 a, u64 p) {
    if (a == 0) throw DivisionByZeroError("inverse of zero");
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<u64>(t);
}

FieldPtr make_extension_raw(const FieldPtr& base, std::size_t k, std::vector<u64> modulus_flat);

}  // namespace detail

class Field : public std::enable_shared_from_this<Field> {
  public:
    u64 characteristic() const { return p_; }
    u128 order() const { return order_; }
    bool is_prime_field() const { return base_ == nullptr; }
    const FieldPtr& base() const { return base_; }
    /// Degree over the immediate base field (1 for a prime field).
    std::size_t extension_degree() const { return k_; }
    /// Total degree over the prime subfield; the length of a flat element.
    std::size_t dim() const { return dim_; }
    /// Number of extension steps above F_p.
    std::size_t height() const { return height_; }
    /// Lower k coefficients of the (monic) defining modulus, flattened over
    /// the base; empty for prime fields.
    const std::vector<u64>& modulus_flat() const { return mod_; }
    std::vector<Element> modulus_coeffs() const;  // length k+1, over base()

    bool same(const Field& other) const { return sig_ == other.sig_; }
    const std::vector<u64>& signature() const { return sig_; }

    Element zero() const;
    Element one() const;
    Element from_int(std::int64_t n) const;
    Element from_flat(std::vector<u64> w) const;
    Element from_coords(const std::vector<Element>& coords) const;
    /// Inverse of Element::index(): the i-th element in canonical order.
    Element from_index(u128 i) const;

  private:
    Field() = default;
    friend FieldPtr make_prime_field(u64 p);
    friend FieldPtr detail::make_extension_raw(const FieldPtr&, std::size_t, std::vector<u64>);

    u64 p_ = 0;
    std::size_t k_ = 1;
    u128 order_ = 0;
    std::size_t dim_ = 1;
    std::size_t height_ = 0;
    FieldPtr base_;
    std::vector<u64> mod_;
    std::vector<u64> sig_;
};

namespace detail {

inline void el_zero(std::span<u64> dst) {
    for (auto& w : dst) w = 0;
}

inline bool el_is_zero(std::span<const u64> a) {
    for (u64 w : a)
        if (w != 0) return false;
    return true;
}

inline void el_add(u64 p, std::span<u64> dst, std::span<const u64> a, std::span<const u64> b) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = addmod_u64(a[i], b[i], p);
}

inline void el_sub(u64 p, std::span<u64> dst, std::span<const u64> a, std::span<const u64> b) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = submod_u64(a[i], b[i], p);
}

inline void el_neg(u64 p, std::span<u64> dst, std::span<const u64> a) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] == 0 ? 0 : p - a[i];
}

// dst = a * b, reducing along the whole tower.
inline void el_mul(const Field& f, std::span<u64> dst, std::span<const u64> a,
                   std::span<const u64> b) {
    const u64 p = f.characteristic();
    if (f.is_prime_field()) {
        dst[0] = mulmod_u64(a[0], b[0], p);
        return;
    }
    const Field& base = *f.base();
    const std::size_t k = f.extension_degree();
    const std::size_t d = base.dim();
    std::vector<u64> conv((2 * k - 1) * d, 0);
    std::vector<u64> tmp(d);
    auto blk = [&](std::vector<u64>& v, std::size_t i) { return std::span<u64>(v).subspan(i * d, d); };
    for (std::size_t i = 0; i < k; ++i) {
        auto ai = a.subspan(i * d, d);
        if (el_is_zero(ai)) continue;
        for (std::size_t j = 0; j < k; ++j) {
            auto bj = b.subspan(j * d, d);
            if (el_is_zero(bj)) continue;
            el_mul(base, tmp, ai, bj);
            auto c = blk(conv, i + j);
            el_add(p, c, c, tmp);
        }
    }
    const std::vector<u64>& md = f.modulus_flat();
    std::vector<u64> top(d);
    for (std::size_t i = 2 * k - 2; i >= k; --i) {
        auto ci = blk(conv, i);
        if (!el_is_zero(ci)) {
            std::copy(ci.begin(), ci.end(), top.begin());
            for (std::size_t j = 0; j < k; ++j) {
                auto mj = std::span<const u64>(md).subspan(j * d, d);
                if (el_is_zero(mj)) continue;
                el_mul(base, tmp, top, mj);
                auto c = blk(conv, i - k + j);
                el_sub(p, c, c, tmp);
            }
        }
        if (i == k) break;
    }
    std::copy(conv.begin(), conv.begin() + static_cast<std::ptrdiff_t>(k * d), dst.begin());
}

inline void el_pow(const Field& f, std::span<u64> dst, std::span<const u64> a, u128 e) {
    std::vector<u64> acc(f.dim(), 0);
    acc[0] = 1 % f.characteristic();  // 0^0 = 1 by convention
    std::vector<u64> sq(a.begin(), a.end());
    std::vector<u64> t(f.dim());
    while (e > 0) {
        if (e & 1) {
            el_mul(f, t, acc, sq);
            acc = t;
        }
        e >>= 1;
        if (e == 0) break;
        el_mul(f, t, sq, sq);
        sq = t;
    }
    std::copy(acc.begin(), acc.end(), dst.begin());
}

inline void el_inv(const Field& f, std::span<u64> dst, std::span<const u64> a) {
    if (el_is_zero(a)) throw DivisionByZeroError("inverse of zero element");
    if (f.is_prime_field()) {
        dst[0] = invmod_u64(a[0], f.characteristic());
        return;
    }
    el_pow(f, dst, a, f.order() - 2);  // Lagrange
}

}  // namespace detail

class Element {
  public:
    Element() = default;
    Element(FieldPtr f, std::vector<u64> w) : f_(std::move(f)), w_(std::move(w)) {}

    bool valid() const { return f_ != nullptr; }
    const FieldPtr& field() const { return f_; }
    std::span<const u64> flat() const { return w_; }
    const std::vector<u64>& words() const { return w_; }

    bool is_zero() const { return detail::el_is_zero(w_); }
    bool is_one() const {
        if (w_.empty() || w_[0] != 1 % f_->characteristic()) return false;
        for (std::size_t i = 1; i < w_.size(); ++i)
            if (w_[i] != 0) return false;
        return true;
    }

    /// Residue of a prime-field element.
    u64 residue() const {
        if (!f_->is_prime_field()) throw CtxMismatchError("residue() needs a prime field");
        return w_[0];
    }

    /// Coordinates over the immediate base field (length = extension degree).
    std::vector<Element> coords() const;

    /// Canonical enumeration index: base-q digits, constant coordinate fastest.
    u128 index() const {
        u128 idx = 0;
        for (std::size_t i = w_.size(); i-- > 0;) idx = idx * f_->characteristic() + w_[i];
        return idx;
    }

    friend bool operator==(const Element& a, const Element& b) {
        return a.check_same(b), a.w_ == b.w_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
    /// Canonical order: compare coordinate tuples most-significant first.
    friend bool operator<(const Element& a, const Element& b) {
        a.check_same(b);
        return std::lexicographical_compare(a.w_.rbegin(), a.w_.rend(), b.w_.rbegin(),
                                            b.w_.rend());
    }

    friend Element operator+(const Element& a, const Element& b) {
        a.check_same(b);
        Element r(a.f_, std::vector<u64>(a.w_.size()));
        detail::el_add(a.f_->characteristic(), r.w_, a.w_, b.w_);
        return r;
    }
    friend Element operator-(const Element& a, const Element& b) {
        a.check_same(b);
        Element r(a.f_, std::vector<u64>(a.w_.size()));
        detail::el_sub(a.f_->characteristic(), r.w_, a.w_, b.w_);
        return r;
    }
    Element operator-() const {
        Element r(f_, std::vector<u64>(w_.size()));
        detail::el_neg(f_->characteristic(), r.w_, w_);
        return r;
    }
    friend Element operator*(const Element& a, const Element& b) {
        a.check_same(b);
        Element r(a.f_, std::vector<u64>(a.w_.size()));
        detail::el_mul(*a.f_, r.w_, a.w_, b.w_);
        return r;
    }
    Element inv() const {
        Element r(f_, std::vector<u64>(w_.size()));
        detail::el_inv(*f_, r.w_, w_);
        return r;
    }
    friend Element operator/(const Element& a, const Element& b) { return a * b.inv(); }

    Element pow(u128 e) const {
        Element r(f_, std::vector<u64>(w_.size()));
        detail::el_pow(*f_, r.w_, w_, e);
        return r;
    }

  private:
    void check_same(const Element& o) const {
        if (!f_ || !o.f_ || !f_->same(*o.f_))
            throw CtxMismatchError("elements of different fields");
    }
    FieldPtr f_;
    std::vector<u64> w_;
};

inline Element Field::zero() const {
    return Element(shared_from_this(), std::vector<u64>(dim_, 0));
}

inline Element Field::one() const { return from_int(1); }

inline Element Field::from_int(std::int64_t n) const {
    std::int64_t m = n % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    std::vector<u64> w(dim_, 0);
    w[0] = static_cast<u64>(m);
    return Element(shared_from_this(), std::move(w));
}

inline Element Field::from_flat(std::vector<u64> w) const {
    if (w.size() != dim_) throw CtxMismatchError("flat vector has wrong length");
    for (u64 v : w)
        if (v >= p_) throw OutOfRangeError("coordinate not reduced mod p");
    return Element(shared_from_this(), std::move(w));
}

inline Element Field::from_coords(const std::vector<Element>& coords) const {
    if (is_prime_field() || coords.size() != k_)
        throw CtxMismatchError("coordinate vector has wrong length for this field");
    std::vector<u64> w;
    w.reserve(dim_);
    for (const Element& c : coords) {
        if (!c.field()->same(*base_)) throw CtxMismatchError("coordinate not in the base field");
        w.insert(w.end(), c.flat().begin(), c.flat().end());
    }
    return Element(shared_from_this(), std::move(w));
}

inline Element Field::from_index(u128 i) const {
    if (i >= order_) throw OutOfRangeError("element index out of range");
    std::vector<u64> w(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        w[j] = static_cast<u64>(i % p_);
        i /= p_;
    }
    return Element(shared_from_this(), std::move(w));
}

inline std::vector<Element> Field::modulus_coeffs() const {
    if (is_prime_field()) throw CtxMismatchError("prime field has no modulus");
    std::vector<Element> out;
    const std::size_t d = base_->dim();
    for (std::size_t j = 0; j < k_; ++j) {
        std::vector<u64> w(mod_.begin() + static_cast<std::ptrdiff_t>(j * d),
                           mod_.begin() + static_cast<std::ptrdiff_t>((j + 1) * d));
        out.push_back(base_->from_flat(std::move(w)));
    }
    out.push_back(base_->one());
    return out;
}

inline std::vector<Element> Element::coords() const {
    if (f_->is_prime_field()) return {*this};
    const std::size_t d = f_->base()->dim();
    std::vector<Element> out;
    for (std::size_t j = 0; j < f_->extension_degree(); ++j) {
        std::vector<u64> w(w_.begin() + static_cast<std::ptrdiff_t>(j * d),
                           w_.begin() + static_cast<std::ptrdiff_t>((j + 1) * d));
        out.push_back(f_->base()->from_flat(std::move(w)));
    }
    return out;
}

inline FieldPtr make_prime_field(u64 p) {
    if (p < 2 || p >= (1ull << 31)) throw OutOfRangeError("characteristic must be in [2, 2^31)");
    if (!is_prime_u64(p)) throw NotPrimeError(std::to_string(p) + " is not prime");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->order_ = p;
    f->sig_ = {0, p};
    return f;
}

namespace detail {

inline FieldPtr make_extension_raw(const FieldPtr& base, std::size_t k,
                                   std::vector<u64> modulus_flat) {
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->characteristic();
    f->k_ = k;
    f->order_ = checked_pow_u128(base->order(), static_cast<unsigned>(k));
    f->dim_ = base->dim() * k;
    f->height_ = base->height() + 1;
    f->base_ = base;
    f->mod_ = std::move(modulus_flat);
    f->sig_ = base->signature();
    f->sig_.push_back(1);
    f->sig_.push_back(k);
    f->sig_.insert(f->sig_.end(), f->mod_.begin(), f->mod_.end());
    return f;
}

}  // namespace detail

/// Lift an element into an extension field built (possibly in several steps)
/// on top of its own field.
inline Element embed(const Element& u, const FieldPtr& target) {
    if (target->same(*u.field())) return Element(target, u.words());
    if (target->is_prime_field())
        throw CtxMismatchError("element field is not a subfield of the target");
    Element b = embed(u, target->base());
    std::vector<u64> w(target->dim(), 0);
    std::copy(b.flat().begin(), b.flat().end(), w.begin());
    return Element(target, std::move(w));
}

inline Element el_pow(const Element& u, u128 e) { return u.pow(e); }

/// True iff u is an l-th power, for prime l dividing q-1; decided by the
/// power-residue test u^((q-1)/l) = 1.
inline bool is_lth_power(const Element& u, u64 l) {
    if (u.is_zero()) throw ZeroInputError("power-residue test on zero");
    const u128 q = u.field()->order();
    if (l == 0 || (q - 1) % l != 0)
        throw LNotDividingGroupOrderError("l must divide the group order q-1");
    return u.pow((q - 1) / l).is_one();
}

/// Deterministic element of exact multiplicative order r: scan candidates u in
/// canonical enumeration order and return the first u^((q-1)/r) of order r.
inline Element root_of_unity(const FieldPtr& ctx, u64 r) {
    const u128 q = ctx->order();
    if (r == 0 || (q - 1) % r != 0)
        throw NoSuchRootError("no element of order " + std::to_string(r) + " exists");
    const u128 e = (q - 1) / r;
    const std::vector<u64> pf = prime_factors_u64(r);
    for (u128 i = 1; i < q; ++i) {
        Element v = ctx->from_index(i).pow(e);
        if (v.is_zero()) continue;
        bool exact = true;
        for (u64 s : pf) {
            if (v.pow(r / s).is_one()) {
                exact = false;
                break;
            }
        }
        if (exact) return v;
    }
    throw NoSuchRootError("scan exhausted without finding a root of unity");
}

/// Norm down one tower level: the product of the extension-degree many
/// Frobenius conjugates, returned as an element of the base field.
inline Element norm_to_base(const Element& u) {
    const FieldPtr& f = u.field();
    if (f->is_prime_field()) throw CtxMismatchError("norm needs an extension field");
    const u128 q = f->base()->order();
    Element acc = u;
    Element conj = u;
    for (std::size_t i = 1; i < f->extension_degree(); ++i) {
        conj = conj.pow(q);
        acc = acc * conj;
    }
    auto c = acc.coords();
    for (std::size_t j = 1; j < c.size(); ++j)
        if (!c[j].is_zero())
            throw Error("internal: norm left the base field");  // unreachable
    return c[0];
}

/// Frobenius-fixed test: if u lies in the base field, return it there.
inline std::optional<Element> in_subfield(const Element& u) {
    const FieldPtr& f = u.field();
    if (f->is_prime_field()) throw CtxMismatchError("in_subfield needs an extension field");
    auto c = u.coords();
    for (std::size_t j = 1; j < c.size(); ++j)
        if (!c[j].is_zero()) return std::nullopt;
    return c[0];
}

}  // namespace irrchain
