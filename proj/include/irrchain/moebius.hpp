#pragma once

// The GL2 action on the projective line and on polynomials: fractional linear
// point maps, the induced degree-n polynomial transform, root-invariance
// matrices, and orders in PGL2.

#include <optional>
#include <vector>

#include "irrchain/errors.hpp"
#include "irrchain/field.hpp"
#include "irrchain/poly.hpp"

namespace irrchain {

/// Invertible 2x2 matrix [[a,b],[c,d]] over a field; determinant checked at
/// construction.
class Mat2 {
  public:
    Mat2(Element a, Element b, Element c, Element d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        const FieldPtr& f = a_.field();
        if (!f || !b_.field()->same(*f) || !c_.field()->same(*f) || !d_.field()->same(*f))
            throw CtxMismatchError("matrix entries in different fields");
        if (det().is_zero()) throw PreconditionViolatedError("matrix is singular");
    }

    static Mat2 identity(const FieldPtr& f) {
        return Mat2(f->one(), f->zero(), f->zero(), f->one());
    }
    static Mat2 from_ints(const FieldPtr& f, std::int64_t a, std::int64_t b, std::int64_t c,
                          std::int64_t d) {
        return Mat2(f->from_int(a), f->from_int(b), f->from_int(c), f->from_int(d));
    }

    const FieldPtr& field() const { return a_.field(); }
    const Element& a() const { return a_; }
    const Element& b() const { return b_; }
    const Element& c() const { return c_; }
    const Element& d() const { return d_; }
    Element det() const { return a_ * d_ - b_ * c_; }

    bool is_scalar() const { return b_.is_zero() && c_.is_zero() && a_ == d_; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                    x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_);
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }

    /// Lift all entries into an extension field.
    Mat2 embedded(const FieldPtr& target) const {
        return Mat2(embed(a_, target), embed(b_, target), embed(c_, target), embed(d_, target));
    }

  private:
    Element a_, b_, c_, d_;
};

/// The exact inverse (1/det) [[d,-b],[-c,a]], not the adjugate; the scalar
/// matters for bit-exact raw transform outputs.
inline Mat2 mat_inverse(const Mat2& m) {
    const Element di = m.det().inv();
    return Mat2(m.d() * di, -(m.b() * di), -(m.c() * di), m.a() * di);
}

/// A point of the projective line over an element's field: finite or infinity.
class ProjPoint {
  public:
    ProjPoint() = default;  // infinity
    explicit ProjPoint(Element v) : v_(std::move(v)) {}
    static ProjPoint infinity() { return ProjPoint(); }

    bool is_infinity() const { return !v_.has_value(); }
    const Element& value() const {
        if (!v_) throw Error("internal: value() on the point at infinity");
        return *v_;
    }
    friend bool operator==(const ProjPoint& x, const ProjPoint& y) {
        if (x.is_infinity() || y.is_infinity()) return x.is_infinity() && y.is_infinity();
        return *x.v_ == *y.v_;
    }
    friend bool operator!=(const ProjPoint& x, const ProjPoint& y) { return !(x == y); }

  private:
    std::optional<Element> v_;
};

/// sigma . alpha = (a alpha + b)/(c alpha + d), with sigma . infinity = a/c
/// (infinity when c = 0) and the pole mapped to infinity.
inline ProjPoint act(const Mat2& sigma, const ProjPoint& pt) {
    if (pt.is_infinity()) {
        if (sigma.c().is_zero()) return ProjPoint::infinity();
        return ProjPoint(sigma.a() / sigma.c());
    }
    const FieldPtr& K = pt.value().field();
    const Mat2 s = sigma.field()->same(*K) ? sigma : sigma.embedded(K);
    const Element den = s.c() * pt.value() + s.d();
    if (den.is_zero()) return ProjPoint::infinity();
    return ProjPoint((s.a() * pt.value() + s.b()) / den);
}

/// Evaluate f at a projective point and test for zero; f(infinity) counts as
/// nonzero for any nonzero f (the leading coefficient does not vanish).
inline bool vanishes_at(const Poly& f, const ProjPoint& pt) {
    if (f.is_zero()) throw ZeroPolynomialError("evaluation of the zero polynomial");
    if (pt.is_infinity()) return false;
    return evaluate(f, pt.value()).is_zero();
}

/// The induced degree-n transform (cx+d)^n f((ax+b)/(cx+d)), computed as
/// sum_i f_i (ax+b)^i (cx+d)^(n-i). Degree drops below n exactly when
/// f(sigma . infinity) = 0.
inline Poly p_sigma(const Mat2& sigma, const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomialError("transform of the zero polynomial");
    const FieldPtr& K = sigma.field();
    const Poly fk = f.field()->same(*K) ? f : embed_poly(f, K);
    const std::size_t n = *fk.degree();
    const Poly num = Poly::from_coeffs(K, {sigma.b(), sigma.a()});
    const Poly den = Poly::from_coeffs(K, {sigma.d(), sigma.c()});
    std::vector<Poly> num_pow(n + 1), den_pow(n + 1);
    num_pow[0] = Poly::one(K);
    den_pow[0] = Poly::one(K);
    for (std::size_t i = 1; i <= n; ++i) {
        num_pow[i] = num_pow[i - 1] * num;
        den_pow[i] = den_pow[i - 1] * den;
    }
    Poly acc = Poly::zero(K);
    for (std::size_t i = 0; i <= n; ++i) {
        const Element ci = fk.coeff(i);
        if (ci.is_zero()) continue;
        acc = acc + scale(num_pow[i] * den_pow[n - i], ci);
    }
    return acc;
}

/// Verifies the composition law P_tau(P_sigma(f)) = P_{sigma tau}(f) exactly;
/// the law requires f(sigma . infinity) != 0.
inline bool compose_law_check(const Mat2& sigma, const Mat2& tau, const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomialError("composition check on the zero polynomial");
    if (vanishes_at(f, act(sigma, ProjPoint::infinity())))
        throw HypothesisViolatedError("f vanishes at sigma . infinity");
    const Poly lhs = p_sigma(tau, p_sigma(sigma, f));
    const Poly rhs = p_sigma(sigma * tau, f);
    return lhs == rhs;
}

/// The root-invariance matrix sigma diag(zeta, 1) adj(sigma) =
/// [[zeta ad - bc, (1-zeta) ab], [(zeta-1) cd, ad - zeta bc]].
///
/// Direction matters: roots of the iterate are sigma images of roots of the
/// conjugated power chain, whose root set multiplication by zeta fixes, so
/// the map carrying the iterate's roots to themselves is
/// sigma o mu_zeta o sigma^{-1}. The opposite conjugation only agrees when
/// sigma is a projective involution.
inline Mat2 m_sigma_zeta(const Mat2& sigma, const Element& zeta) {
    if (zeta.is_zero()) throw ZeroZetaError("zeta must be nonzero");
    const FieldPtr& K = zeta.field();
    const Mat2 s = sigma.field()->same(*K) ? sigma : sigma.embedded(K);
    const Mat2 adj(s.d(), -s.b(), -s.c(), s.a());
    const Mat2 diag(zeta, K->zero(), K->zero(), K->one());
    return s * diag * adj;
}

/// Least D >= 1 with sigma^D scalar; element orders in PGL2 are bounded well
/// below the q^2 - 1 guard.
inline u128 pgl_order(const Mat2& sigma) {
    const u128 q = sigma.field()->order();
    const u128 bound = q * q - 1;
    Mat2 acc = sigma;
    for (u128 d = 1; d <= bound; ++d) {
        if (acc.is_scalar()) return d;
        acc = acc * sigma;
    }
    throw Error("internal: no scalar power found within the PGL2 order bound");
}

/// True iff the root set of squarefree f of full degree is carried to itself
/// by the fractional linear map of M: P_M(f) must be a nonzero scalar
/// multiple of f of the same degree.
inline bool fixes_root_set(const Poly& f, const Mat2& m) {
    if (f.is_zero() || *f.degree() < 1)
        throw ZeroPolynomialError("invariance check needs degree >= 1");
    const FieldPtr& K = m.field();
    const Poly fk = f.field()->same(*K) ? f : embed_poly(f, K);
    const Poly img = p_sigma(m, fk);
    if (img.is_zero() || *img.degree() != *fk.degree()) return false;
    return monic(img) == monic(fk);
}

}  // namespace irrchain
