#pragma once

// The iterated transforms. Each one is the power substitution x -> x^t
// conjugated by a Moebius change of coordinates; the named families fix the
// matrix (and possibly move to the quadratic extension) but are computed from
// their own closed formulas so the raw outputs are pinned exactly.

#include <optional>
#include <utility>
#include <vector>

#include "irrchain/errors.hpp"
#include "irrchain/field.hpp"
#include "irrchain/moebius.hpp"
#include "irrchain/poly.hpp"

namespace irrchain {

/// Every transform returns both the exact formula output and its monic
/// normalization; identities between the families hold only up to nonzero
/// scalars, while irreducibility and root sets ignore them.
struct TransformOutput {
    Poly raw;
    Poly normalized;
};

/// R_{sigma,t}(g) = P_{sigma^{-1}}(S_t(P_sigma(g))), with the true matrix
/// inverse. The seed must not vanish at sigma . infinity.
inline TransformOutput r_sigma_t(const Poly& g, const Mat2& sigma, u64 t) {
    if (g.is_zero()) throw ZeroPolynomialError("transform of the zero polynomial");
    if (t < 2) throw PreconditionViolatedError("power map exponent must be >= 2");
    const FieldPtr& K = sigma.field();
    const Poly gk = g.field()->same(*K) ? g : embed_poly(g, K);
    if (vanishes_at(gk, act(sigma, ProjPoint::infinity())))
        throw PoleAtSeedError("seed vanishes at sigma . infinity");
    const Poly inner = p_sigma(sigma, gk);
    const Poly powered = substitute_power(inner, t);
    Poly raw = p_sigma(mat_inverse(sigma), powered);
    Poly norm = monic(raw);
    return {std::move(raw), std::move(norm)};
}

/// The obstruction element (sigma^{-1} . infinity)^n g(sigma . 0) / g(sigma . infinity),
/// i.e. (-d/c)^n g(b/d) g(a/c)^{-1}, with the degenerate conventions
/// (-d/a)^n g(b/d) for c = 0 and (-b/c)^n g(a/c)^{-1} for d = 0.
inline Element eta(const Poly& g, const Mat2& sigma) {
    if (g.is_zero()) throw ZeroPolynomialError("eta of the zero polynomial");
    const FieldPtr& K = sigma.field();
    const Poly gk = g.field()->same(*K) ? g : embed_poly(g, K);
    const u128 n = *gk.degree();
    const Element &a = sigma.a(), &b = sigma.b(), &c = sigma.c(), &d = sigma.d();
    if (c.is_zero()) return (-(d / a)).pow(n) * evaluate(gk, b / d);
    if (d.is_zero()) {
        const Element gac = evaluate(gk, a / c);
        if (gac.is_zero()) throw PoleAtSeedError("seed vanishes at sigma . infinity");
        return (-(b / c)).pow(n) * gac.inv();
    }
    const Element gac = evaluate(gk, a / c);
    if (gac.is_zero()) throw PoleAtSeedError("seed vanishes at sigma . infinity");
    return (-(d / c)).pow(n) * evaluate(gk, b / d) * gac.inv();
}

/// Classical R-transform (2x)^deg(g) g((x + 1/x)/2), odd characteristic.
inline TransformOutput cohen_r(const Poly& g) {
    if (g.is_zero()) throw ZeroPolynomialError("transform of the zero polynomial");
    const FieldPtr& F = g.field();
    if (F->characteristic() == 2) throw EvenCharacteristicError("R-transform requires odd q");
    const std::size_t n = *g.degree();
    const Poly sq1 = Poly::from_ints(F, {1, 0, 1});  // x^2 + 1
    const Poly twox = Poly::from_ints(F, {0, 2});
    std::vector<Poly> sq_pow(n + 1), tx_pow(n + 1);
    sq_pow[0] = Poly::one(F);
    tx_pow[0] = Poly::one(F);
    for (std::size_t i = 1; i <= n; ++i) {
        sq_pow[i] = sq_pow[i - 1] * sq1;
        tx_pow[i] = tx_pow[i - 1] * twox;
    }
    Poly raw = Poly::zero(F);
    for (std::size_t i = 0; i <= n; ++i) {
        const Element ci = g.coeff(i);
        if (ci.is_zero()) continue;
        raw = raw + scale(sq_pow[i] * tx_pow[n - i], ci);
    }
    Poly norm = monic(raw);
    return {std::move(raw), std::move(norm)};
}

/// McNay transform (2x)^deg(g) g((x^2 + c)/(2x)) for a non-square c, odd q.
inline TransformOutput mcnay_t(const Poly& g, const Element& c) {
    if (g.is_zero()) throw ZeroPolynomialError("transform of the zero polynomial");
    const FieldPtr& F = g.field();
    if (!c.field()->same(*F)) throw CtxMismatchError("c must lie in the coefficient field");
    if (F->characteristic() == 2) throw EvenCharacteristicError("transform requires odd q");
    if (c.is_zero() || is_lth_power(c, 2)) throw NotNonSquareError("c must be a non-square");
    const std::size_t n = *g.degree();
    const Poly sqc = Poly::from_coeffs(F, {c, F->zero(), F->one()});  // x^2 + c
    const Poly twox = Poly::from_ints(F, {0, 2});
    std::vector<Poly> sc_pow(n + 1), tx_pow(n + 1);
    sc_pow[0] = Poly::one(F);
    tx_pow[0] = Poly::one(F);
    for (std::size_t i = 1; i <= n; ++i) {
        sc_pow[i] = sc_pow[i - 1] * sqc;
        tx_pow[i] = tx_pow[i - 1] * twox;
    }
    Poly raw = Poly::zero(F);
    for (std::size_t i = 0; i <= n; ++i) {
        const Element ci = g.coeff(i);
        if (ci.is_zero()) continue;
        raw = raw + scale(sc_pow[i] * tx_pow[n - i], ci);
    }
    Poly norm = monic(raw);
    return {std::move(raw), std::move(norm)};
}

/// If some nonzero scalar multiple of gq2 has all coefficients in the base
/// field, return that polynomial monic; the test compares every coefficient
/// of the monic normalization against the Frobenius-fixed subfield.
inline std::optional<Poly> descend(const Poly& gq2) {
    if (gq2.is_zero()) throw ZeroPolynomialError("descent of the zero polynomial");
    const FieldPtr& K = gq2.field();
    if (K->is_prime_field()) throw CtxMismatchError("descent needs an extension field");
    const Poly m = monic(gq2);
    std::vector<Element> down;
    down.reserve(m.size());
    for (const Element& c : m.coeffs()) {
        auto sub = in_subfield(c);
        if (!sub) return std::nullopt;
        down.push_back(*sub);
    }
    return Poly::from_coeffs(K->base(), std::move(down));
}

/// First root of a polynomial in the given field, in canonical enumeration
/// order. Used to pin down sqrt(c) and theta deterministically.
inline Element first_root_in(const Poly& f, const FieldPtr& ctx) {
    const u128 N = ctx->order();
    if (N > 40'000'000) throw BudgetExceededError("root scan over a field this large");
    const Poly fe = f.field()->same(*ctx) ? f : embed_poly(f, ctx);
    for (u128 i = 0; i < N; ++i) {
        Element u = ctx->from_index(i);
        if (evaluate(fe, u).is_zero()) return u;
    }
    throw NoSuchRootError("polynomial has no root in the given field");
}

/// The pair f(x) = (theta (x+theta^q)^t - theta^q (x+theta)^t)/(theta^q - theta),
/// h(x) = ((x+theta)^t - (x+theta^q)^t)/(theta^q - theta), both of which
/// descend to the base field (deg f = t, deg h = t-1).
inline std::pair<Poly, Poly> singer_fh(const FieldPtr& ctx2, const Element& theta, u64 t) {
    if (ctx2->is_prime_field() || ctx2->extension_degree() != 2)
        throw CtxMismatchError("theta must live in a quadratic extension");
    if (!theta.field()->same(*ctx2)) throw CtxMismatchError("theta not in the given field");
    if (t < 2) throw PreconditionViolatedError("power map exponent must be >= 2");
    if (in_subfield(theta)) throw PreconditionViolatedError("theta lies in the base field");
    if (!in_subfield(theta * theta - theta))
        throw PreconditionViolatedError("theta^2 - theta is not in the base field");
    const u128 q = ctx2->base()->order();
    const Element thq = theta.pow(q);
    const Element denom_inv = (thq - theta).inv();
    const Poly u = Poly::from_coeffs(ctx2, {thq, ctx2->one()});   // x + theta^q
    const Poly v = Poly::from_coeffs(ctx2, {theta, ctx2->one()});  // x + theta
    Poly ut = Poly::one(ctx2), vt = Poly::one(ctx2);
    for (u64 i = 0; i < t; ++i) {
        ut = ut * u;
        vt = vt * v;
    }
    const Poly f2 = scale(scale(ut, theta) - scale(vt, thq), denom_inv);
    const Poly h2 = scale(vt - ut, denom_inv);
    auto down = [](const Poly& p) {
        std::vector<Element> cs;
        cs.reserve(p.size());
        for (const Element& c : p.coeffs()) {
            auto s = in_subfield(c);
            if (!s)
                throw InternalDescentFailureError(
                    "coefficient failed to descend; arithmetic is inconsistent");
            cs.push_back(*s);
        }
        return Poly::from_coeffs(p.field()->base(), std::move(cs));
    };
    Poly f = down(f2);
    Poly h = down(h2);
    if (!f.degree() || *f.degree() != t || !h.degree() || *h.degree() != t - 1)
        throw PreconditionViolatedError("degenerate exponent (p divides t)");
    return {std::move(f), std::move(h)};
}

/// Singer-type transform h(x)^deg(g) g(f(x)/h(x)), computed entirely over the
/// base field. Requires x^2 - x - c irreducible and g(-theta) != 0.
inline TransformOutput singer_q(const Poly& g, const Element& c, u64 t) {
    if (g.is_zero()) throw ZeroPolynomialError("transform of the zero polynomial");
    const FieldPtr& F = g.field();
    if (!c.field()->same(*F)) throw CtxMismatchError("c must lie in the coefficient field");
    const Poly modpoly = Poly::from_coeffs(F, {-c, -F->one(), F->one()});  // x^2 - x - c
    if (!is_irreducible(modpoly)) throw ReducibleModulusError("x^2 - x - c is reducible");
    const FieldPtr ctx2 = make_extension(F, 2);
    const Element theta = first_root_in(modpoly, ctx2);
    if (evaluate(embed_poly(g, ctx2), -theta).is_zero())
        throw PoleAtSeedError("seed vanishes at -theta");
    auto [f, h] = singer_fh(ctx2, theta, t);
    const std::size_t n = *g.degree();
    std::vector<Poly> f_pow(n + 1), h_pow(n + 1);
    f_pow[0] = Poly::one(F);
    h_pow[0] = Poly::one(F);
    for (std::size_t i = 1; i <= n; ++i) {
        f_pow[i] = f_pow[i - 1] * f;
        h_pow[i] = h_pow[i - 1] * h;
    }
    Poly raw = Poly::zero(F);
    for (std::size_t i = 0; i <= n; ++i) {
        const Element ci = g.coeff(i);
        if (ci.is_zero()) continue;
        raw = raw + scale(f_pow[i] * h_pow[n - i], ci);
    }
    Poly norm = monic(raw);
    return {std::move(raw), std::move(norm)};
}

enum class TransformKind { general, cohen, mcnay, singer };
enum class FieldLevel { base, quadratic };

inline const char* to_string(TransformKind k) {
    switch (k) {
        case TransformKind::general: return "general";
        case TransformKind::cohen: return "cohen";
        case TransformKind::mcnay: return "mcnay";
        case TransformKind::singer: return "singer";
    }
    return "?";
}

/// A fully resolved transform: which family, over which field, with which
/// matrix. The matrix of the quadratic families is derived from c via the
/// canonically smaller square root (mcnay) or root theta (singer).
class TransformSpec {
  public:
    static TransformSpec general(Mat2 sigma, u64 t) {
        if (t < 2) throw PreconditionViolatedError("power map exponent must be >= 2");
        FieldPtr f = sigma.field();
        return TransformSpec(TransformKind::general, std::move(sigma), t, std::nullopt,
                             std::nullopt, FieldLevel::base, std::move(f));
    }

    /// sigma* = [[1,1],[1,-1]], t = 2, odd q.
    static TransformSpec cohen(const FieldPtr& f) {
        if (f->characteristic() == 2) throw EvenCharacteristicError("R-transform requires odd q");
        Mat2 sigma = Mat2::from_ints(f, 1, 1, 1, -1);
        return TransformSpec(TransformKind::cohen, std::move(sigma), 2, std::nullopt,
                             std::nullopt, FieldLevel::base, f);
    }

    /// sigma = [[lambda, lambda], [-1, 1]] over the quadratic extension,
    /// lambda the canonical square root of the non-square c; t = 2.
    static TransformSpec mcnay(const Element& c) {
        const FieldPtr& F = c.field();
        if (F->characteristic() == 2) throw EvenCharacteristicError("transform requires odd q");
        if (c.is_zero() || is_lth_power(c, 2)) throw NotNonSquareError("c must be a non-square");
        FieldPtr ctx2 = make_extension(F, 2);
        const Poly sq = Poly::from_coeffs(F, {-c, F->zero(), F->one()});  // x^2 - c
        Element lambda = first_root_in(sq, ctx2);
        Mat2 sigma(lambda, lambda, -ctx2->one(), ctx2->one());
        return TransformSpec(TransformKind::mcnay, std::move(sigma), 2, c, lambda,
                             FieldLevel::quadratic, F);
    }

    /// sigma^theta = [[theta, -theta^q], [-1, 1]] over the quadratic
    /// extension, theta the canonical root of irreducible x^2 - x - c.
    static TransformSpec singer(const Element& c, u64 t) {
        if (t < 2) throw PreconditionViolatedError("power map exponent must be >= 2");
        const FieldPtr& F = c.field();
        const Poly modpoly = Poly::from_coeffs(F, {-c, -F->one(), F->one()});
        if (!is_irreducible(modpoly)) throw ReducibleModulusError("x^2 - x - c is reducible");
        FieldPtr ctx2 = make_extension(F, 2);
        Element theta = first_root_in(modpoly, ctx2);
        Element thq = theta.pow(F->order());
        Mat2 sigma(theta, -thq, -ctx2->one(), ctx2->one());
        return TransformSpec(TransformKind::singer, std::move(sigma), t, c, theta,
                             FieldLevel::quadratic, F);
    }

    TransformKind kind() const { return kind_; }
    const Mat2& sigma() const { return sigma_; }
    u64 t() const { return t_; }
    const std::optional<Element>& c() const { return c_; }
    /// lambda (mcnay) or theta (singer).
    const std::optional<Element>& root() const { return root_; }
    FieldLevel field_level() const { return level_; }
    /// The field the chain polynomials live in.
    const FieldPtr& base_field() const { return base_; }
    /// The field the matrix lives in (quadratic extension for mcnay/singer).
    const FieldPtr& sigma_field() const { return sigma_.field(); }

    /// One chain step: apply the family's own formula over the base field.
    TransformOutput apply(const Poly& g) const {
        switch (kind_) {
            case TransformKind::cohen: return cohen_r(g);
            case TransformKind::mcnay: return mcnay_t(g, *c_);
            case TransformKind::singer: return singer_q(g, *c_, t_);
            case TransformKind::general: return r_sigma_t(g, sigma_, t_);
        }
        throw Error("internal: unknown transform kind");
    }

    /// The pole every seed (and iterate) must avoid: sigma . infinity.
    ProjPoint pole() const { return act(sigma_, ProjPoint::infinity()); }

  private:
    TransformSpec(TransformKind k, Mat2 s, u64 t, std::optional<Element> c,
                  std::optional<Element> root, FieldLevel lvl, FieldPtr base)
        : kind_(k), sigma_(std::move(s)), t_(t), c_(std::move(c)), root_(std::move(root)),
          level_(lvl), base_(std::move(base)) {}

    TransformKind kind_;
    Mat2 sigma_;
    u64 t_;
    std::optional<Element> c_;
    std::optional<Element> root_;
    FieldLevel level_;
    FieldPtr base_;
};

}  // namespace irrchain
