#pragma once

// Checkable predicates for the hypotheses of each chain-irreducibility
// criterion. All verdicts except the substitution criterion are sufficient
// conditions: a failing verdict never means the chain must break.

#include <string>
#include <vector>

#include "irrchain/errors.hpp"
#include "irrchain/field.hpp"
#include "irrchain/moebius.hpp"
#include "irrchain/poly.hpp"
#include "irrchain/transform.hpp"

namespace irrchain {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    std::string detail;
    bool required = true;
};

struct Verdict {
    std::string theorem;
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string detail = "", bool required = true) {
        checks.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail,
                          std::move(detail), required});
    }
    void skip(std::string name, std::string detail, bool required = true) {
        checks.push_back({std::move(name), CheckStatus::skipped, std::move(detail), required});
    }
    /// Every non-skipped check passed and no required check was skipped.
    bool pass() const {
        for (const Check& c : checks) {
            if (c.status == CheckStatus::fail) return false;
            if (c.status == CheckStatus::skipped && c.required) return false;
        }
        return true;
    }
};

namespace detail {

inline void require_monic_irreducible(const Poly& g) {
    if (g.is_zero() || *g.degree() < 1 || !g.is_monic() || !is_irreducible(g))
        throw PreconditionViolatedError("seed must be monic irreducible of degree >= 1");
}

inline std::string join_u64(const std::vector<u64>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace detail

/// Exact criterion for irreducibility of f(x^t): with e the order of any root
/// of f, requires gcd(t, (q^n-1)/e) = 1, every prime factor of t dividing e,
/// and 4 | q^n - 1 whenever 4 | t. This one is an equivalence, not just a
/// sufficient condition.
inline Verdict menezes_criterion(const Poly& f, u64 t) {
    detail::require_monic_irreducible(f);
    if (f.coeff(0).is_zero()) throw PreconditionViolatedError("f must differ from x");
    if (t < 1) throw PreconditionViolatedError("t must be >= 1");
    Verdict v;
    v.theorem = "menezes-substitution";
    const u128 e = exponent_of(f);  // FactorizationBudgetExceededError propagates
    const std::size_t n = *f.degree();
    const u128 group = checked_pow_u128(f.field()->order(), static_cast<unsigned>(n)) - 1;
    const u128 cofactor = group / e;
    v.add("gcd-with-cofactor", gcd_u128(t, cofactor) == 1,
          "e=" + to_string_u128(e) + " cofactor=" + to_string_u128(cofactor));
    const auto pf = prime_factors_u64(t);
    bool divide = true;
    for (u64 l : pf) divide = divide && (e % l == 0);
    v.add("prime-factors-divide-exponent", divide, "t primes: " + detail::join_u64(pf));
    v.add("four-divides-group-order", (t % 4 != 0) || (group % 4 == 0),
          "q^n-1=" + to_string_u128(group));
    return v;
}

/// Hypotheses of the general chain criterion over F_q: every prime factor of
/// t divides q-1; the seed avoids the pole; the parity clause for
/// q = 3 mod 4 with even t; and eta(g; sigma) escapes every l-th power class
/// for primes l | t. A passing verdict guarantees the whole iterated chain is
/// irreducible (sufficient only).
inline Verdict main_theorem_check(const Poly& g, const Mat2& sigma, u64 t) {
    detail::require_monic_irreducible(g);
    if (!sigma.field()->same(*g.field()))
        throw CtxMismatchError("sigma must be over the seed's field");
    Verdict v;
    v.theorem = "moebius-power-chain";
    const u128 q = g.field()->order();
    const std::size_t n = *g.degree();

    const auto pf = prime_factors_u64(t);
    bool tdiv = t >= 2;
    for (u64 l : pf) tdiv = tdiv && ((q - 1) % l == 0);
    v.add("t-prime-factors-divide-q-1", tdiv,
          "t=" + std::to_string(t) + " primes: " + detail::join_u64(pf));

    const bool pole_ok = !vanishes_at(g, act(sigma, ProjPoint::infinity()));
    v.add("seed-avoids-pole", pole_ok);

    if (q % 4 == 3 && t % 2 == 0)
        v.add("parity-clause", n % 2 == 0, "q = 3 mod 4 and t even: need even degree");
    else
        v.add("parity-clause", true, "not applicable");

    if (!pole_ok) {
        v.skip("eta-power-residue", "eta undefined at the pole");
        return v;
    }
    const Element h = eta(g, sigma);
    for (u64 l : pf) {
        bool ok;
        std::string detail_str;
        if (h.is_zero()) {
            ok = false;
            detail_str = "eta = 0";
        } else if ((q - 1) % l != 0) {
            ok = false;
            detail_str = "l does not divide q-1";
        } else {
            ok = !is_lth_power(h, l);
            detail_str = ok ? "eta is not an l-th power" : "eta is an l-th power";
        }
        v.add("eta-power-residue-l" + std::to_string(l), ok, detail_str);
    }
    return v;
}

/// Hypotheses of the chain criterion for a transform defined over F_q via a
/// matrix in the quadratic extension. For even-degree seeds the power-residue
/// condition moves to the canonical conjugate factor r of g over F_{q^2}, and
/// the verdict records whether the conclusion covers F_q or only the factor
/// chain over F_{q^2}.
inline Verdict quadratic_check(const Poly& g, const Mat2& sigma, u64 t) {
    detail::require_monic_irreducible(g);
    const FieldPtr& F = g.field();
    const FieldPtr& K = sigma.field();
    if (K->is_prime_field() || !K->base()->same(*F) || K->extension_degree() != 2)
        throw CtxMismatchError("sigma must be over the quadratic extension of the seed field");
    Verdict v;
    v.theorem = "quadratic-descent-chain";
    const u128 q2 = K->order();
    const std::size_t n = *g.degree();

    const auto pf = prime_factors_u64(t);
    bool tdiv = t >= 2;
    for (u64 l : pf) tdiv = tdiv && ((q2 - 1) % l == 0);
    v.add("t-prime-factors-divide-q2-1", tdiv,
          "t=" + std::to_string(t) + " primes: " + detail::join_u64(pf));

    const Poly gk = embed_poly(g, K);
    const bool pole_ok = !vanishes_at(gk, act(sigma, ProjPoint::infinity()));
    v.add("seed-avoids-pole", pole_ok);

    const bool full = (n % 2 == 1) || ((n * t) % 4 == 0);
    v.add("guarantee-level", true,
          full ? "chain irreducible over the base field"
               : "factor chain irreducible over the quadratic extension only",
          false);

    if (!pole_ok) {
        v.skip("eta-power-residue", "eta undefined at the pole");
        return v;
    }
    const Poly target = (n % 2 == 1) ? gk : split_over_quadratic(g, K).first;
    const Element h = eta(target, sigma);
    for (u64 l : pf) {
        bool ok;
        std::string detail_str = (n % 2 == 1) ? "tested on g" : "tested on the factor r";
        if (h.is_zero()) {
            ok = false;
            detail_str += "; eta = 0";
        } else if ((q2 - 1) % l != 0) {
            ok = false;
            detail_str += "; l does not divide q^2-1";
        } else {
            ok = !is_lth_power(h, l);
        }
        v.add("eta-power-residue-l" + std::to_string(l), ok, detail_str);
    }
    return v;
}

/// McNay chain hypothesis: g(lambda) g(-lambda) (odd degree) or
/// r(lambda) r(-lambda) (even degree, canonical factor r) must not be a
/// square in the quadratic extension.
inline Verdict mcnay_check(const Poly& g, const Element& c) {
    detail::require_monic_irreducible(g);
    const FieldPtr& F = g.field();
    if (!c.field()->same(*F)) throw CtxMismatchError("c must lie in the seed's field");
    if (F->characteristic() == 2) throw EvenCharacteristicError("transform requires odd q");
    if (c.is_zero() || is_lth_power(c, 2)) throw NotNonSquareError("c must be a non-square");
    Verdict v;
    v.theorem = "mcnay-chain";
    const TransformSpec spec = TransformSpec::mcnay(c);
    const FieldPtr& K = spec.sigma_field();
    const Element lambda = *spec.root();
    const std::size_t n = *g.degree();

    const Poly gk = embed_poly(g, K);
    const bool pole_ok = !evaluate(gk, -lambda).is_zero();
    v.add("seed-avoids-pole", pole_ok, "pole at -lambda");
    if (!pole_ok) {
        v.skip("non-square-product", "product undefined at the pole");
        return v;
    }

    const Poly target = (n % 2 == 1) ? gk : split_over_quadratic(g, K).first;
    const Element prod = evaluate(target, lambda) * evaluate(target, -lambda);
    bool ok;
    std::string detail_str = (n % 2 == 1) ? "g(lambda) g(-lambda)" : "r(lambda) r(-lambda)";
    if (prod.is_zero()) {
        ok = false;
        detail_str += " = 0";
    } else {
        ok = !is_lth_power(prod, 2);
        detail_str += ok ? " is a non-square" : " is a square";
    }
    v.add("non-square-product", ok, detail_str);
    return v;
}

/// Singer chain hypothesis: prime factors of t divide q^2-1 and
/// g(-theta^q)/g(-theta) (odd degree) or the same ratio on the canonical
/// factor r (even degree) is not an l-th power in the quadratic extension.
/// The verdict also records D, the order of [[0,1],[c,1]] in PGL2(F_q);
/// t = D is always admissible because D | q+1 | q^2-1.
inline Verdict singer_check(const Poly& g, const Element& c, u64 t) {
    detail::require_monic_irreducible(g);
    const FieldPtr& F = g.field();
    if (!c.field()->same(*F)) throw CtxMismatchError("c must lie in the seed's field");
    const TransformSpec spec = TransformSpec::singer(c, t);  // ReducibleModulusError if bad c
    const FieldPtr& K = spec.sigma_field();
    const Element theta = *spec.root();
    const Element thq = theta.pow(F->order());
    const std::size_t n = *g.degree();

    const Poly gk = embed_poly(g, K);
    if (evaluate(gk, -theta).is_zero()) throw PoleAtSeedError("seed vanishes at -theta");

    Verdict v;
    v.theorem = "singer-chain";
    const u128 q2 = K->order();
    const auto pf = prime_factors_u64(t);
    bool tdiv = t >= 2;
    for (u64 l : pf) tdiv = tdiv && ((q2 - 1) % l == 0);
    v.add("t-prime-factors-divide-q2-1", tdiv,
          "t=" + std::to_string(t) + " primes: " + detail::join_u64(pf));

    const bool full = (n % 2 == 1) || ((n * t) % 4 == 0);
    v.add("guarantee-level", true,
          full ? "chain irreducible over the base field"
               : "factor chain irreducible over the quadratic extension only",
          false);

    const Mat2 a_c(F->zero(), F->one(), c, F->one());
    const u128 D = pgl_order(a_c);
    v.add("pgl-order", (F->order() + 1) % D == 0,
          "D=" + to_string_u128(D) + ", D | q+1, so t=D is always admissible", false);

    const Poly target = (n % 2 == 1) ? gk : split_over_quadratic(g, K).first;
    const Element denom = evaluate(target, -theta);
    const Element numer = evaluate(target, -thq);
    for (u64 l : pf) {
        bool ok;
        std::string detail_str = (n % 2 == 1) ? "g(-theta^q)/g(-theta)" : "r(-theta^q)/r(-theta)";
        if (denom.is_zero() || numer.is_zero()) {
            ok = false;
            detail_str += " vanishes";
        } else if ((q2 - 1) % l != 0) {
            ok = false;
            detail_str += "; l does not divide q^2-1";
        } else {
            ok = !is_lth_power(numer / denom, l);
            detail_str += ok ? " is not an l-th power" : " is an l-th power";
        }
        v.add("eta-power-residue-l" + std::to_string(l), ok, detail_str);
    }
    return v;
}

/// The verdict the given transform family attaches to a seed.
inline Verdict check_for(const TransformSpec& spec, const Poly& g) {
    switch (spec.kind()) {
        case TransformKind::cohen:
        case TransformKind::general:
            return main_theorem_check(g, spec.sigma(), spec.t());
        case TransformKind::mcnay:
            return mcnay_check(g, *spec.c());
        case TransformKind::singer:
            return singer_check(g, *spec.c(), spec.t());
    }
    throw Error("internal: unknown transform kind");
}

/// Monic irreducible degree-n seeds whose verdict passes, in canonical order.
inline std::vector<std::pair<Poly, Verdict>> search_seeds(
    const FieldPtr& ctx, const TransformSpec& spec, std::size_t n,
    std::size_t limit = static_cast<std::size_t>(-1), const EnumOptions& opt = {}) {
    if (!ctx->same(*spec.base_field()))
        throw CtxMismatchError("search field differs from the transform's base field");
    auto admissible = [&](const Poly& g) {
        try {
            return check_for(spec, g).pass();
        } catch (const PoleAtSeedError&) {
            return false;  // seed sits on the pole: not admissible
        }
    };
    std::vector<std::pair<Poly, Verdict>> out;
    for (const Poly& g : enumerate_irreducibles(ctx, n, admissible, limit, opt))
        out.emplace_back(g, check_for(spec, g));
    return out;
}

}  // namespace irrchain
