#pragma once

// Chain generation g_0, g_1 = T(g_0), g_2 = T(g_1), ... and verification of
// everything the theory promises about the iterates: exact degree growth,
// irreducibility, root-set invariance under the conjugated roots of unity,
// the structural power-substitution identity, and self-reciprocity for the
// classical R-transform.

#include <chrono>
#include <optional>
#include <vector>

#include "irrchain/errors.hpp"
#include "irrchain/field.hpp"
#include "irrchain/moebius.hpp"
#include "irrchain/poly.hpp"
#include "irrchain/transform.hpp"

namespace irrchain {

enum class VerifyLevel { none, fast, full };

inline const char* to_string(VerifyLevel v) {
    switch (v) {
        case VerifyLevel::none: return "none";
        case VerifyLevel::fast: return "fast";
        case VerifyLevel::full: return "full";
    }
    return "?";
}

struct ChainSpec {
    Poly seed;
    TransformSpec transform;
    std::size_t iterations = 1;
    VerifyLevel verify_level = VerifyLevel::fast;
    std::size_t rabin_degree_cap = 4096;
};

enum class IrrStatus { yes, no, skipped_cap };

inline const char* to_string(IrrStatus s) {
    switch (s) {
        case IrrStatus::yes: return "true";
        case IrrStatus::no: return "false";
        case IrrStatus::skipped_cap: return "skipped-cap";
    }
    return "?";
}

struct InvarianceEntry {
    u64 zeta_order = 0;
    bool primitive = false;  // order is exactly t^m, not merely a divisor
    bool pass = false;
};

struct IterateRecord {
    std::size_t m = 0;
    std::size_t degree = 0;
    u128 expected_degree = 0;
    IrrStatus irreducible = IrrStatus::skipped_cap;
    std::vector<InvarianceEntry> invariance;
    std::optional<bool> self_reciprocal;
    std::optional<bool> structural_identity;
    double wall_ms = 0.0;
};

struct ChainReport {
    std::vector<IterateRecord> iterates;
    bool verified = false;  // true once verify_chain has filled the records

    bool pass() const {
        for (const IterateRecord& r : iterates) {
            if (r.irreducible == IrrStatus::no) return false;
            for (const InvarianceEntry& e : r.invariance)
                if (!e.pass) return false;
            if (r.self_reciprocal && !*r.self_reciprocal) return false;
            if (r.structural_identity && !*r.structural_identity) return false;
        }
        return true;
    }
};

struct ChainResult {
    Poly seed;
    std::vector<Poly> iterates;  // monic g_1 .. g_m
    Poly raw_first;              // exact unnormalized first iterate
    ChainReport report;
};

/// Iterate the transform. Degrees must multiply by t at every step; a drop or
/// a pole hit at m >= 2 contradicts the theory for admissible seeds and is
/// surfaced as a hard error rather than a short chain.
inline ChainResult iterate_chain(const ChainSpec& spec) {
    const TransformSpec& tr = spec.transform;
    if (spec.seed.is_zero() || *spec.seed.degree() < 1)
        throw ZeroPolynomialError("chain seed must have degree >= 1");
    if (!spec.seed.field()->same(*tr.base_field()))
        throw CtxMismatchError("seed is not over the transform's base field");

    ChainResult out;
    out.seed = spec.seed;
    Poly g = spec.seed;
    u128 expected = *spec.seed.degree();
    const FieldPtr& K = tr.sigma_field();
    for (std::size_t m = 1; m <= spec.iterations; ++m) {
        const Poly gk = g.field()->same(*K) ? g : embed_poly(g, K);
        if (vanishes_at(gk, tr.pole())) {
            if (m == 1) throw PoleAtSeedError("seed vanishes at sigma . infinity");
            throw PoleAtIterateError("iterate " + std::to_string(m - 1) +
                                     " hit the pole; counterexample alarm");
        }
        TransformOutput step = tr.apply(g);
        expected *= tr.t();
        const std::size_t deg = step.normalized.degree().value_or(0);
        if (static_cast<u128>(deg) != expected)
            throw DegreeDroppedError("degree dropped at iterate " + std::to_string(m));
        if (m == 1) out.raw_first = step.raw;
        g = step.normalized;
        out.iterates.push_back(g);
        IterateRecord rec;
        rec.m = m;
        rec.degree = deg;
        rec.expected_degree = expected;
        out.report.iterates.push_back(rec);
    }
    return out;
}

/// Primitive t^m-th root-of-unity invariance, checked in the smallest
/// extension of sigma's field containing such a root.
inline bool invariance_extension_check(const Poly& g_m, const Mat2& sigma, u64 t, std::size_t m,
                                       std::size_t dim_budget = 64) {
    u128 r128 = 1;
    for (std::size_t i = 0; i < m; ++i) r128 *= t;
    if (r128 > ~static_cast<u64>(0)) throw BudgetExceededError("t^m exceeds the word budget");
    const u64 r = static_cast<u64>(r128);
    const FieldPtr& K = sigma.field();
    if (r % K->characteristic() == 0)
        throw PreconditionViolatedError("t is divisible by the characteristic");
    std::size_t j = 1;
    u128 qj_mod = K->order() % r;
    u128 acc = qj_mod;
    while (acc != 1 % r) {
        ++j;
        acc = (acc * qj_mod) % r;
        if (j > dim_budget) throw BudgetExceededError("root of unity needs too large a tower");
    }
    if (K->dim() * j > dim_budget)
        throw BudgetExceededError("root of unity needs too large a tower");
    const FieldPtr ctx = j == 1 ? K : make_extension(K, j);
    const Element zeta = root_of_unity(ctx, r);
    const Mat2 mz = m_sigma_zeta(j == 1 ? sigma : sigma.embedded(ctx), zeta);
    return fixes_root_set(embed_poly(g_m, ctx), mz);
}

/// Fill in the verification half of the report: Rabin irreducibility up to
/// the degree cap, root-set invariance for the available roots of unity
/// (prime orders at fast level, a primitive t^m-th root too at full level),
/// the identity P_sigma(g_m) = P_sigma(g_0)(x^(t^m)) up to monic
/// normalization, and self-reciprocity for the cohen family.
inline ChainReport verify_chain(const ChainResult& chain, const ChainSpec& spec) {
    ChainReport report = chain.report;
    if (spec.verify_level == VerifyLevel::none) return report;
    report.verified = true;
    const TransformSpec& tr = spec.transform;
    const FieldPtr& K = tr.sigma_field();
    const u128 qk = K->order();
    const std::vector<u64> t_primes = prime_factors_u64(tr.t());

    const Poly f0 = p_sigma(tr.sigma(), chain.seed);

    for (std::size_t i = 0; i < chain.iterates.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        IterateRecord& rec = report.iterates[i];
        const Poly& gm = chain.iterates[i];
        const std::size_t m = i + 1;

        rec.irreducible = rec.degree <= spec.rabin_degree_cap
                              ? (is_irreducible(gm) ? IrrStatus::yes : IrrStatus::no)
                              : IrrStatus::skipped_cap;

        const Poly gmk = gm.field()->same(*K) ? gm : embed_poly(gm, K);
        u128 tm = 1;
        for (std::size_t s = 0; s < m; ++s) tm *= tr.t();
        for (u64 l : t_primes) {
            if ((qk - 1) % l != 0) continue;
            const Element zeta = root_of_unity(K, l);
            InvarianceEntry e;
            e.zeta_order = l;
            e.primitive = (tm == l);
            e.pass = fixes_root_set(gmk, m_sigma_zeta(tr.sigma(), zeta));
            rec.invariance.push_back(e);
        }
        if (spec.verify_level == VerifyLevel::full && tm > 1) {
            bool already = rec.invariance.size() == 1 && rec.invariance[0].primitive;
            if (!already) {
                InvarianceEntry e;
                e.zeta_order = static_cast<u64>(tm);
                e.primitive = true;
                e.pass = invariance_extension_check(gm, tr.sigma(), tr.t(), m);
                rec.invariance.push_back(e);
            }
        }

        rec.structural_identity =
            monic(p_sigma(tr.sigma(), gmk)) == monic(substitute_power(f0, static_cast<u64>(tm)));

        if (tr.kind() == TransformKind::cohen) rec.self_reciprocal = monic(reciprocal(gm)) == gm;

        const auto t1 = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    return report;
}

}  // namespace irrchain
