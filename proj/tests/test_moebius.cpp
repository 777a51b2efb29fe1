#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "irrchain/irrchain.hpp"
#include "oracles.hpp"

using namespace irrchain;

namespace {

Mat2 sigma_star(const FieldPtr& f) { return Mat2::from_ints(f, 1, 1, 1, -1); }

std::vector<Mat2> all_invertible(const FieldPtr& f) {
    std::vector<Mat2> out;
    const u64 q = static_cast<u64>(f->order());
    for (u64 a = 0; a < q; ++a)
        for (u64 b = 0; b < q; ++b)
            for (u64 c = 0; c < q; ++c)
                for (u64 d = 0; d < q; ++d) {
                    Element ea = f->from_index(a), eb = f->from_index(b), ec = f->from_index(c),
                            ed = f->from_index(d);
                    if ((ea * ed - eb * ec).is_zero()) continue;
                    out.emplace_back(ea, eb, ec, ed);
                }
    return out;
}

std::vector<ProjPoint> all_points(const FieldPtr& f) {
    std::vector<ProjPoint> out;
    for (u128 i = 0; i < f->order(); ++i) out.emplace_back(f->from_index(i));
    out.push_back(ProjPoint::infinity());
    return out;
}

}  // namespace

TEST_CASE("projective action conventions") {
    auto F5 = make_prime_field(5);
    const Mat2 id = Mat2::identity(F5);
    const Mat2 ss = sigma_star(F5);
    for (const ProjPoint& pt : all_points(F5)) REQUIRE(act(id, pt) == pt);
    REQUIRE(act(ss, ProjPoint(F5->one())).is_infinity());  // denominator 1 - 1
    REQUIRE(act(ss, ProjPoint::infinity()) == ProjPoint(F5->one()));  // a/c
    const Mat2 upper = Mat2::from_ints(F5, 2, 1, 0, 1);
    REQUIRE(act(upper, ProjPoint::infinity()).is_infinity());  // c = 0
    REQUIRE_THROWS_AS(Mat2::from_ints(F5, 1, 2, 2, 4), PreconditionViolatedError);
}

TEST_CASE("action is a group action") {
    auto F5 = make_prime_field(5);
    const auto mats = all_invertible(F5);
    const auto pts = all_points(F5);
    for (const Mat2& s : mats)
        for (const Mat2& t : mats) {
            const Mat2 st = s * t;
            for (const ProjPoint& pt : pts) REQUIRE(act(st, pt) == act(s, act(t, pt)));
        }
}

TEST_CASE("action is a group action over F_7") {
    auto F7 = make_prime_field(7);
    const auto mats = all_invertible(F7);
    const auto pts = all_points(F7);
    std::size_t bad = 0;
    // sigma runs the whole group; tau a fixed stride of it (the full product
    // sweep is covered exhaustively over F_5 above)
    for (const Mat2& s : mats)
        for (std::size_t j = 0; j < mats.size(); j += 7) {
            const Mat2& t = mats[j];
            const Mat2 st = s * t;
            for (const ProjPoint& pt : pts) bad += !(act(st, pt) == act(s, act(t, pt)));
        }
    REQUIRE(bad == 0);
}

TEST_CASE("induced polynomial transform") {
    auto F5 = make_prime_field(5);
    const Poly f = Poly::from_ints(F5, {1, 2, 0, 1});
    REQUIRE(p_sigma(Mat2::identity(F5), f) == f);

    // [[0,1],[1,0]] realizes coefficient reversal
    const Mat2 swap = Mat2::from_ints(F5, 0, 1, 1, 0);
    const Poly g = Poly::from_ints(F5, {2, 0, 1, 1});
    REQUIRE(p_sigma(swap, g) == reciprocal(g));

    REQUIRE(p_sigma(sigma_star(F5), Poly::from_ints(F5, {-2, 1})) == Poly::from_ints(F5, {3, 4}));
    REQUIRE_THROWS_AS(p_sigma(swap, Poly::zero(F5)), ZeroPolynomialError);
}

TEST_CASE("degree drops exactly at the pole") {
    for (u64 p : {3, 5}) {
        auto F = make_prime_field(p);
        const auto mats = all_invertible(F);
        for (std::size_t n = 1; n <= 3; ++n) {
            u128 count = 1;
            for (std::size_t i = 0; i < n; ++i) count *= p;
            std::size_t bad = 0;
            for (u128 idx = 0; idx < count; ++idx) {
                const Poly f = Poly::monic_from_index(F, n, idx);
                for (const Mat2& s : mats) {
                    const bool full = *p_sigma(s, f).degree() == n;
                    bad += full == vanishes_at(f, act(s, ProjPoint::infinity()));
                }
            }
            REQUIRE(bad == 0);
        }
    }
}

TEST_CASE("composition law") {
    auto F5 = make_prime_field(5);
    const Mat2 ss = sigma_star(F5);
    const Poly f = Poly::from_ints(F5, {-2, 1});
    REQUIRE(compose_law_check(ss, Mat2::identity(F5), f));
    REQUIRE(compose_law_check(ss, mat_inverse(ss), f));

    // f(sigma . infinity) = 0 violates the hypothesis
    const Poly bad = Poly::from_ints(F5, {-1, 1});  // root at 1 = sigma* . infinity
    REQUIRE_THROWS_AS(compose_law_check(ss, ss, bad), HypothesisViolatedError);

    std::mt19937_64 rng(23);
    auto F7 = make_prime_field(7);
    const auto mats7 = all_invertible(F7);
    int done = 0;
    while (done < 100) {
        const Mat2& s = mats7[rng() % mats7.size()];
        const Mat2& t = mats7[rng() % mats7.size()];
        std::vector<std::int64_t> cs;
        const std::size_t deg = 1 + rng() % 3;
        for (std::size_t i = 0; i < deg; ++i) cs.push_back(static_cast<std::int64_t>(rng() % 7));
        cs.push_back(1);
        const Poly f7 = Poly::from_ints(F7, cs);
        if (vanishes_at(f7, act(s, ProjPoint::infinity()))) continue;
        REQUIRE(compose_law_check(s, t, f7));
        ++done;
    }
}

TEST_CASE("matrix inverse is the true inverse") {
    auto F5 = make_prime_field(5);
    REQUIRE(mat_inverse(Mat2::identity(F5)) == Mat2::identity(F5));
    const Mat2 ss = sigma_star(F5);
    const Mat2 inv = mat_inverse(ss);
    REQUIRE(inv == Mat2::from_ints(F5, 3, 3, 3, 2));
    REQUIRE((ss * inv) == Mat2::identity(F5));
    REQUIRE(inv.det() == ss.det().inv());
}

TEST_CASE("root invariance matrix") {
    auto F5 = make_prime_field(5);
    const Mat2 ss = sigma_star(F5);
    REQUIRE_THROWS_AS(m_sigma_zeta(ss, F5->zero()), ZeroZetaError);

    // zeta = 1 gives det * identity: trivial action
    const Mat2 triv = m_sigma_zeta(ss, F5->one());
    REQUIRE(triv.is_scalar());
    for (const ProjPoint& pt : all_points(F5)) REQUIRE(act(triv, pt) == pt);

    // zeta = -1: proportional to [[0,1],[1,0]], alpha -> 1/alpha
    const Mat2 m = m_sigma_zeta(ss, -F5->one());
    REQUIRE(m == Mat2::from_ints(F5, 0, 2, 2, 0));
    REQUIRE(act(m, ProjPoint(F5->from_int(2))) == ProjPoint(F5->from_int(3)));

    // image order in PGL2 equals the order of zeta
    auto F13 = make_prime_field(13);
    const Mat2 s13 = Mat2::from_ints(F13, 1, 2, 3, 4);
    for (u64 r : {2, 3, 4, 6, 12}) {
        const Element z = root_of_unity(F13, r);
        REQUIRE(pgl_order(m_sigma_zeta(s13, z)) == r);
    }
}

TEST_CASE("orders in PGL2") {
    auto F5 = make_prime_field(5);
    REQUIRE(pgl_order(Mat2::identity(F5)) == 1);
    REQUIRE(pgl_order(Mat2::from_ints(F5, 0, 1, 1, 0)) == 2);
    const Mat2 a3(F5->zero(), F5->one(), F5->from_int(3), F5->one());
    REQUIRE(6 % pgl_order(a3) == 0);

    // A_c has order dividing q+1 whenever x^2 - x - c is irreducible
    for (u64 p : {3, 5, 7, 11, 13}) {
        auto F = make_prime_field(p);
        for (u64 ci = 1; ci < p; ++ci) {
            const Element c = F->from_index(ci);
            const Poly mp = Poly::from_coeffs(F, {-c, -F->one(), F->one()});
            if (!is_irreducible(mp)) continue;
            const Mat2 ac(F->zero(), F->one(), c, F->one());
            REQUIRE((F->order() + 1) % pgl_order(ac) == 0);
        }
    }
}

TEST_CASE("root set invariance") {
    auto F5 = make_prime_field(5);
    const Mat2 swap = Mat2::from_ints(F5, 0, 1, 1, 0);
    const Poly pal = Poly::from_ints(F5, {1, 1, 1});
    REQUIRE(fixes_root_set(pal, Mat2::identity(F5)));
    REQUIRE(fixes_root_set(pal, swap));
    REQUIRE_FALSE(fixes_root_set(Poly::from_ints(F5, {-2, 1}), swap));
    REQUIRE_THROWS_AS(fixes_root_set(Poly::zero(F5), swap), ZeroPolynomialError);
}

TEST_CASE("roots correspond through sigma") {
    // For irreducible g with g(sigma . infinity) != 0 and f = P_sigma(g),
    // every root alpha of f satisfies g(sigma . alpha) = 0.
    auto F5 = make_prime_field(5);
    std::mt19937_64 rng(31);
    const auto mats = all_invertible(F5);
    int done = 0;
    while (done < 25) {
        const std::size_t n = 2 + rng() % 2;
        u128 count = 1;
        for (std::size_t i = 0; i < n; ++i) count *= 5;
        const Poly g = Poly::monic_from_index(F5, n, rng() % count);
        if (!is_irreducible(g)) continue;
        const Mat2& s = mats[rng() % mats.size()];
        if (vanishes_at(g, act(s, ProjPoint::infinity()))) continue;
        const Poly f = monic(p_sigma(s, g));
        REQUIRE(is_irreducible(f));  // also covers the irreducibility transfer
        auto K = make_extension_with_modulus(F5, f);
        std::vector<Element> coords(n, F5->zero());
        coords[1] = F5->one();
        Element alpha = K->from_coords(coords);
        for (std::size_t conj = 0; conj < n; ++conj) {
            const ProjPoint img = act(s, ProjPoint(alpha));
            REQUIRE_FALSE(img.is_infinity());
            REQUIRE(evaluate(g, img.value()).is_zero());
            alpha = alpha.pow(5);
        }
        ++done;
    }
}
