#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "irrchain/irrchain.hpp"
#include "oracles.hpp"

using namespace irrchain;

TEST_CASE("polynomial arithmetic basics") {
    auto F5 = make_prime_field(5);
    const Poly a = Poly::from_ints(F5, {-1, 0, 1});  // x^2 - 1
    const Poly b = Poly::from_ints(F5, {-1, 1});     // x - 1
    REQUIRE(gcd(a, b) == b);                         // monic already
    REQUIRE(gcd(a, b).is_monic());

    const auto [q, r] = divrem(Poly::from_ints(F5, {0, 0, 0, 1}), Poly::from_ints(F5, {0, 0, 1}));
    REQUIRE(q == Poly::x(F5));
    REQUIRE(r.is_zero());
    REQUIRE_THROWS_AS(divrem(a, Poly::zero(F5)), DivisionByZeroError);

    auto F3 = make_prime_field(3);
    REQUIRE(Poly::from_ints(F3, {1, 1}) * Poly::from_ints(F3, {2, 1}) ==
            Poly::from_ints(F3, {2, 0, 1}));  // (x+1)(x+2) = x^2 + 2
}

TEST_CASE("zero polynomial degree is distinguished") {
    auto F5 = make_prime_field(5);
    REQUIRE_FALSE(Poly::zero(F5).degree().has_value());
    REQUIRE(Poly::one(F5).degree() == std::size_t{0});
    REQUIRE(Poly::from_ints(F5, {0, 0}).is_zero());
}

TEST_CASE("evaluation") {
    auto F5 = make_prime_field(5);
    REQUIRE(evaluate(Poly::from_ints(F5, {1, 1, 1}), F5->one()) == F5->from_int(3));
    REQUIRE(evaluate(Poly::from_ints(F5, {-2, 1}), F5->one()) == F5->from_int(4));

    // evaluation at a root in the extension
    auto F3 = make_prime_field(3);
    auto F9 = make_extension(F3, 2);
    const Poly g = Poly::from_ints(F3, {1, 0, 1});
    const Element y = F9->from_coords({F3->zero(), F3->one()});
    REQUIRE(evaluate(g, y).is_zero());
}

TEST_CASE("power substitution") {
    auto F3 = make_prime_field(3);
    const Poly f = Poly::from_ints(F3, {1, 0, 1});
    REQUIRE(substitute_power(f, 1) == f);
    REQUIRE(substitute_power(f, 2) == Poly::from_ints(F3, {1, 0, 0, 0, 1}));
    auto F7 = make_prime_field(7);
    REQUIRE(substitute_power(Poly::from_ints(F7, {2, 1}), 3) == Poly::from_ints(F7, {2, 0, 0, 1}));

    // S_t then S_u equals S_{tu}
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::int64_t> cs;
        for (int i = 0; i < 4; ++i) cs.push_back(static_cast<std::int64_t>(rng() % 7));
        cs.push_back(1);
        const Poly p = Poly::from_ints(F7, cs);
        const u64 t = 1 + rng() % 3, u = 1 + rng() % 3;
        REQUIRE(substitute_power(substitute_power(p, t), u) == substitute_power(p, t * u));
    }
}

TEST_CASE("reciprocal") {
    auto F5 = make_prime_field(5);
    const Poly pal = Poly::from_ints(F5, {1, 1, 1});
    REQUIRE(reciprocal(pal) == pal);
    REQUIRE(reciprocal(Poly::from_ints(F5, {-2, 1})) == Poly::from_ints(F5, {1, 3}));
    REQUIRE_THROWS_AS(reciprocal(Poly::zero(F5)), ZeroPolynomialError);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::int64_t> cs{1 + static_cast<std::int64_t>(rng() % 4)};
        for (int i = 0; i < 3; ++i) cs.push_back(static_cast<std::int64_t>(rng() % 5));
        cs.push_back(1);
        const Poly f = Poly::from_ints(F5, cs);
        REQUIRE(reciprocal(reciprocal(f)) == f);  // f(0) != 0
        std::vector<std::int64_t> ds{1 + static_cast<std::int64_t>(rng() % 4),
                                     static_cast<std::int64_t>(rng() % 5), 1};
        const Poly g = Poly::from_ints(F5, ds);
        REQUIRE(reciprocal(f * g) == reciprocal(f) * reciprocal(g));
    }
}

TEST_CASE("monic normalization") {
    auto F5 = make_prime_field(5);
    REQUIRE(monic(Poly::from_ints(F5, {3, 3, 3})) == Poly::from_ints(F5, {1, 1, 1}));
    REQUIRE(monic(Poly::from_ints(F5, {1, 1})) == Poly::from_ints(F5, {1, 1}));
    REQUIRE(monic(Poly::from_ints(F5, {4})) == Poly::one(F5));
    REQUIRE_THROWS_AS(monic(Poly::zero(F5)), ZeroPolynomialError);
}

TEST_CASE("frobenius powmod") {
    auto F3 = make_prime_field(3);
    const Poly f = Poly::from_ints(F3, {1, 0, 1});  // x^2 + 1
    REQUIRE(frobenius_powmod(f, 1) == Poly::from_ints(F3, {0, 2}));  // x^3 = -x
    REQUIRE(frobenius_powmod(f, 2) == Poly::x(F3));                  // Frobenius order 2
}

TEST_CASE("irreducibility witnesses") {
    auto F3 = make_prime_field(3);
    REQUIRE(is_irreducible(Poly::from_ints(F3, {1, 0, 1})));
    REQUIRE_FALSE(is_irreducible(Poly::from_ints(F3, {1, 0, 0, 0, 1})));
    // x^4 + 1 = (x^2+x+2)(x^2+2x+2) over F_3
    REQUIRE(Poly::from_ints(F3, {2, 1, 1}) * Poly::from_ints(F3, {2, 2, 1}) ==
            Poly::from_ints(F3, {1, 0, 0, 0, 1}));
    auto F5 = make_prime_field(5);
    REQUIRE(is_irreducible(Poly::from_ints(F5, {1, 1, 1})));
    // constant multiples do not change the verdict
    REQUIRE(is_irreducible(Poly::from_ints(F5, {3, 3, 3})));
}

TEST_CASE("Rabin agrees with brute-force trial division") {
    for (u64 p : {2, 3, 5}) {
        auto F = make_prime_field(p);
        for (std::size_t n = 1; n <= 6; ++n) {
            u128 count = 1;
            for (std::size_t i = 0; i < n; ++i) count *= p;
            std::size_t disagreements = 0;
            for (u128 idx = 0; idx < count; ++idx) {
                const Poly f = Poly::monic_from_index(F, n, idx);
                disagreements += is_irreducible(f) != oracle::brute_force_irreducible(f);
            }
            REQUIRE(disagreements == 0);
        }
    }
}

TEST_CASE("Rabin over extension coefficients") {
    auto F9 = make_extension(make_prime_field(3), 2);
    u64 irr2 = 0;
    for (u128 idx = 0; idx < 81; ++idx) {
        const Poly f = Poly::monic_from_index(F9, 2, idx);
        const bool irr = is_irreducible(f);
        REQUIRE(irr == oracle::brute_force_irreducible(f));
        irr2 += irr;
    }
    REQUIRE(irr2 == (81 - 9) / 2);  // classical count of monic irreducible quadratics
}

TEST_CASE("enumerate irreducibles") {
    auto F3 = make_prime_field(3);
    auto all3 = enumerate_irreducibles(F3, 2, nullptr, static_cast<std::size_t>(-1));
    REQUIRE(all3.size() == 3);
    REQUIRE(poly_to_string(all3[0]) == "3;1,0,1");
    REQUIRE(poly_to_string(all3[1]) == "3;2,1,1");
    REQUIRE(poly_to_string(all3[2]) == "3;2,2,1");

    auto F2 = make_prime_field(2);
    auto all2 = enumerate_irreducibles(F2, 3, nullptr, static_cast<std::size_t>(-1));
    REQUIRE(all2.size() == 2);
    REQUIRE(poly_to_string(all2[0]) == "2;1,1,0,1");
    REQUIRE(poly_to_string(all2[1]) == "2;1,0,1,1");

    auto F5 = make_prime_field(5);
    auto picky = enumerate_irreducibles(
        F5, 1,
        [&](const Poly& g) {
            const Element v = evaluate(g, F5->one()) * evaluate(g, -F5->one());
            return !v.is_zero() && !is_lth_power(v, 2);
        },
        static_cast<std::size_t>(-1));
    REQUIRE(picky.size() == 2);
    REQUIRE(poly_to_string(picky[0]) == "5;2,1");  // x - 3 (canonical order)
    REQUIRE(poly_to_string(picky[1]) == "5;3,1");  // x - 2
}

TEST_CASE("exponent of an irreducible polynomial") {
    auto F3 = make_prime_field(3);
    REQUIRE(exponent_of(Poly::from_ints(F3, {1, 0, 1})) == 4);
    auto F5 = make_prime_field(5);
    REQUIRE(exponent_of(Poly::from_ints(F5, {-1, 1})) == 1);
    REQUIRE(exponent_of(Poly::from_ints(F5, {-2, 1})) == 4);
    REQUIRE_THROWS_AS(exponent_of(Poly::x(F5)), PreconditionViolatedError);

    // e | q^n - 1; x^e = 1 and x^(e/l) != 1 (checked via frobenius-free powmod)
    for (u128 idx = 0; idx < 125; ++idx) {
        const Poly f = Poly::monic_from_index(F5, 3, idx);
        if (!is_irreducible(f) || f.coeff(0).is_zero()) continue;
        const u128 e = exponent_of(f);
        const u128 group = 124;
        REQUIRE(group % e == 0);
        auto K = make_extension_with_modulus(F5, f);
        const Element xbar = K->from_coords({F5->zero(), F5->one(), F5->zero()});
        REQUIRE(xbar.pow(e).is_one());
        for (u64 l : prime_factors_u64(static_cast<u64>(e)))
            REQUIRE_FALSE(xbar.pow(e / l).is_one());
    }
}

TEST_CASE("split over the quadratic extension") {
    auto F7 = make_prime_field(7);
    auto F49 = make_extension(F7, 2);
    const Poly g = Poly::from_ints(F7, {3, 2, 1});  // x^2 + 2x + 3
    REQUIRE(is_irreducible(g));
    const auto [r, s] = split_over_quadratic(g, F49);
    REQUIRE(r * s == embed_poly(g, F49));
    REQUIRE(*r.degree() == 1);
    REQUIRE(is_irreducible(r));
    REQUIRE(is_irreducible(s));
    REQUIRE(r < s);
    // s is the coefficient-wise 7th power of r
    std::vector<Element> conj;
    for (const Element& c : r.coeffs()) conj.push_back(c.pow(7));
    REQUIRE(Poly::from_coeffs(F49, conj) == s);

    // closed form for x^2 + 2x + c: the factors are x + 1 -+ sqrt(1-c)
    const Element sq = F49->one() - r.coeff(0);  // candidate sqrt(1-c)
    REQUIRE(sq * sq == embed(F7->one() - F7->from_int(3), F49));
    REQUIRE(s.coeff(0) == F49->one() + sq);

    REQUIRE_THROWS_AS(split_over_quadratic(Poly::from_ints(F7, {3, 1}), F49),
                      PreconditionViolatedError);
    REQUIRE_THROWS_AS(split_over_quadratic(Poly::from_ints(F7, {2, 3, 1}), F49),
                      PreconditionViolatedError);  // (x+1)(x+2): reducible
    auto F2 = make_prime_field(2);
    REQUIRE_THROWS_AS(
        split_over_quadratic(Poly::from_ints(F2, {1, 1, 1}), make_extension(F2, 2)),
        EvenCharacteristicError);
}

TEST_CASE("split across random even-degree inputs") {
    std::mt19937_64 rng(19);
    for (u64 p : {3, 5, 7}) {
        auto F = make_prime_field(p);
        auto K2 = make_extension(F, 2);
        for (std::size_t n : {2, 4}) {
            auto cands = enumerate_irreducibles(F, n, nullptr, static_cast<std::size_t>(-1));
            for (int trial = 0; trial < 5 && !cands.empty(); ++trial) {
                const Poly& g = cands[rng() % cands.size()];
                const auto [r, s] = split_over_quadratic(g, K2);
                REQUIRE(r * s == embed_poly(g, K2));
                REQUIRE(*r.degree() == n / 2);
                REQUIRE(is_irreducible(r));
                REQUIRE(is_irreducible(s));
            }
        }
    }
}

TEST_CASE("explicit-modulus extensions validate their input") {
    auto F5 = make_prime_field(5);
    REQUIRE_THROWS_AS(make_extension_with_modulus(F5, Poly::from_ints(F5, {4, 0, 1})),
                      ReducibleModulusError);  // x^2 + 4 = (x-1)(x+1)
    auto K = make_extension_with_modulus(F5, Poly::from_ints(F5, {2, 0, 1}));
    REQUIRE(K->order() == 25);
}
