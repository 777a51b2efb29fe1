#pragma once

// Word-level number theory: 128-bit exponent arithmetic, deterministic
// primality, and integer factorization with an explicit work budget.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "irrchain/errors.hpp"

namespace irrchain {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

inline u128 parse_u128(const std::string& s, std::size_t pos_offset = 0) {
    if (s.empty()) throw ParseError("expected integer", pos_offset);
    u128 v = 0;
    const u128 limit = (~static_cast<u128>(0)) / 10;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw ParseError("invalid digit in integer", pos_offset + i);
        if (v > limit) throw ParseError("integer too large", pos_offset + i);
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}

inline u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b != 0) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// (a * b) mod m for 128-bit operands, via shift-and-add so the product
// never needs more than 128 bits of intermediate.
inline u128 mulmod_u128(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    u128 r = 0;
    while (b > 0) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a += a;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

inline u128 powmod_u128(u128 a, u128 e, u128 m) {
    u128 r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u128(r, a, m);
        a = mulmod_u128(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin. The base set covers all n < 3.3 * 10^24,
// far beyond the 127-bit orders used here.
inline bool is_prime_u128(u128 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u128 x = powmod_u128(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u128(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline bool is_prime_u64(u64 n) { return is_prime_u128(n); }

namespace detail {

inline u128 pollard_rho(u128 n, u64 c, u64 iteration_cap) {
    u128 x = 2, y = 2, d = 1;
    u64 steps = 0;
    while (d == 1) {
        if (++steps > iteration_cap) return 0;
        x = (mulmod_u128(x, x, n) + c) % n;
        y = (mulmod_u128(y, y, n) + c) % n;
        y = (mulmod_u128(y, y, n) + c) % n;
        d = gcd_u128(x > y ? x - y : y - x, n);
    }
    return d == n ? 0 : d;
}

}  // namespace detail

// Prime factorization of n, returned as sorted distinct (prime, multiplicity)
// pairs. Trial division to 10^6, then Pollard rho with an iteration cap;
// throws FactorizationBudgetExceededError when the cap is hit.
inline std::vector<std::pair<u128, unsigned>> factorize(u128 n, u64 rho_cap = 4'000'000) {
    std::vector<u128> primes;
    std::vector<u128> stack;
    const u64 trial_bound = 1'000'000;
    for (u64 p = 2; p <= trial_bound && static_cast<u128>(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        u128 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u128(m)) {
            primes.push_back(m);
            continue;
        }
        u128 d = 0;
        for (u64 c = 1; c <= 40 && d == 0; ++c) d = detail::pollard_rho(m, c, rho_cap);
        if (d == 0)
            throw FactorizationBudgetExceededError("factorization budget exceeded for " +
                                                   to_string_u128(m));
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u128, unsigned>> out;
    for (u128 p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1u);
    }
    return out;
}

inline std::vector<u64> prime_factors_u64(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// base^exp with overflow detection against the 127-bit budget.
inline u128 checked_pow_u128(u128 base, unsigned exp) {
    const u128 cap = static_cast<u128>(1) << 127;
    u128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > (cap - 1) / base)
            throw OrderOverflowError("order exceeds the 127-bit budget");
        r *= base;
        if (r >= cap) throw OrderOverflowError("order exceeds the 127-bit budget");
    }
    return r;
}

}  // namespace irrchain
