/**
 * @file zarith.hpp
 * @brief Exact machine-integer helpers: overflow-safe modular arithmetic,
 *        primality, factorization, divisors, lcm with overflow checks.
 *
 * Everything here works on uint64_t values (the library caps field sizes at
 * 2^64 elements, so group orders and orbit lengths fit). Intermediate
 * products use unsigned __int128.
 */
#ifndef PFSS_ZARITH_HPP
#define PFSS_ZARITH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace pfss {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// (a * b) mod m without overflow.
inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128(a) * b) % m); }

/// (a ^ e) mod m without overflow.
inline u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

/// (a + b) mod m for u128 operands already reduced mod m.
inline u128 addmod_u128(u128 a, u128 b, u128 m) { return a >= m - b ? a - (m - b) : a + b; }

/// (a * b) mod m for u128 operands (double-and-add; no 256-bit intermediate).
inline u128 mulmod_u128(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    u128 r = 0;
    while (b) {
        if (b & 1) r = addmod_u128(r, a, m);
        a = addmod_u128(a, a, m);
        b >>= 1;
    }
    return r;
}

/// (a ^ e) mod m for u128 modulus.
inline u128 powmod_u128(u128 a, u64 e, u128 m) {
    if (m == 1) return 0;
    u128 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u128(r, a, m);
        a = mulmod_u128(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Modular inverse of a mod m (gcd(a, m) must be 1).
inline u64 inv_mod_u64(u64 a, u64 m) {
    if (m == 1) return 0;
    using i128 = __int128;
    i128 r0 = m, r1 = a % m, t0 = 0, t1 = 1;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        i128 t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) raise(ErrorKind::BadRange, "modular inverse of a non-unit");
    i128 t = t0 % i128(m);
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

/// a^e as u128, raising BadRange if the true value exceeds the u128 limit.
inline u128 pow_u128_checked(u64 a, u32 e) {
    u128 r = 1;
    for (u32 i = 0; i < e; ++i) {
        if (a != 0 && r > ~u128(0) / a) raise(ErrorKind::BadRange, "integer power overflows 128 bits");
        r *= a;
    }
    return r;
}

/// a*b raising BadRange on 128-bit overflow.
inline u128 mul_u128_checked(u128 a, u128 b) {
    if (b != 0 && a > ~u128(0) / b) raise(ErrorKind::BadRange, "integer product overflows 128 bits");
    return a * b;
}

/// lcm(a, b) raising BadRange on 64-bit overflow.
inline u64 lcm_checked(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    u64 g = std::gcd(a, b);
    u128 l = u128(a / g) * b;
    if (l > ~u64(0)) raise(ErrorKind::BadRange, "lcm overflows 64 bits");
    return static_cast<u64>(l);
}

/// Deterministic Miller–Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses decide primality for every n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

/// Pollard–Brent rho; returns a nontrivial factor of composite odd n > 3.
inline u64 pollard_brent(u64 n, u64 seed) {
    if ((n & 1) == 0) return 2;
    u64 c = seed % (n - 1) + 1;
    while (true) {
        u64 x = 2, y = 2, d = 1;
        u64 q = 1;
        u64 ys = y;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && d == 1; k += m) {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (d != n) return d;
        ++c; // rare cycle degeneracy: retry with the next polynomial
    }
}

} // namespace detail

/// Prime factorization of n >= 1 as {prime -> exponent} (empty map for n == 1).
inline std::map<u64, u32> factor_u64(u64 n) {
    std::map<u64, u32> out;
    if (n <= 1) return out;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull, 41ull, 43ull}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    std::vector<u64> stack{n};
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            ++out[m];
            continue;
        }
        u64 d = detail::pollard_brent(m, 1);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return out;
}

/// All positive divisors of n, sorted ascending.
inline std::vector<u64> divisors_u64(u64 n) {
    std::vector<u64> divs{1};
    for (const auto& [p, e] : factor_u64(n)) {
        size_t sz = divs.size();
        u64 pk = 1;
        for (u32 k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// Largest e with p^e | n, plus the cofactor n / p^e.
inline std::pair<u32, u64> split_prime_power(u64 n, u64 p) {
    u32 e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return {e, n};
}

} // namespace pfss

#endif // PFSS_ZARITH_HPP
