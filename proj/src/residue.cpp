#include "fhs/residue.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fhs/errors.hpp"

namespace fhs {

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

i64 least_prime_factor(i64 n) {
    if (n < 2) raise(Errc::precondition_violated, "least_prime_factor requires n >= 2");
    if (n % 2 == 0) return 2;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return d;
    return n;
}

std::vector<std::pair<i64, i64>> factorize(i64 n) {
    if (n < 1) raise(Errc::precondition_violated, "factorize requires n >= 1");
    std::vector<std::pair<i64, i64>> out;
    for (i64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        i64 e = 0;
        while (n % d == 0) { n /= d; ++e; }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime_power(i64 n, i64* p_out, i64* k_out) {
    if (n < 2) return false;
    auto f = factorize(n);
    if (f.size() != 1) return false;
    if (p_out) *p_out = f[0].first;
    if (k_out) *k_out = f[0].second;
    return true;
}

i64 power_checked(i64 base, i64 exp) {
    __int128 acc = 1;
    for (i64 i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > (static_cast<__int128>(1) << 62))
            raise(Errc::range_exceeded, "power " + std::to_string(base) + "^" + std::to_string(exp) +
                                            " exceeds machine range");
    }
    return static_cast<i64>(acc);
}

i64 mod_pow(i64 base, i64 exp, i64 mod) {
    __int128 acc = 1, b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<i64>(acc);
}

i64 mod_inverse(i64 a, i64 mod) {
    i64 t = 0, new_t = 1, r = mod, new_r = ((a % mod) + mod) % mod;
    while (new_r != 0) {
        i64 q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) raise(Errc::not_coprime, "no inverse of " + std::to_string(a) + " mod " + std::to_string(mod));
    return ((t % mod) + mod) % mod;
}

i64 euler_phi(i64 n) {
    i64 phi = 1;
    for (auto [p, e] : factorize(n)) phi *= power_checked(p, e - 1) * (p - 1);
    return phi;
}

i64 primitive_root(i64 q) {
    i64 p = 0, k = 0;
    if (!is_prime_power(q, &p, &k) || p == 2)
        raise(Errc::precondition_violated, "primitive_root requires an odd prime power");
    // find the smallest generator mod p, then lift to p^k
    i64 g = 0;
    auto fac = factorize(p - 1);
    for (i64 cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (auto [r, e] : fac)
            if (mod_pow(cand, (p - 1) / r, p) == 1) { ok = false; break; }
        if (ok) { g = cand; break; }
    }
    if (k == 1) return g;
    if (mod_pow(g, p - 1, p * p) == 1) g += p;  // g primitive mod p^2 implies primitive mod p^k
    return g;
}

Block::Block(i64 n, std::vector<i64> e) : modulus(n), elems(std::move(e)) {
    if (n <= 0) raise(Errc::precondition_violated, "block modulus must be positive");
    for (auto& x : elems) x = ((x % n) + n) % n;
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        raise(Errc::precondition_violated, "block elements must be distinct mod n");
}

DiffMultiset internal_differences(const Block& b) {
    DiffMultiset out;
    const i64 n = b.modulus;
    for (i64 x : b.elems)
        for (i64 y : b.elems)
            if (x != y) ++out[((y - x) % n + n) % n];
    return out;
}

DiffMultiset external_differences(const Block& a, const Block& b) {
    if (a.modulus != b.modulus) raise(Errc::modulus_mismatch, "external differences need a common modulus");
    DiffMultiset out;
    const i64 n = a.modulus;
    for (i64 x : a.elems)
        for (i64 y : b.elems) ++out[((y - x) % n + n) % n];
    return out;
}

std::pair<i64, i64> CrtMap::split(i64 z) const {
    const i64 n = n1 * n2;
    z = ((z % n) + n) % n;
    return {z % n1, z % n2};
}

i64 CrtMap::combine(i64 a, i64 b) const {
    const i64 n = n1 * n2;
    a = ((a % n1) + n1) % n1;
    b = ((b % n2) + n2) % n2;
    return static_cast<i64>((static_cast<__int128>(a) * e1 + static_cast<__int128>(b) * e2) % n);
}

CrtMap crt_split(i64 n1, i64 n2) {
    if (n1 < 1 || n2 < 1) raise(Errc::precondition_violated, "crt moduli must be positive");
    if (std::gcd(n1, n2) != 1)
        raise(Errc::not_coprime, "crt_split(" + std::to_string(n1) + ", " + std::to_string(n2) + ")");
    CrtMap m;
    m.n1 = n1;
    m.n2 = n2;
    m.e1 = (n2 * mod_inverse(n2, n1)) % (n1 * n2);
    m.e2 = (n1 * mod_inverse(n1, n2)) % (n1 * n2);
    return m;
}

bool is_complete_coset_representatives(const std::vector<i64>& elems, i64 n, i64 c,
                                       const std::vector<i64>& absent) {
    if (c <= 0 || n % c != 0) raise(Errc::bad_divisor, "coset modulus must divide the ring modulus");
    std::vector<i64> count(static_cast<std::size_t>(c), 0);
    for (i64 e : elems) ++count[((e % c) + c) % c];
    std::vector<char> is_absent(static_cast<std::size_t>(c), 0);
    for (i64 a : absent) {
        i64 r = ((a % c) + c) % c;
        if (is_absent[r]) return false;  // fill classes must themselves be distinct mod c
        is_absent[r] = 1;
    }
    for (i64 r = 0; r < c; ++r) {
        const i64 want = is_absent[r] ? 0 : 1;
        if (count[r] != want) return false;
    }
    return true;
}

}  // namespace fhs
