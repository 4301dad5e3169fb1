#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace fhs {

using i64 = std::int64_t;

// --- elementary number theory (desk scale, trial division throughout) ---

bool is_prime(i64 n);
i64 least_prime_factor(i64 n);  // n >= 2
std::vector<std::pair<i64, i64>> factorize(i64 n);  // (prime, exponent), primes ascending
bool is_prime_power(i64 n, i64* p_out = nullptr, i64* k_out = nullptr);
i64 power_checked(i64 base, i64 exp);  // throws RangeExceeded past 2^62
i64 mod_pow(i64 base, i64 exp, i64 mod);
i64 mod_inverse(i64 a, i64 mod);  // gcd(a, mod) = 1
i64 euler_phi(i64 n);
// Smallest primitive root modulo an odd prime power q.
i64 primitive_root(i64 q);

// --- residue-ring types ---

// Sorted duplicate-free subset of Z_n.
struct Block {
    i64 modulus = 0;
    std::vector<i64> elems;

    Block() = default;
    // Reduces mod n, sorts, and rejects duplicates.
    Block(i64 n, std::vector<i64> e);

    std::size_t size() const { return elems.size(); }
    bool empty() const { return elems.empty(); }
    bool operator==(const Block&) const = default;
};

// Multiset of residues, keyed residue -> multiplicity (>= 1).
using DiffMultiset = std::map<i64, i64>;

// All ordered differences y - x of distinct elements, mod n. Size |B|(|B|-1).
DiffMultiset internal_differences(const Block& b);

// External difference list of the ordered pair (A, B): {y - x : (x, y) in A x B}.
// May contain zero; count of t equals |(A + t) n B|.
DiffMultiset external_differences(const Block& a, const Block& b);

// Ring isomorphism Z_{n1*n2} <-> Z_{n1} x Z_{n2} for coprime n1, n2.
struct CrtMap {
    i64 n1 = 1;
    i64 n2 = 1;
    i64 e1 = 0;  // idempotent = 1 mod n1, 0 mod n2
    i64 e2 = 0;  // idempotent = 0 mod n1, 1 mod n2

    std::pair<i64, i64> split(i64 z) const;
    i64 combine(i64 a, i64 b) const;
    i64 modulus() const { return n1 * n2; }
};

CrtMap crt_split(i64 n1, i64 n2);

// True iff `elems`, taken mod c, hit each residue of Z_c outside `absent`
// exactly once and no residue of `absent` at all. The coset structure is
// cZ_n inside Z_n, so c must divide n (BadDivisor otherwise). `absent` lists
// the classes a caller accounts for externally ("together with 0, m, ...").
bool is_complete_coset_representatives(const std::vector<i64>& elems, i64 n, i64 c,
                                       const std::vector<i64>& absent = {});

}  // namespace fhs
