#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fhs/errors.hpp"
#include "fhs/galois.hpp"

using namespace fhs;

namespace {

GF field_of_order(i64 q) {
    i64 p = 0, k = 0;
    REQUIRE(is_prime_power(q, &p, &k));
    return GF::create(p, k);
}

}  // namespace

TEST_CASE("field_create: deterministic small fields") {
    const GF f2 = GF::create(2, 1);
    CHECK(f2.order() == 2);
    CHECK(f2.alpha() == f2.one());  // unit generator of the trivial group

    const GF f4 = GF::create(2, 2);
    CHECK(f4.order() == 4);
    CHECK(f4.modulus() == std::vector<i64>{1, 1, 1});  // x^2 + x + 1, the only choice
    CHECK(f4.alpha().enc == 2);                        // alpha = x
    CHECK(f4.pow(f4.alpha(), 3) == f4.one());
    CHECK(f4.alpha() != f4.one());

    const GF f9 = GF::create(3, 2);
    CHECK(f9.order() == 9);
    // order verified by an exponentiation oracle independent of the tables
    FieldElement acc = f9.one();
    i64 order = 0;
    for (i64 i = 1; i <= 8; ++i) {
        acc = f9.mul(acc, f9.alpha());
        if (acc == f9.one()) { order = i; break; }
    }
    CHECK(order == 8);
}

TEST_CASE("field_create: errors") {
    CHECK_THROWS_AS((void)GF::create(4, 1), Error);   // NonPrimeCharacteristic
    CHECK_THROWS_AS((void)GF::create(2, 25), Error);  // RangeExceeded
    CHECK_THROWS_AS((void)GF::create(3, 0), Error);
}

TEST_CASE("field arithmetic closes over GF(8) and GF(9)") {
    for (i64 q : {8, 9}) {
        const GF f = field_of_order(q);
        for (i64 a = 0; a < q; ++a) {
            for (i64 b = 0; b < q; ++b) {
                const FieldElement x{a}, y{b};
                CHECK(f.add(x, y) == f.add(y, x));
                CHECK(f.mul(x, y) == f.mul(y, x));
                CHECK(f.sub(f.add(x, y), y) == x);
                if (b != 0) CHECK(f.mul(f.mul(x, y), f.inv(y)) == x);
                // distributivity
                for (i64 c : {i64{1}, q - 1}) {
                    const FieldElement z{c};
                    CHECK(f.mul(f.add(x, y), z) == f.add(f.mul(x, z), f.mul(y, z)));
                }
            }
        }
    }
}

TEST_CASE("trace: worked examples over GF(4)/GF(2)") {
    const GF f4 = GF::create(2, 2);
    CHECK(f4.trace_to(2, f4.zero()) == f4.zero());
    CHECK(f4.trace_to(2, f4.one()) == f4.zero());  // 1 + 1 = 0 in characteristic 2
    // Tr(alpha) = alpha + alpha^2 = alpha + alpha + 1 = 1, summation oracle
    const FieldElement direct = f4.add(f4.alpha(), f4.mul(f4.alpha(), f4.alpha()));
    CHECK(direct == f4.one());
    CHECK(f4.trace_to(2, f4.alpha()) == f4.one());
    CHECK_THROWS_AS((void)f4.trace_to(3, f4.one()), Error);  // NotASubfield
}

TEST_CASE("trace: additivity, Frobenius fixity, surjectivity counts") {
    // (ext order, subfield order)
    for (auto [Q, q] : std::vector<std::pair<i64, i64>>{{4, 2}, {16, 4}, {27, 3}, {64, 8}, {81, 9}}) {
        const GF f = field_of_order(Q);
        const i64 m = f.subfield_degree(q);
        std::map<i64, i64> hist;
        std::mt19937_64 rng(42);
        for (i64 e = 0; e < Q; ++e) {
            const FieldElement x{e};
            const FieldElement t = f.trace_to(q, x);
            ++hist[t.enc];
            // the trace is fixed by the q-power map, so it lies in GF(q)
            CHECK(f.pow(t, q) == t);
            const FieldElement y{static_cast<i64>(rng() % Q)};
            CHECK(f.trace_to(q, f.add(x, y)) == f.add(f.trace_to(q, x), f.trace_to(q, y)));
        }
        CHECK(static_cast<i64>(hist.size()) == q);
        for (auto& [enc, count] : hist) CHECK(count == Q / q);
        (void)m;
    }
}

TEST_CASE("discrete log: worked examples and homomorphism") {
    const GF f4 = GF::create(2, 2);
    CHECK(f4.dlog(f4.one()) == 0);
    CHECK(f4.dlog(f4.alpha()) == 1);
    // alpha^2 = alpha + 1 from the modulus; power-table oracle
    const FieldElement alpha_plus_one = f4.add(f4.alpha(), f4.one());
    CHECK(f4.mul(f4.alpha(), f4.alpha()) == alpha_plus_one);
    CHECK(f4.dlog(alpha_plus_one) == 2);
    CHECK_THROWS_AS((void)f4.dlog(f4.zero()), Error);  // LogOfZero

    for (i64 q : {5, 8, 9, 27, 32}) {
        const GF f = field_of_order(q);
        for (i64 a = 1; a < q; ++a)
            for (i64 b = 1; b < q; ++b) {
                const FieldElement x{a}, y{b};
                CHECK(f.dlog(f.mul(x, y)) == (f.dlog(x) + f.dlog(y)) % (q - 1));
            }
    }
}

TEST_CASE("epsilon difference property (exhaustive small prime powers)") {
    // {eps(x-a) - eps(x-b) : x not in {a,b}} = Z_{q-1} \ {0}, every pair
    for (i64 q : {3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        const GF f = field_of_order(q);
        for (i64 a = 0; a < q; ++a) {
            for (i64 b = 0; b < q; ++b) {
                if (a == b) continue;
                std::set<i64> seen;
                for (i64 x = 0; x < q; ++x) {
                    if (x == a || x == b) continue;
                    const i64 da = f.dlog(f.sub(FieldElement{x}, FieldElement{a}));
                    const i64 db = f.dlog(f.sub(FieldElement{x}, FieldElement{b}));
                    seen.insert(((da - db) % (q - 1) + q - 1) % (q - 1));
                }
                CHECK(static_cast<i64>(seen.size()) == q - 2);
                CHECK(seen.count(0) == 0);
            }
        }
    }
}

TEST_CASE("subfield elements and embedding table") {
    const GF f16 = GF::create(2, 4);
    const auto sub = f16.subfield_elements(4);
    REQUIRE(sub.size() == 4);
    for (FieldElement x : sub) CHECK(f16.pow(x, 4) == x);  // fixed by Frobenius^2
    CHECK(std::is_sorted(sub.begin(), sub.end()));

    const GF f4 = GF::create(2, 2);
    const SubfieldMap map = build_subfield_map(f16, f4);
    REQUIRE(map.to_ext.size() == 4);
    // ring homomorphism on all pairs
    for (i64 a = 0; a < 4; ++a)
        for (i64 b = 0; b < 4; ++b) {
            const FieldElement xa{a}, xb{b};
            CHECK(map.to_ext[static_cast<std::size_t>(f4.add(xa, xb).enc)] ==
                  f16.add(map.to_ext[static_cast<std::size_t>(a)], map.to_ext[static_cast<std::size_t>(b)]));
            CHECK(map.to_ext[static_cast<std::size_t>(f4.mul(xa, xb).enc)] ==
                  f16.mul(map.to_ext[static_cast<std::size_t>(a)], map.to_ext[static_cast<std::size_t>(b)]));
        }
    // the table inverts itself
    for (i64 a = 0; a < 4; ++a) CHECK(map.to_sub.at(map.to_ext[static_cast<std::size_t>(a)].enc) == a);
}

TEST_CASE("canonical enumeration starts 0, 1, alpha") {
    const GF f = GF::create(5, 1);
    const auto e = f.enumeration();
    REQUIRE(static_cast<i64>(e.size()) == 5);
    CHECK(e[0] == f.zero());
    CHECK(e[1] == f.one());
    CHECK(e[2] == f.alpha());
    std::set<i64> uniq;
    for (auto x : e) uniq.insert(x.enc);
    CHECK(uniq.size() == 5);
}

TEST_CASE("multiplicative order") {
    const GF f9 = GF::create(3, 2);
    CHECK(f9.multiplicative_order(f9.one()) == 1);
    CHECK(f9.multiplicative_order(f9.alpha()) == 8);
    CHECK(f9.multiplicative_order(f9.pow(f9.alpha(), 2)) == 4);
}
