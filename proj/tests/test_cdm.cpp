#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fhs/cdm.hpp"
#include "fhs/errors.hpp"

using namespace fhs;

TEST_CASE("build_homogeneous_cdm: worked examples") {
    const Cdm m53 = build_homogeneous_cdm(5, 3);
    REQUIRE(m53.rows.size() == 3);
    CHECK(m53.rows[0] == std::vector<i64>{0, 1, 2, 3, 4});
    CHECK(m53.rows[1] == std::vector<i64>{0, 2, 4, 1, 3});
    CHECK(m53.rows[2] == std::vector<i64>{0, 3, 1, 4, 2});
    CHECK(verify_cdm(m53));

    const Cdm m71 = build_homogeneous_cdm(7, 1);
    CHECK(m71.rows[0] == std::vector<i64>{0, 1, 2, 3, 4, 5, 6});
    CHECK(verify_cdm(m71));

    CHECK(verify_cdm(build_homogeneous_cdm(9, 2)));
    CHECK(verify_cdm(build_homogeneous_cdm(25, 3)));
}

TEST_CASE("build_homogeneous_cdm: precondition violations") {
    CHECK_THROWS_AS((void)build_homogeneous_cdm(6, 2), Error);   // even w
    CHECK_THROWS_AS((void)build_homogeneous_cdm(9, 3), Error);   // lpf(9) = 3 <= t
    CHECK_THROWS_AS((void)build_homogeneous_cdm(15, 3), Error);  // lpf(15) = 3 <= t
}

TEST_CASE("verify_cdm: negatives") {
    CHECK(verify_cdm({1, 1, {{0}}}));  // trivial single-cell matrix
    // two equal rows: difference vector is all zeros
    CHECK_FALSE(verify_cdm({5, 2, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}}}));
    // one duplicated entry breaks the row permutation
    Cdm m = build_homogeneous_cdm(7, 3);
    m.rows[1][2] = m.rows[1][3];
    CHECK_FALSE(verify_cdm(m));
}

TEST_CASE("sampled build+verify across odd moduli") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 60) {
        const i64 w = 3 + 2 * static_cast<i64>(rng() % 500);  // odd, <= ~1000
        const i64 lpf = least_prime_factor(w);
        if (lpf < 2) continue;
        const i64 t = 1 + static_cast<i64>(rng() % static_cast<unsigned long long>(lpf - 1));
        const Cdm m = build_homogeneous_cdm(w, t);
        CHECK(verify_cdm(m));
        // corrupt one entry; a duplicate in a row is always caught
        if (m.w >= 2) {
            Cdm bad = m;
            bad.rows[0][0] = bad.rows[0][1];
            CHECK_FALSE(verify_cdm(bad));
        }
        ++done;
    }
}
