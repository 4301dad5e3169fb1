#pragma once

#include <vector>

#include "fhs/residue.hpp"

namespace fhs {

// Homogeneous cyclic difference matrix: t rows over Z_w such that every row
// and every pairwise row difference is a permutation of Z_w.
struct Cdm {
    i64 w = 0;
    i64 t = 0;
    std::vector<std::vector<i64>> rows;
};

// Multiplication-table construction: row i (1-based) is j -> i*j mod w.
// Requires w odd with least prime factor strictly greater than t, which makes
// every row index and row-index difference coprime to w. The result is
// verified before return.
Cdm build_homogeneous_cdm(i64 w, i64 t);

bool verify_cdm(const Cdm& m);

}  // namespace fhs
