#pragma once

#include "fhs/cdm.hpp"
#include "fhs/packing.hpp"

namespace fhs {

struct Expanded {
    NestedFamily family;
    Certificate cert;
};

// Places a small BNCRDP on the subgroup of a large one: member i of the
// output is {g2 * B : B in inner_i} followed by outer_i. `outer` must be an
// (m g1 g2, m g1, ., 1)-BNCRDP whose elements plus {j g2 : j < m g1 / s}
// form a complete residue system mod m g1 g2 / s, and `inner` an
// (m g1, m, ., 1)-BNCRDP with the matching property one level down; s | m.
// Output: (m g1 g2, m, ., 1)-BNCRDP of size u1 + u2.
Expanded compose_on_subgroup(const NestedFamily& outer, const NestedFamily& inner, i64 s);

// All s-translates of every block of an index-1 BNCDP whose member elements
// form a complete residue system mod s. Output is partition-type of index
// g/s with d_a = a*s realized (a*s is asserted as an exact floor).
Expanded expand_by_translates(const NestedFamily& f, i64 s);

// Fills the forbidden subgroup of a BNCRDP with a partition-type BNCDP:
// member i becomes {B + j*s*m : B in F_i, j < g/s} followed by {m*A : A in
// inner_i}. Requires d_i(inner) >= s*i; the output is partition-type of
// index g/s with d_i >= i*s*m.
Expanded fill_with_bncdp(const NestedFamily& f, i64 s, const NestedFamily& inner);

// Difference-matrix expansion: every block column spawns w columns offset by
// g times the CDM entries, walking one CDM row per element of the column.
// Input BNCDP with full representative system mod s, gcd(w, g/s) = 1 and
// t >= max column weight. Output BNCDP over Z_{gw}, size u*w, representative
// system mod s*w.
Expanded expand_by_cdm(const NestedFamily& f, i64 s, const Cdm& cdm);

// Discrete-log expansion of a BNCRDP: for each block column
// an injection eta into GF(q), and for each y in GF(q) the new block
// {x + m*g*eps(y - eta(x)) : eta(x) != y}. Requires q >= max column weight
// and gcd(q-1, g/s) = 1. Output BNCRDP over Z_{mg(q-1)} relative to
// g(q-1), elements plus {j*m : j < s(q-1)} a complete system mod s*m*(q-1).
Expanded expand_by_log_crdp(const NestedFamily& f, i64 s, i64 q);

// Same expansion for a BNCDP with a full representative system mod s; the
// output has the full system mod s(q-1) over Z_{g(q-1)}.
Expanded expand_by_log_cdp(const NestedFamily& f, i64 s, i64 q);

}  // namespace fhs
