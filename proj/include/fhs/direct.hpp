#pragma once

#include <vector>

#include "fhs/galois.hpp"
#include "fhs/packing.hpp"

namespace fhs {

// Everything computed while evaluating the trace construction over GF(q^m):
// the A-sets indexed by (member i, trace vector b), the per-member offsets
// s_i, and the orbit representatives R of the nonzero b-vectors under the
// subgroup G = {beta^{jd}}.
struct TraceContext {
    i64 q = 0, m = 0, d = 0;
    i64 n = 0;          // (q^m - 1) / d
    i64 coset_mod = 0;  // (q^m - 1) / (q - 1)
    GF field;           // GF(q^m)
    std::vector<FieldElement> subfield;  // order-q subfield, ascending encoding
    // a_sets[i][b] = sorted positions t with Tr(alpha^i a_k g^t) = b_k for all
    // k, where b indexes the lex enumeration of subfield^(m-1) tuples.
    std::vector<std::vector<std::vector<i64>>> a_sets;
    std::vector<i64> s_offsets;   // min of each A^i_0, coset form asserted
    std::vector<i64> rep_tuples;  // R as tuple indices, ascending

    // tuple index of beta^{jd} * b (componentwise scaling)
    i64 scaled_tuple(i64 tuple_index, i64 j) const;
    i64 tuple_count() const;
    // census: sum over i of |A^i_b|; q for nonzero b, q-1 for b = 0
    i64 census(i64 tuple_index) const;
};

// Evaluates the trace-construction A-sets. Requires only m >= 2 and
// d | q-1, so census checks can run even where gcd(m, d) != 1 rules out the
// full family.
TraceContext build_trace_context(i64 q, i64 m, i64 d);

struct Constructed {
    NestedFamily family;
    Certificate cert;
};

struct TraceConstructed {
    NestedFamily family;
    Certificate cert;
    TraceContext ctx;
};

// Trace construction: d CRDPs over Z_{(q^m-1)/d} relative to the subgroup
// generated by (q^m-1)/(q-1), index 1, blocks B^i_b = A^i_b - s_i for b in R.
// Block elements together with 0 form a complete residue system modulo
// (q^m-1)/(q-1). Requires m >= 2, d | q-1, gcd(m, d) = 1. Self-verifying.
TraceConstructed construct_trace_bncrdp(i64 q, i64 m, i64 d);

// The partition family {A^i_b : all b} of the same construction: a strictly
// optimal ((q^m-1)/d, d, (q-1)/d; q^{m-1}) set.
Constructed construct_trace_partition_family(i64 q, i64 m, i64 d);

// Adds a block {0} to each member of a BNCRDP whose members miss exactly the
// zero coset, yielding an index-1 BNCDP with the full representative system.
Constructed extend_with_zero_block(const NestedFamily& f);

// Discrete-log construction: p^{m-1} CDPs over Z_{p(p^m-1)},
// block sizes {p, p-1}, member elements a complete residue system modulo
// p^m - 1. Index 1.
Constructed construct_log_bncdp(i64 p, i64 m);

// Same with the CRT image of (0, p-1) removed from block A^x_x, giving a
// (p(p^m-1), p, ., 1)-BNCRDP whose elements together with 0 form the residue
// system. Empty blocks stay as placeholders to keep cross-member pairing.
Constructed construct_log_bncrdp(i64 p, i64 m);

// Generalized cyclotomic BNCRDP over Z_{uv}: f members, (v-1)/e blocks of
// size e each, relative to vZ_{uv}, index 1, elements + {0} a complete
// residue system mod v. Needs gcd(u, v) = 1, e > 1, e | u and e | p_i - 1
// for every prime p_i | v; f = min (p_i - 1)/e.
Constructed construct_cyclotomic_bncrdp(i64 v, i64 u, i64 e);

struct ChainConstructed {
    NestedFamily family;
    std::vector<Certificate> certs;
};

// Iterated discrete-log expansion: (p y, p, ., 1)-BNCRDP with
// y = prod (p^{u_i} - 1), p^{u_1 - 1} members, built by induction on the
// u-list via expand_by_log_crdp and compose_on_subgroup from the base case
// construct_log_bncrdp. u must be nondecreasing.
ChainConstructed construct_iterated_log_bncrdp(i64 p, const std::vector<i64>& u);

}  // namespace fhs
