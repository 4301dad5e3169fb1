#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fhs/residue.hpp"

namespace fhs {

enum class PackingKind { CDP, CRDP };

// A cyclic (relative) difference packing over Z_n. For a CRDP the forbidden
// subgroup is (n / forbidden_order) Z_n, of order forbidden_order; internal
// differences must avoid it entirely and cover everything else at most
// `index` times. For a CDP only 0 is excluded.
struct Packing {
    i64 modulus = 0;
    PackingKind kind = PackingKind::CDP;
    i64 forbidden_order = 1;
    i64 index = 1;  // lambda
    std::vector<Block> blocks;
};

// M aligned packings over a common Z_n. Blocks pair by position across
// members; empty blocks are legal placeholders that keep that pairing stable.
// For the balanced-nested condition the blockwise external differences of
// every ordered member pair must cover each permitted residue at most `index`
// times (all of Z_n for a BNCDP, Z_n minus the forbidden subgroup for a
// BNCRDP).
struct NestedFamily {
    i64 modulus = 0;
    PackingKind kind = PackingKind::CDP;
    i64 forbidden_order = 1;
    i64 index = 1;
    std::vector<std::vector<Block>> members;

    std::size_t member_count() const { return members.size(); }
    std::size_t block_count() const { return members.empty() ? 0 : members[0].size(); }
    Packing member_packing(std::size_t j) const;
    // total element count of member j
    i64 member_weight(std::size_t j) const;
};

struct Violation {
    std::string where;  // "member 2" or "pair (0,1)"
    i64 residue = 0;
    i64 count = 0;
    i64 limit = 0;
};

struct VerifyReport {
    bool ok = true;
    std::vector<Violation> violations;  // exhaustive, not first-failure
};

VerifyReport verify_packing(const Packing& p);
VerifyReport verify_nested(const NestedFamily& f);
// Same checks with the index overridden (used by the optimality verdicts).
VerifyReport verify_nested_at(const NestedFamily& f, i64 index);

// True iff every member's blocks partition Z_n. Placeholders are rejected
// unless `allow_empty`.
bool verify_partition_type(const NestedFamily& f, bool allow_empty = false);

// d_i profile of a partition-type family, i = 1..upto: over every member
// pair (shift 0 excluded on the diagonal) collect the positions realizing
// the shift, sort them, and take the minimum cyclic i-apart difference as a
// least positive residue; d_i is the minimum over shifts and pairs (n when
// nothing realizes level i).
std::vector<i64> compute_di(const NestedFamily& f, i64 upto);
inline std::vector<i64> compute_di(const NestedFamily& f) { return compute_di(f, f.index); }

// Representative property shared by the constructions: every member's block
// elements, together with the fill {j * fill_step : 0 <= j < fill_count},
// form a complete system of representatives for the cosets of cZ_n.
bool family_representatives_ok(const NestedFamily& f, i64 c, i64 fill_step, i64 fill_count);

// Verification record attached to every constructed or expanded family.
struct Certificate {
    std::string op;
    std::string params;
    std::uint64_t input_digest = 0;  // 0 for source constructions
    std::uint64_t output_digest = 0;
    bool pass = false;
};

std::uint64_t family_digest(const NestedFamily& f);

// Text format:
//   PACKING n=<n> kind=<CDP|CRDP> g=<g> lambda=<l> members=<M>
// then one line of space-separated residues per block (blank for an empty
// placeholder), members separated by a line "--".
std::string serialize_family(const NestedFamily& f);
NestedFamily parse_family(const std::string& text);

}  // namespace fhs
