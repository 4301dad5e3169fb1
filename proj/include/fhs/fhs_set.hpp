#pragma once

#include <string>
#include <vector>

#include "fhs/packing.hpp"

namespace fhs {

// A set of M frequency-hopping sequences of period n over the alphabet
// I_l = {0, ..., l-1}. `lambda` is the declared maximum full-period Hamming
// correlation H(S; n). Immutable value type.
struct FHSSet {
    i64 n = 0;
    i64 M = 0;
    i64 l = 0;
    i64 lambda = 0;
    std::vector<std::vector<i64>> seq;  // M rows of n symbols
};

// Sequence j reads the block index containing each time slot; the alphabet
// size is the block count. Placeholder (empty) blocks become unused symbols
// and are only accepted with allow_empty_blocks.
FHSSet fhs_from_bncdp(const NestedFamily& f, bool allow_empty_blocks = false);

// Inverse correspondence: B_i^j = {t : X_j(t) = i}. The returned family has
// kind CDP and index 0 (to be set by the caller when known).
NestedFamily fhs_to_bncdp(const FHSSet& s);

// H_{X,Y}(tau; j | L): coincidences of x(t) and y(t + tau) for t in
// [j, j + L), indices mod n.
i64 partial_hamming(const std::vector<i64>& x, const std::vector<i64>& y, i64 tau, i64 j, i64 L);

// H(S; L): maximum over window starts, shifts (tau >= 1 for autocorrelation,
// tau >= 0 for cross), and sequence pairs.
i64 max_partial(const FHSSet& s, i64 L);

// H(S; L) for every L = 1..n in one pass (index L, entry 0 unused).
std::vector<i64> all_window_maxima(const FHSSet& s);

// The common inner value of the two partial Peng-Fan bounds,
// ceil((2InM - (I+1)Il) / ((nM-1)M)) with I = floor(nM/l). Asserts the
// Bound-(2) form agrees, which holds whenever nM >= l.
i64 peng_fan_inner(i64 n, i64 M, i64 l);

// Partial-correlation lower bound ceil(L/n * inner), exact integer
// arithmetic.
i64 bound_partial(i64 n, i64 M, i64 l, i64 L);

struct WindowRow {
    i64 L = 0;
    i64 H = 0;
    i64 bound = 0;
    bool meet = false;
};

struct VerificationReport {
    bool strictly_optimal = false;
    bool verdict_scan = false;            // H(S;L) equals the bound for every L
    bool verdict_characterization = false; // index and d_i conditions on the BNCDP
    i64 I = 0;
    i64 lambda_formula = 0;
    std::vector<WindowRow> rows;  // one per L = 1..n
    std::vector<i64> di;          // d_1..d_lambda of the corresponding family
};

// Runs both verdicts independently and raises InternalInconsistency if they
// ever disagree (they are two sides of a proven equivalence).
VerificationReport check_strict_optimality(const FHSSet& s);

// Text format:
//   FHS n=<n> M=<M> l=<l> lambda=<lambda>
// then M lines of n space-separated base-10 symbols.
std::string serialize_fhs(const FHSSet& s);
FHSSet parse_fhs(const std::string& text);

// One line per L: "L=<L> H=<h> bound=<b> <MEET|GAP>", then "STRICT=<yes|no>".
std::string serialize_report(const VerificationReport& r);

}  // namespace fhs
