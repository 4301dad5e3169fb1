#pragma once

#include <map>
#include <string>
#include <vector>

#include "fhs/direct.hpp"
#include "fhs/fhs_set.hpp"
#include "fhs/packing.hpp"

namespace fhs {

// The nine assembled families.
enum class Family { d3, uv2, uv5, p4, p5, euv, d4, uv4, uv3 };

const char* family_name(Family f);
Family family_from_name(const std::string& name);  // UnknownFamily

// Named integer parameters (q, m, d, w, p, v, e, qprime as applicable) plus
// the u-list for the iterated families. strict enforces the published
// hypotheses; permissive mode downgrades them to warnings and lets the
// verifier judge the result empirically.
struct FamilyRequest {
    Family family = Family::d3;
    std::map<std::string, i64> params;
    std::vector<i64> u_list;
    bool strict = true;
};

// Violated hypotheses, empty when the request satisfies every published
// constraint of its family.
std::vector<std::string> validate(const FamilyRequest& req);

struct AssembleResult {
    FHSSet set;
    VerificationReport report;
    std::vector<Certificate> trace;
    std::vector<std::string> warnings;  // permissive-mode constraint violations
    i64 predicted_n = 0;
    i64 predicted_M = 0;
    i64 predicted_lambda = 0;
    i64 predicted_l = 0;
};

// Runs the family's construction chain, verifies every stage, converts to an
// FHS set and attaches the full optimality report. In strict mode a
// validation failure raises ValidationFailed and a non-strictly-optimal
// outcome raises InternalInconsistency (it would contradict a proven result).
AssembleResult assemble(const FamilyRequest& req);

struct CatalogEntry {
    Family family = Family::d3;
    std::string params;
    i64 n = 0, M = 0, lambda = 0, l = 0;
};

// All parameter tuples passing validate with predicted length n <= max_n.
std::vector<CatalogEntry> emit_parameter_table(Family family, i64 max_n);

// The strictly optimal (p(p^m-1), p^{m-1}, p; p^m) set: the discrete-log
// family spread by translates. Used as the inner ingredient of euv and p5.
ChainConstructed build_log_fhs_family(i64 p, i64 m);

std::string serialize_trace(const std::vector<Certificate>& certs);

}  // namespace fhs
