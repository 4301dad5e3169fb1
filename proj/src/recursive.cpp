#include "fhs/recursive.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include "fhs/errors.hpp"
#include "fhs/galois.hpp"

namespace fhs {

namespace {

Certificate make_cert(const char* op, std::string params, const NestedFamily& in,
                      const NestedFamily& out) {
    return Certificate{op, std::move(params), family_digest(in), family_digest(out), true};
}

void require_verified(const NestedFamily& f, const char* what) {
    if (!verify_nested(f).ok)
        raise(Errc::internal_verification_failed, std::string(what) + " failed verification");
}

// max over block columns of the summed block sizes across members
i64 max_column_weight(const NestedFamily& f) {
    i64 best = 0;
    for (std::size_t i = 0; i < f.block_count(); ++i) {
        i64 w = 0;
        for (const auto& member : f.members) w += static_cast<i64>(member[i].size());
        best = std::max(best, w);
    }
    return best;
}

Block translated(const Block& b, i64 offset, i64 n) {
    if (b.empty()) return {};
    std::vector<i64> elems;
    elems.reserve(b.size());
    for (i64 x : b.elems) elems.push_back((x + offset) % n);
    return Block(n, std::move(elems));
}

Block scaled(const Block& b, i64 factor, i64 n) {
    if (b.empty()) return {};
    std::vector<i64> elems;
    elems.reserve(b.size());
    for (i64 x : b.elems) elems.push_back(x * factor % n);
    return Block(n, std::move(elems));
}

}  // namespace

Expanded compose_on_subgroup(const NestedFamily& outer, const NestedFamily& inner, i64 s) {
    if (outer.kind != PackingKind::CRDP || inner.kind != PackingKind::CRDP)
        raise(Errc::structure_mismatch, "composition expects BNCRDPs");
    if (outer.index != 1 || inner.index != 1)
        raise(Errc::structure_mismatch, "composition expects index 1 on both sides");
    if (outer.member_count() != inner.member_count())
        raise(Errc::structure_mismatch, "composition needs equal member counts");
    if (outer.forbidden_order != inner.modulus)
        raise(Errc::structure_mismatch,
              "outer forbidden subgroup order must equal the inner modulus");
    const i64 m = inner.forbidden_order;
    const i64 g1 = inner.modulus / m;
    const i64 g2 = outer.modulus / inner.modulus;
    if (outer.modulus % inner.modulus != 0 || m % s != 0)
        raise(Errc::structure_mismatch, "composition shape mismatch (need s | m)");
    if (!family_representatives_ok(outer, outer.modulus / s, g2, inner.modulus / s))
        raise(Errc::representative_violation, "outer family lacks its representative property");
    if (!family_representatives_ok(inner, inner.modulus / s, g1, m / s))
        raise(Errc::representative_violation, "inner family lacks its representative property");

    NestedFamily out;
    out.modulus = outer.modulus;
    out.kind = PackingKind::CRDP;
    out.forbidden_order = m;
    out.index = 1;
    out.members.resize(outer.member_count());
    for (std::size_t j = 0; j < out.members.size(); ++j) {
        for (const auto& b : inner.members[j]) out.members[j].push_back(scaled(b, g2, out.modulus));
        for (const auto& b : outer.members[j]) out.members[j].push_back(b);
    }
    require_verified(out, "composed BNCRDP");
    if (!family_representatives_ok(out, out.modulus / s, g1 * g2, m / s))
        raise(Errc::internal_verification_failed, "composed BNCRDP lost the representative property");
    std::ostringstream params;
    params << "m=" << m << ",g1=" << g1 << ",g2=" << g2 << ",s=" << s;
    Certificate cert = make_cert("compose_on_subgroup", params.str(), outer, out);
    return {std::move(out), std::move(cert)};
}

Expanded expand_by_translates(const NestedFamily& f, i64 s) {
    if (f.kind != PackingKind::CDP) raise(Errc::structure_mismatch, "translate expansion expects a BNCDP");
    if (f.index != 1) raise(Errc::structure_mismatch, "translate expansion expects index 1");
    const i64 g = f.modulus;
    if (s < 1 || g % s != 0) raise(Errc::bad_divisor, "s must divide the modulus");
    if (!family_representatives_ok(f, s, 0, 0))
        raise(Errc::representative_violation, "members are not complete residue systems mod s");

    const i64 copies = g / s;
    NestedFamily out;
    out.modulus = g;
    out.kind = PackingKind::CDP;
    out.forbidden_order = 1;
    out.index = copies;
    out.members.resize(f.member_count());
    for (std::size_t j = 0; j < f.members.size(); ++j)
        for (const auto& b : f.members[j])
            for (i64 t = 0; t < copies; ++t) out.members[j].push_back(translated(b, t * s, g));

    if (!verify_partition_type(out, true))
        raise(Errc::internal_verification_failed, "translate expansion is not partition-type");
    require_verified(out, "translated BNCDP");
    const auto di = compute_di(out, copies);
    for (i64 a = 1; a <= copies; ++a) {
        const i64 got = di[static_cast<std::size_t>(a - 1)];
        if (got < a * s) raise(Errc::di_floor_violated, "translate expansion d_" + std::to_string(a) +
                                                            " fell below " + std::to_string(a * s));
        // realized orbits are arithmetic progressions of step s, so any
        // realized level gives exactly a*s; n means level a never occurs
        if (got != a * s && got != g)
            raise(Errc::internal_verification_failed, "translate expansion d_" + std::to_string(a) +
                                                          " is neither a*s nor n");
    }
    Certificate cert = make_cert("expand_by_translates", "s=" + std::to_string(s), f, out);
    return {std::move(out), std::move(cert)};
}

Expanded fill_with_bncdp(const NestedFamily& f, i64 s, const NestedFamily& inner) {
    if (f.kind != PackingKind::CRDP) raise(Errc::structure_mismatch, "filling expects an outer BNCRDP");
    if (inner.kind != PackingKind::CDP) raise(Errc::structure_mismatch, "filling expects an inner BNCDP");
    if (f.member_count() != inner.member_count())
        raise(Errc::structure_mismatch, "filling needs equal member counts");
    const i64 g = f.forbidden_order;
    const i64 m = f.modulus / g;
    if (s < 1 || g % s != 0) raise(Errc::bad_divisor, "s must divide the forbidden order");
    if (inner.modulus != g)
        raise(Errc::structure_mismatch, "inner modulus must equal the outer forbidden order");
    if (!family_representatives_ok(f, s * m, m, s))
        raise(Errc::representative_violation, "outer family lacks its representative property");
    if (!verify_partition_type(inner, true))
        raise(Errc::not_partition_type, "inner family must be partition-type");
    if (!verify_nested_at(inner, g / s).ok)
        raise(Errc::structure_mismatch, "inner family exceeds index g/s");
    {
        const auto di = compute_di(inner, g / s);
        for (i64 i = 1; i <= g / s; ++i)
            if (di[static_cast<std::size_t>(i - 1)] < s * i)
                raise(Errc::di_floor_violated, "inner family misses d_i >= s*i");
    }

    NestedFamily out;
    out.modulus = f.modulus;
    out.kind = PackingKind::CDP;
    out.forbidden_order = 1;
    out.index = g / s;
    out.members.resize(f.member_count());
    for (std::size_t j = 0; j < f.members.size(); ++j) {
        for (const auto& b : f.members[j])
            for (i64 t = 0; t < g / s; ++t) out.members[j].push_back(translated(b, t * s * m, out.modulus));
        for (const auto& b : inner.members[j]) out.members[j].push_back(scaled(b, m, out.modulus));
    }

    if (!verify_partition_type(out, true))
        raise(Errc::internal_verification_failed, "filled family is not partition-type");
    require_verified(out, "filled BNCDP");
    const auto di = compute_di(out, g / s);
    for (i64 i = 1; i <= g / s; ++i)
        if (di[static_cast<std::size_t>(i - 1)] < i * s * m)
            raise(Errc::di_floor_violated, "filled family misses d_i >= i*s*m");
    std::ostringstream params;
    params << "s=" << s << ",m=" << m << ",g=" << g;
    Certificate cert = make_cert("fill_with_bncdp", params.str(), f, out);
    return {std::move(out), std::move(cert)};
}

Expanded expand_by_cdm(const NestedFamily& f, i64 s, const Cdm& cdm) {
    if (f.kind != PackingKind::CDP) raise(Errc::structure_mismatch, "cdm expansion expects a BNCDP");
    if (f.index != 1) raise(Errc::structure_mismatch, "cdm expansion expects index 1");
    const i64 g = f.modulus;
    if (s < 1 || g % s != 0) raise(Errc::bad_divisor, "s must divide the modulus");
    if (!family_representatives_ok(f, s, 0, 0))
        raise(Errc::representative_violation, "members are not complete residue systems mod s");
    const i64 need = max_column_weight(f);
    if (cdm.t < need)
        raise(Errc::cdm_too_small, "cdm has " + std::to_string(cdm.t) + " rows, column weight needs " +
                                       std::to_string(need));
    if (std::gcd(cdm.w, g / s) != 1) raise(Errc::gcd_violation, "gcd(w, g/s) must be 1");

    const i64 w = cdm.w;
    NestedFamily out;
    out.modulus = g * w;
    out.kind = PackingKind::CDP;
    out.forbidden_order = 1;
    out.index = 1;
    out.members.resize(f.member_count());
    for (std::size_t i = 0; i < f.block_count(); ++i) {
        // cumulative row positions walk the column across members
        std::vector<std::size_t> row_base(f.member_count());
        std::size_t pos = 0;
        for (std::size_t j = 0; j < f.member_count(); ++j) {
            row_base[j] = pos;
            pos += f.members[j][i].size();
        }
        for (i64 k = 0; k < w; ++k) {
            for (std::size_t j = 0; j < f.member_count(); ++j) {
                const Block& b = f.members[j][i];
                std::vector<i64> elems;
                elems.reserve(b.size());
                for (std::size_t c = 0; c < b.elems.size(); ++c) {
                    const i64 gamma = cdm.rows.at(row_base[j] + c).at(static_cast<std::size_t>(k));
                    elems.push_back((b.elems[c] + g * gamma) % out.modulus);
                }
                out.members[j].push_back(elems.empty() ? Block{} : Block(out.modulus, std::move(elems)));
            }
        }
    }
    require_verified(out, "cdm-expanded BNCDP");
    if (!family_representatives_ok(out, s * w, 0, 0))
        raise(Errc::internal_verification_failed, "cdm expansion lost the residue system");
    std::ostringstream params;
    params << "w=" << w << ",t=" << cdm.t << ",s=" << s;
    Certificate cert = make_cert("expand_by_cdm", params.str(), f, out);
    return {std::move(out), std::move(cert)};
}

namespace {

// shared discrete-log expansion; relative = true keeps a forbidden subgroup
Expanded expand_by_log(const NestedFamily& f, i64 s, i64 q, bool relative) {
    const i64 g = relative ? f.forbidden_order : f.modulus;
    const i64 m = f.modulus / g;
    if (s < 1 || g % s != 0) raise(Errc::bad_divisor, "s must divide g");
    i64 p = 0, k = 0;
    if (!is_prime_power(q, &p, &k)) raise(Errc::param_violation, "q must be a prime power");
    const i64 need = max_column_weight(f);
    if (q < need)
        raise(Errc::field_too_small,
              "GF(" + std::to_string(q) + ") cannot inject columns of weight " + std::to_string(need));
    if (std::gcd(q - 1, g / s) != 1) raise(Errc::gcd_violation, "gcd(q-1, g/s) must be 1");
    if (f.index != 1) raise(Errc::structure_mismatch, "log expansion expects index 1");
    if (relative) {
        if (f.kind != PackingKind::CRDP) raise(Errc::structure_mismatch, "expected a BNCRDP");
        if (!family_representatives_ok(f, s * m, m, s))
            raise(Errc::representative_violation, "input lacks its representative property");
    } else {
        if (f.kind != PackingKind::CDP) raise(Errc::structure_mismatch, "expected a BNCDP");
        if (!family_representatives_ok(f, s, 0, 0))
            raise(Errc::representative_violation, "members are not complete residue systems mod s");
    }

    const GF gf = GF::create(p, k);
    const auto field_enum = gf.enumeration();

    NestedFamily out;
    out.modulus = f.modulus * (q - 1);
    out.kind = f.kind;
    out.forbidden_order = relative ? g * (q - 1) : 1;
    out.index = 1;
    out.members.resize(f.member_count());
    for (std::size_t i = 0; i < f.block_count(); ++i) {
        // canonical injection: members in order, elements ascending, mapped to
        // the fixed field enumeration 0, 1, alpha, alpha^2, ...
        std::vector<std::vector<FieldElement>> eta(f.member_count());
        std::size_t pos = 0;
        for (std::size_t j = 0; j < f.member_count(); ++j)
            for (std::size_t c = 0; c < f.members[j][i].size(); ++c)
                eta[j].push_back(field_enum[pos++]);
        for (const FieldElement y : field_enum) {
            for (std::size_t j = 0; j < f.member_count(); ++j) {
                const Block& b = f.members[j][i];
                std::vector<i64> elems;
                for (std::size_t c = 0; c < b.elems.size(); ++c) {
                    if (eta[j][c] == y) continue;
                    const i64 eps = gf.dlog(gf.sub(y, eta[j][c]));
                    elems.push_back(b.elems[c] + f.modulus * eps);
                }
                out.members[j].push_back(elems.empty() ? Block{} : Block(out.modulus, std::move(elems)));
            }
        }
    }
    require_verified(out, "log-expanded family");
    if (relative) {
        if (!family_representatives_ok(out, s * m * (q - 1), m, s * (q - 1)))
            raise(Errc::internal_verification_failed, "log expansion lost the representative property");
    } else {
        if (!family_representatives_ok(out, s * (q - 1), 0, 0))
            raise(Errc::internal_verification_failed, "log expansion lost the residue system");
    }
    std::ostringstream params;
    params << "q=" << q << ",s=" << s;
    Certificate cert = make_cert(relative ? "expand_by_log_crdp" : "expand_by_log_cdp", params.str(), f, out);
    return {std::move(out), std::move(cert)};
}

}  // namespace

Expanded expand_by_log_crdp(const NestedFamily& f, i64 s, i64 q) { return expand_by_log(f, s, q, true); }

Expanded expand_by_log_cdp(const NestedFamily& f, i64 s, i64 q) { return expand_by_log(f, s, q, false); }

}  // namespace fhs
