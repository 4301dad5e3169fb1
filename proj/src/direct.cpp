#include "fhs/direct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "fhs/errors.hpp"
#include "fhs/recursive.hpp"

namespace fhs {

namespace {

std::string params_str(std::initializer_list<std::pair<const char*, i64>> kv) {
    std::ostringstream out;
    bool first = true;
    for (auto& [k, v] : kv) {
        if (!first) out << ',';
        out << k << '=' << v;
        first = false;
    }
    return out.str();
}

Certificate make_cert(const char* op, std::string params, std::uint64_t in_digest,
                      const NestedFamily& out) {
    return Certificate{op, std::move(params), in_digest, family_digest(out), true};
}

}  // namespace

i64 TraceContext::tuple_count() const { return power_checked(q, m - 1); }

i64 TraceContext::census(i64 tuple_index) const {
    i64 total = 0;
    for (const auto& per_member : a_sets)
        total += static_cast<i64>(per_member[static_cast<std::size_t>(tuple_index)].size());
    return total;
}

i64 TraceContext::scaled_tuple(i64 tuple_index, i64 j) const {
    std::map<i64, i64> enc_to_idx;
    for (std::size_t i = 0; i < subfield.size(); ++i) enc_to_idx[subfield[i].enc] = static_cast<i64>(i);
    const FieldElement scale = field.exp(coset_mod * j * d);  // beta^{jd}
    i64 idx = tuple_index, out = 0, place = 1;
    for (i64 k = 0; k < m - 1; ++k) {
        FieldElement c = subfield[static_cast<std::size_t>(idx % q)];
        out += enc_to_idx.at(field.mul(c, scale).enc) * place;
        idx /= q;
        place *= q;
    }
    return out;
}

TraceContext build_trace_context(i64 q, i64 m, i64 d) {
    i64 p = 0, k = 0;
    if (!is_prime_power(q, &p, &k)) raise(Errc::param_violation, "q must be a prime power");
    if (m < 2) raise(Errc::param_violation, "m must be at least 2");
    if (d < 1 || (q - 1) % d != 0) raise(Errc::param_violation, "d must divide q - 1");

    TraceContext ctx;
    ctx.q = q;
    ctx.m = m;
    ctx.d = d;
    ctx.field = GF::create(p, k * m);
    const i64 Q = ctx.field.order();
    ctx.n = (Q - 1) / d;
    ctx.coset_mod = (Q - 1) / (q - 1);
    ctx.subfield = ctx.field.subfield_elements(q);

    // defaults a_k = alpha^k, k = 1..m-1; rank-verified over GF(q) by brute
    // force over all subfield combinations
    {
        std::vector<FieldElement> a;
        for (i64 kk = 1; kk < m; ++kk) a.push_back(ctx.field.exp(kk));
        const i64 combos = power_checked(q, m - 1);
        for (i64 code = 1; code < combos; ++code) {
            FieldElement acc = {0};
            i64 c = code;
            for (i64 kk = 0; kk < m - 1; ++kk) {
                acc = ctx.field.add(acc, ctx.field.mul(ctx.subfield[static_cast<std::size_t>(c % q)],
                                                       a[static_cast<std::size_t>(kk)]));
                c /= q;
            }
            if (acc.enc == 0)
                raise(Errc::internal_verification_failed, "a_1..a_{m-1} are linearly dependent");
        }
    }

    // trace table Tr(alpha^E) for all exponents
    std::vector<i64> tr(static_cast<std::size_t>(Q - 1));
    for (i64 e = 0; e < Q - 1; ++e) tr[static_cast<std::size_t>(e)] = ctx.field.trace_to(q, ctx.field.exp(e)).enc;

    std::map<i64, i64> sub_index;
    for (std::size_t i = 0; i < ctx.subfield.size(); ++i) sub_index[ctx.subfield[i].enc] = static_cast<i64>(i);

    const i64 tuples = power_checked(q, m - 1);
    ctx.a_sets.assign(static_cast<std::size_t>(d), std::vector<std::vector<i64>>(static_cast<std::size_t>(tuples)));
    for (i64 i = 0; i < d; ++i) {
        for (i64 t = 0; t < ctx.n; ++t) {
            i64 tuple = 0, place = 1;
            for (i64 kk = 1; kk < m; ++kk) {
                const i64 e = (i + kk + d * t) % (Q - 1);
                tuple += sub_index.at(tr[static_cast<std::size_t>(e)]) * place;
                place *= q;
            }
            ctx.a_sets[static_cast<std::size_t>(i)][static_cast<std::size_t>(tuple)].push_back(t);
        }
        for (auto& v : ctx.a_sets[static_cast<std::size_t>(i)]) std::sort(v.begin(), v.end());
    }

    // the size census holds with no further hypotheses
    for (i64 b = 0; b < tuples; ++b) {
        const i64 want = (b == 0) ? q - 1 : q;
        if (ctx.census(b) != want)
            raise(Errc::internal_verification_failed, "trace census failed at tuple " + std::to_string(b));
    }

    // The offsets and orbit representatives below belong to the CRDP
    // construction proper and rely on gcd(m, d) = 1 (A^i_0 can be empty
    // otherwise); the census above holds without that hypothesis.
    if (std::gcd(m, d) != 1) return ctx;

    // A^i_0 must be the full coset {s_i + j * coset_mod}
    for (i64 i = 0; i < d; ++i) {
        const auto& a0 = ctx.a_sets[static_cast<std::size_t>(i)][0];
        if (a0.empty()) raise(Errc::internal_verification_failed, "A^i_0 is empty");
        const i64 s = a0.front();
        if (static_cast<i64>(a0.size()) != (q - 1) / d)
            raise(Errc::internal_verification_failed, "A^i_0 has the wrong size");
        for (std::size_t j = 0; j < a0.size(); ++j)
            if (a0[j] != s + static_cast<i64>(j) * ctx.coset_mod)
                raise(Errc::internal_verification_failed, "A^i_0 is not a coset");
        ctx.s_offsets.push_back(s);
    }

    // orbit representatives of nonzero tuples under componentwise beta^{jd}
    {
        std::vector<char> visited(static_cast<std::size_t>(tuples), 0);
        visited[0] = 1;
        const i64 beta_step = ctx.coset_mod;
        const FieldElement gen = ctx.field.exp(beta_step * d);
        const i64 orbit_len = (q - 1) / d;
        for (i64 b = 1; b < tuples; ++b) {
            if (visited[static_cast<std::size_t>(b)]) continue;
            ctx.rep_tuples.push_back(b);
            // walk the orbit
            std::vector<i64> comps;
            i64 idx = b;
            for (i64 kk = 0; kk < m - 1; ++kk) { comps.push_back(idx % q); idx /= q; }
            for (i64 step = 0; step < orbit_len; ++step) {
                i64 cur = 0, place = 1;
                for (i64 kk = 0; kk < m - 1; ++kk) {
                    FieldElement c = ctx.subfield[static_cast<std::size_t>(comps[static_cast<std::size_t>(kk)])];
                    FieldElement scaled = ctx.field.mul(c, ctx.field.pow(gen, step));
                    cur += sub_index.at(scaled.enc) * place;
                    place *= q;
                }
                visited[static_cast<std::size_t>(cur)] = 1;
            }
        }
        const i64 expect = d * (power_checked(q, m - 1) - 1) / (q - 1);
        if (static_cast<i64>(ctx.rep_tuples.size()) != expect)
            raise(Errc::internal_verification_failed, "orbit representative count mismatch");
    }
    return ctx;
}

TraceConstructed construct_trace_bncrdp(i64 q, i64 m, i64 d) {
    if (std::gcd(m, d) != 1) raise(Errc::param_violation, "gcd(m, d) must be 1");
    TraceContext ctx = build_trace_context(q, m, d);

    NestedFamily fam;
    fam.modulus = ctx.n;
    fam.kind = PackingKind::CRDP;
    fam.forbidden_order = (q - 1) / d;
    fam.index = 1;
    fam.members.resize(static_cast<std::size_t>(d));
    for (i64 i = 0; i < d; ++i) {
        for (i64 b : ctx.rep_tuples) {
            std::vector<i64> elems;
            for (i64 t : ctx.a_sets[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)])
                elems.push_back(((t - ctx.s_offsets[static_cast<std::size_t>(i)]) % ctx.n + ctx.n) % ctx.n);
            fam.members[static_cast<std::size_t>(i)].push_back(
                elems.empty() ? Block{} : Block(ctx.n, std::move(elems)));
        }
    }

    if (!verify_nested(fam).ok)
        raise(Errc::internal_verification_failed, "trace BNCRDP failed verification");
    if (!family_representatives_ok(fam, ctx.coset_mod, 0, 1))
        raise(Errc::internal_verification_failed, "trace BNCRDP lost the representative property");
    Certificate cert = make_cert("construct_trace_bncrdp", params_str({{"q", q}, {"m", m}, {"d", d}}), 0, fam);
    return {std::move(fam), std::move(cert), std::move(ctx)};
}

Constructed construct_trace_partition_family(i64 q, i64 m, i64 d) {
    if (std::gcd(m, d) != 1) raise(Errc::param_violation, "gcd(m, d) must be 1");
    TraceContext ctx = build_trace_context(q, m, d);
    NestedFamily fam;
    fam.modulus = ctx.n;
    fam.kind = PackingKind::CDP;
    fam.forbidden_order = 1;
    fam.index = (q - 1) / d;
    fam.members.resize(static_cast<std::size_t>(d));
    const i64 tuples = ctx.tuple_count();
    for (i64 i = 0; i < d; ++i)
        for (i64 b = 0; b < tuples; ++b) {
            const auto& v = ctx.a_sets[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
            fam.members[static_cast<std::size_t>(i)].push_back(v.empty() ? Block{} : Block(ctx.n, v));
        }
    if (!verify_partition_type(fam, true))
        raise(Errc::internal_verification_failed, "trace partition family is not a partition");
    if (!verify_nested(fam).ok)
        raise(Errc::internal_verification_failed, "trace partition family exceeds its index");
    Certificate cert =
        make_cert("construct_trace_partition_family", params_str({{"q", q}, {"m", m}, {"d", d}}), 0, fam);
    return {std::move(fam), std::move(cert)};
}

Constructed extend_with_zero_block(const NestedFamily& f) {
    if (f.kind != PackingKind::CRDP)
        raise(Errc::structure_mismatch, "zero-block extension expects a BNCRDP");
    const i64 c = f.modulus / f.forbidden_order;
    if (!family_representatives_ok(f, c, 0, 1))
        raise(Errc::representative_gap_mismatch,
              "members must miss exactly the zero coset before adding {0}");
    const std::uint64_t in_digest = family_digest(f);
    NestedFamily out = f;
    out.kind = PackingKind::CDP;
    out.forbidden_order = 1;
    for (auto& member : out.members) member.push_back(Block(out.modulus, {0}));
    if (!verify_nested(out).ok)
        raise(Errc::internal_verification_failed, "zero-block extension failed verification");
    if (!family_representatives_ok(out, c, 0, 0))
        raise(Errc::internal_verification_failed, "zero-block extension lost the full residue system");
    Certificate cert = make_cert("extend_with_zero_block", params_str({{"c", c}}), in_digest, out);
    return {std::move(out), std::move(cert)};
}

namespace {

// shared core of the discrete-log constructions; returns the family
// before any removal
NestedFamily log_construction_base(i64 p, i64 m, const GF& gf, std::vector<i64>* self_block_index) {
    const i64 pm1 = gf.order() - 1;  // p^m - 1
    const CrtMap cr = crt_split(pm1, p);

    // R = {sum a_i alpha^i}, tuples enumerated lexicographically
    std::vector<FieldElement> reps;
    const i64 count = power_checked(p, m - 1);
    std::vector<FieldElement> alpha_pow;
    for (i64 i = 1; i < m; ++i) alpha_pow.push_back(gf.exp(i));
    for (i64 code = 0; code < count; ++code) {
        FieldElement acc = {0};
        i64 c = code;
        for (i64 i = 0; i < m - 1; ++i) {
            acc = gf.add(acc, gf.mul(gf.from_int(c % p), alpha_pow[static_cast<std::size_t>(i)]));
            c /= p;
        }
        reps.push_back(acc);
    }

    NestedFamily fam;
    fam.modulus = p * pm1;
    fam.kind = PackingKind::CDP;
    fam.forbidden_order = 1;
    fam.index = 1;
    fam.members.resize(reps.size());
    for (std::size_t xi = 0; xi < reps.size(); ++xi) {
        for (std::size_t yi = 0; yi < reps.size(); ++yi) {
            std::vector<i64> elems;
            for (i64 b = 0; b < p; ++b) {
                const FieldElement diff = gf.sub(gf.sub(reps[yi], reps[xi]), gf.from_int(b));
                if (diff.enc == 0) continue;  // b = y - x, only on the diagonal
                elems.push_back(cr.combine(gf.dlog(diff), b));
            }
            fam.members[xi].push_back(Block(fam.modulus, std::move(elems)));
        }
        if (self_block_index) self_block_index->push_back(static_cast<i64>(xi));
    }
    return fam;
}

}  // namespace

Constructed construct_log_bncdp(i64 p, i64 m) {
    if (!is_prime(p)) raise(Errc::param_violation, "p must be prime");
    if (m < 2) raise(Errc::param_violation, "m must exceed 1");
    const GF gf = GF::create(p, m);
    NestedFamily fam = log_construction_base(p, m, gf, nullptr);
    const i64 pm1 = gf.order() - 1;
    if (!verify_nested(fam).ok)
        raise(Errc::internal_verification_failed, "log BNCDP failed verification");
    if (!family_representatives_ok(fam, pm1, 0, 0))
        raise(Errc::internal_verification_failed, "log BNCDP lost the residue system");
    Certificate cert = make_cert("construct_log_bncdp", params_str({{"p", p}, {"m", m}}), 0, fam);
    return {std::move(fam), std::move(cert)};
}

Constructed construct_log_bncrdp(i64 p, i64 m) {
    if (!is_prime(p)) raise(Errc::param_violation, "p must be prime");
    if (m < 2) raise(Errc::param_violation, "m must exceed 1");
    const GF gf = GF::create(p, m);
    std::vector<i64> self_idx;
    NestedFamily fam = log_construction_base(p, m, gf, &self_idx);
    const i64 pm1 = gf.order() - 1;
    const CrtMap cr = crt_split(pm1, p);
    const i64 removed = cr.combine(0, p - 1);
    for (std::size_t xi = 0; xi < fam.members.size(); ++xi) {
        Block& blk = fam.members[xi][static_cast<std::size_t>(self_idx[xi])];
        std::vector<i64> kept;
        for (i64 e : blk.elems)
            if (e != removed) kept.push_back(e);
        if (kept.size() + 1 != blk.elems.size())
            raise(Errc::internal_verification_failed, "expected element (0, p-1) missing from A^x_x");
        blk = kept.empty() ? Block{} : Block(fam.modulus, std::move(kept));
    }
    fam.kind = PackingKind::CRDP;
    fam.forbidden_order = p;
    if (!verify_nested(fam).ok)
        raise(Errc::internal_verification_failed, "log BNCRDP failed verification");
    if (!family_representatives_ok(fam, pm1, 0, 1))
        raise(Errc::internal_verification_failed, "log BNCRDP lost the representative property");
    Certificate cert = make_cert("construct_log_bncrdp", params_str({{"p", p}, {"m", m}}), 0, fam);
    return {std::move(fam), std::move(cert)};
}

Constructed construct_cyclotomic_bncrdp(i64 v, i64 u, i64 e) {
    if (v < 3 || u < 1 || e <= 1) raise(Errc::param_violation, "need v >= 3, u >= 1, e > 1");
    if (std::gcd(u, v) != 1) raise(Errc::param_violation, "gcd(u, v) must be 1");
    if (u % e != 0) raise(Errc::param_violation, "e must divide u");
    const auto vfac = factorize(v);
    i64 f = 0;
    for (auto [pi, mi] : vfac) {
        if ((pi - 1) % e != 0)
            raise(Errc::param_violation, "e must divide p_i - 1 for every prime factor of v");
        const i64 fi = (pi - 1) / e;
        f = (f == 0) ? fi : std::min(f, fi);
    }

    const CrtMap cr = crt_split(u, v);
    NestedFamily fam;
    fam.modulus = u * v;
    fam.kind = PackingKind::CRDP;
    fam.forbidden_order = u;
    fam.index = 1;
    fam.members.resize(static_cast<std::size_t>(f));

    // One level per proper divisor delta of v: the elements of Z_v with
    // gcd delta, i.e. delta times the units of Z_{v/delta}. Within a level
    // the blocks are the cosets of the diagonal order-e subgroup of the unit
    // group; member j twists by the j-th power of the diagonal generator and
    // the u-part steps by u/e along each coset.
    std::vector<i64> divisors;
    for (i64 delta = 1; delta < v; ++delta)
        if (v % delta == 0) divisors.push_back(delta);

    for (i64 delta : divisors) {
        const i64 w = v / delta;
        const auto wfac = factorize(w);
        std::vector<i64> comp_mod, comp_gen, comp_phi;
        for (auto [pi, ai] : wfac) {
            comp_mod.push_back(power_checked(pi, ai));
            comp_gen.push_back(primitive_root(comp_mod.back()));
            comp_phi.push_back(power_checked(pi, ai - 1) * (pi - 1));
        }
        const std::size_t r = comp_mod.size();
        // CRT composition inside Z_w from per-component residues
        auto compose_w = [&](const std::vector<i64>& res) {
            i64 z = 0;
            for (std::size_t i = 0; i < r; ++i) {
                const i64 mi = comp_mod[i], rest = w / mi;
                z = (z + res[i] * rest % w * mod_inverse(rest % mi, mi)) % w;
            }
            return z;
        };
        std::vector<i64> h(static_cast<std::size_t>(e));  // diagonal subgroup
        for (i64 c = 0; c < e; ++c) {
            std::vector<i64> res(r);
            for (std::size_t i = 0; i < r; ++i)
                res[i] = mod_pow(comp_gen[i], c * (comp_phi[i] / e), comp_mod[i]);
            h[static_cast<std::size_t>(c)] = compose_w(res);
        }
        std::vector<i64> twist(static_cast<std::size_t>(f));  // diagonal generator powers
        for (i64 j = 0; j < f; ++j) {
            std::vector<i64> res(r);
            for (std::size_t i = 0; i < r; ++i) res[i] = mod_pow(comp_gen[i], j, comp_mod[i]);
            twist[static_cast<std::size_t>(j)] = compose_w(res);
        }

        // coset representatives of the diagonal subgroup, ascending
        std::vector<char> marked(static_cast<std::size_t>(w), 0);
        for (i64 x = 1; x < w; ++x) {
            if (std::gcd(x, w) != 1 || marked[static_cast<std::size_t>(x)]) continue;
            for (i64 hc : h) marked[static_cast<std::size_t>(x * hc % w)] = 1;
            for (i64 j = 0; j < f; ++j) {
                std::vector<i64> elems;
                for (i64 c = 0; c < e; ++c) {
                    const i64 zw = x * twist[static_cast<std::size_t>(j)] % w *
                                   h[static_cast<std::size_t>(c)] % w;
                    const i64 zv = delta * zw % v;
                    elems.push_back(cr.combine(c * (u / e), zv));
                }
                fam.members[static_cast<std::size_t>(j)].push_back(Block(fam.modulus, std::move(elems)));
            }
        }
    }

    if (static_cast<i64>(fam.block_count()) != (v - 1) / e)
        raise(Errc::construction_failed, "cyclotomic block count mismatch");
    if (!verify_nested(fam).ok)
        raise(Errc::construction_failed, "cyclotomic BNCRDP failed verification");
    if (!family_representatives_ok(fam, v, 0, 1))
        raise(Errc::construction_failed, "cyclotomic BNCRDP lost the representative property");
    Certificate cert = make_cert("construct_cyclotomic_bncrdp", params_str({{"v", v}, {"u", u}, {"e", e}}), 0, fam);
    return {std::move(fam), std::move(cert)};
}

ChainConstructed construct_iterated_log_bncrdp(i64 p, const std::vector<i64>& u) {
    if (u.empty()) raise(Errc::param_violation, "u-list must be nonempty");
    if (!std::is_sorted(u.begin(), u.end()))
        raise(Errc::param_violation, "u-list must be nondecreasing");
    for (i64 ui : u)
        if (ui < 2) raise(Errc::param_violation, "discrete-log base case needs every u_i >= 2");

    ChainConstructed chain;
    {
        Constructed base = construct_log_bncrdp(p, u[0]);
        chain.family = std::move(base.family);
        chain.certs.push_back(std::move(base.cert));
    }
    const i64 members = power_checked(p, u[0] - 1);
    i64 y = power_checked(p, u[0]) - 1;
    for (std::size_t r = 1; r < u.size(); ++r) {
        const i64 qh = power_checked(p, u[static_cast<std::size_t>(r)]);
        Expanded grown = expand_by_log_crdp(chain.family, 1, qh);
        chain.certs.push_back(grown.cert);

        Constructed inner = construct_log_bncrdp(p, u[static_cast<std::size_t>(r)]);
        chain.certs.push_back(inner.cert);
        inner.family.members.resize(static_cast<std::size_t>(members));  // align member counts

        Expanded merged = compose_on_subgroup(grown.family, inner.family, p);
        chain.certs.push_back(merged.cert);
        chain.family = std::move(merged.family);
        y *= qh - 1;
    }
    if (chain.family.modulus != p * y ||
        !family_representatives_ok(chain.family, y, 0, 1))
        raise(Errc::internal_verification_failed, "iterated log BNCRDP invariant broke");
    return chain;
}

}  // namespace fhs
