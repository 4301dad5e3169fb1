#include "fhs/packing.hpp"

#include <algorithm>
#include <sstream>

#include "fhs/errors.hpp"

namespace fhs {

namespace {

// accumulate ordered pairwise differences of a block into counts
void add_internal(const Block& b, std::vector<i64>& counts, i64 n) {
    for (i64 x : b.elems)
        for (i64 y : b.elems)
            if (x != y) ++counts[static_cast<std::size_t>(((y - x) % n + n) % n)];
}

void add_external(const Block& a, const Block& b, std::vector<i64>& counts, i64 n) {
    for (i64 x : a.elems)
        for (i64 y : b.elems) ++counts[static_cast<std::size_t>(((y - x) % n + n) % n)];
}

// residues of the forbidden subgroup (n/g)Z_n; for a CDP just {0}
bool in_forbidden(i64 r, i64 n, PackingKind kind, i64 g) {
    if (kind == PackingKind::CDP) return r == 0;
    return r % (n / g) == 0;
}

void check_counts(const std::vector<i64>& counts, i64 n, PackingKind kind, i64 g, i64 index,
                  bool pairwise, const std::string& where, VerifyReport& rep) {
    for (i64 r = 0; r < n; ++r) {
        const i64 c = counts[static_cast<std::size_t>(r)];
        if (c == 0) continue;
        i64 limit;
        if (kind == PackingKind::CRDP)
            limit = in_forbidden(r, n, kind, g) ? 0 : index;
        else
            limit = (!pairwise && r == 0) ? 0 : index;
        if (c > limit) {
            rep.ok = false;
            rep.violations.push_back({where, r, c, limit});
        }
    }
}

void validate_shape(const NestedFamily& f) {
    if (f.modulus <= 0) raise(Errc::precondition_violated, "family modulus must be positive");
    if (f.kind == PackingKind::CRDP &&
        (f.forbidden_order < 1 || f.modulus % f.forbidden_order != 0))
        raise(Errc::bad_divisor, "forbidden subgroup order must divide the modulus");
    if (f.members.empty()) raise(Errc::size_mismatch, "family has no members");
    const std::size_t u = f.members[0].size();
    for (const auto& m : f.members) {
        if (m.size() != u)
            raise(Errc::size_mismatch, "members must have equal block counts for positional pairing");
        for (const auto& b : m)
            if (b.modulus != f.modulus && !(b.empty() && b.modulus == 0))
                raise(Errc::modulus_mismatch, "block modulus differs from family modulus");
    }
}

}  // namespace

Packing NestedFamily::member_packing(std::size_t j) const {
    return Packing{modulus, kind, forbidden_order, index, members.at(j)};
}

i64 NestedFamily::member_weight(std::size_t j) const {
    i64 w = 0;
    for (const auto& b : members.at(j)) w += static_cast<i64>(b.size());
    return w;
}

VerifyReport verify_packing(const Packing& p) {
    VerifyReport rep;
    std::vector<i64> counts(static_cast<std::size_t>(p.modulus), 0);
    for (const auto& b : p.blocks) add_internal(b, counts, p.modulus);
    check_counts(counts, p.modulus, p.kind, p.forbidden_order, p.index, false, "packing", rep);
    return rep;
}

VerifyReport verify_nested_at(const NestedFamily& f, i64 index) {
    validate_shape(f);
    VerifyReport rep;
    const i64 n = f.modulus;
    std::vector<i64> counts(static_cast<std::size_t>(n), 0);
    for (std::size_t j = 0; j < f.members.size(); ++j) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& b : f.members[j]) add_internal(b, counts, n);
        check_counts(counts, n, f.kind, f.forbidden_order, index, false,
                     "member " + std::to_string(j), rep);
    }
    for (std::size_t j = 0; j < f.members.size(); ++j) {
        for (std::size_t j2 = 0; j2 < f.members.size(); ++j2) {
            if (j == j2) continue;
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t i = 0; i < f.members[j].size(); ++i)
                add_external(f.members[j][i], f.members[j2][i], counts, n);
            check_counts(counts, n, f.kind, f.forbidden_order, index, true,
                         "pair (" + std::to_string(j) + "," + std::to_string(j2) + ")", rep);
        }
    }
    return rep;
}

VerifyReport verify_nested(const NestedFamily& f) { return verify_nested_at(f, f.index); }

bool verify_partition_type(const NestedFamily& f, bool allow_empty) {
    validate_shape(f);
    const i64 n = f.modulus;
    for (const auto& member : f.members) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        i64 total = 0;
        for (const auto& b : member) {
            if (b.empty() && !allow_empty) return false;
            for (i64 x : b.elems) {
                if (seen[static_cast<std::size_t>(x)]) return false;
                seen[static_cast<std::size_t>(x)] = 1;
                ++total;
            }
        }
        if (total != n) return false;
    }
    return true;
}

std::vector<i64> compute_di(const NestedFamily& f, i64 upto) {
    if (!verify_partition_type(f, true))
        raise(Errc::not_partition_type, "d_i profile requires a partition-type family");
    const i64 n = f.modulus;
    const std::size_t M = f.members.size();

    // symbol arrays: sym[j][t] = block index containing t in member j
    std::vector<std::vector<i64>> sym(M, std::vector<i64>(static_cast<std::size_t>(n), -1));
    for (std::size_t j = 0; j < M; ++j)
        for (std::size_t i = 0; i < f.members[j].size(); ++i)
            for (i64 x : f.members[j][i].elems) sym[j][static_cast<std::size_t>(x)] = static_cast<i64>(i);

    std::vector<i64> d(static_cast<std::size_t>(std::max<i64>(upto, 0)), n);
    std::vector<i64> positions;
    positions.reserve(static_cast<std::size_t>(n));
    for (std::size_t X = 0; X < M; ++X) {
        for (std::size_t Y = X; Y < M; ++Y) {
            const i64 tau_begin = (X == Y) ? 1 : 0;
            for (i64 tau = tau_begin; tau < n; ++tau) {
                positions.clear();
                for (i64 a = 0; a < n; ++a)
                    if (sym[X][static_cast<std::size_t>(a)] ==
                        sym[Y][static_cast<std::size_t>((a + tau) % n)])
                        positions.push_back(a);
                const i64 u = static_cast<i64>(positions.size());
                if (u == 0) continue;
                const i64 top = std::min<i64>(upto, u);
                for (i64 i = 1; i <= top; ++i) {
                    i64 best = n;
                    for (i64 j = 0; j < u; ++j) {
                        i64 diff = positions[static_cast<std::size_t>((j + i) % u)] -
                                   positions[static_cast<std::size_t>(j)];
                        diff = ((diff % n) + n) % n;
                        if (diff == 0) diff = n;  // least positive residue
                        best = std::min(best, diff);
                    }
                    auto& slot = d[static_cast<std::size_t>(i - 1)];
                    slot = std::min(slot, best);
                }
            }
        }
    }
    return d;
}

bool family_representatives_ok(const NestedFamily& f, i64 c, i64 fill_step, i64 fill_count) {
    std::vector<i64> fill;
    fill.reserve(static_cast<std::size_t>(fill_count));
    for (i64 j = 0; j < fill_count; ++j) fill.push_back(j * fill_step);
    for (const auto& member : f.members) {
        std::vector<i64> elems;
        for (const auto& b : member) elems.insert(elems.end(), b.elems.begin(), b.elems.end());
        if (!is_complete_coset_representatives(elems, f.modulus, c, fill)) return false;
    }
    return true;
}

std::uint64_t family_digest(const NestedFamily& f) {
    const std::string text = serialize_family(f);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string serialize_family(const NestedFamily& f) {
    std::ostringstream out;
    out << "PACKING n=" << f.modulus << " kind=" << (f.kind == PackingKind::CDP ? "CDP" : "CRDP")
        << " g=" << f.forbidden_order << " lambda=" << f.index << " members=" << f.members.size()
        << "\n";
    for (std::size_t j = 0; j < f.members.size(); ++j) {
        if (j > 0) out << "--\n";
        for (const auto& b : f.members[j]) {
            for (std::size_t i = 0; i < b.elems.size(); ++i) {
                if (i > 0) out << ' ';
                out << b.elems[i];
            }
            out << "\n";
        }
    }
    return out.str();
}

NestedFamily parse_family(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) raise(Errc::parse_error, "empty packing file");
    NestedFamily f;
    i64 member_count = 0;
    {
        std::istringstream hs(header);
        std::string tag;
        hs >> tag;
        if (tag != "PACKING") raise(Errc::parse_error, "missing PACKING header");
        std::string kv;
        while (hs >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) raise(Errc::parse_error, "bad header field: " + kv);
            const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "n") f.modulus = std::stoll(val);
            else if (key == "kind") {
                if (val == "CDP") f.kind = PackingKind::CDP;
                else if (val == "CRDP") f.kind = PackingKind::CRDP;
                else raise(Errc::parse_error, "unknown packing kind: " + val);
            } else if (key == "g") f.forbidden_order = std::stoll(val);
            else if (key == "lambda") f.index = std::stoll(val);
            else if (key == "members") member_count = std::stoll(val);
            else raise(Errc::parse_error, "unknown header key: " + key);
        }
    }
    if (f.modulus <= 0 || member_count <= 0) raise(Errc::parse_error, "bad packing header");
    f.members.emplace_back();
    std::string line;
    while (std::getline(in, line)) {
        if (line == "--") {
            f.members.emplace_back();
            continue;
        }
        std::istringstream ls(line);
        std::vector<i64> elems;
        i64 x;
        while (ls >> x) elems.push_back(x);
        f.members.back().push_back(elems.empty() ? Block{} : Block(f.modulus, std::move(elems)));
    }
    if (static_cast<i64>(f.members.size()) != member_count)
        raise(Errc::parse_error, "member count mismatch");
    return f;
}

}  // namespace fhs
