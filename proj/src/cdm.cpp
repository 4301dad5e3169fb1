#include "fhs/cdm.hpp"

#include <string>

#include "fhs/errors.hpp"

namespace fhs {

namespace {

// marks entries with a per-call stamp so the scratch buffer never needs
// clearing between rows
struct PermChecker {
    std::vector<i64> stamp;
    i64 tick = 0;

    explicit PermChecker(i64 w) : stamp(static_cast<std::size_t>(w), -1) {}

    bool row_is_permutation(const std::vector<i64>& row, i64 w) {
        if (static_cast<i64>(row.size()) != w) return false;
        ++tick;
        for (i64 x : row) {
            if (x < 0 || x >= w || stamp[static_cast<std::size_t>(x)] == tick) return false;
            stamp[static_cast<std::size_t>(x)] = tick;
        }
        return true;
    }
};

}  // namespace

Cdm build_homogeneous_cdm(i64 w, i64 t) {
    if (w < 1 || t < 1) raise(Errc::precondition_violated, "cdm needs w >= 1 and t >= 1");
    if (w % 2 == 0) raise(Errc::precondition_violated, "cdm modulus must be odd");
    if (w > 1 && least_prime_factor(w) <= t)
        raise(Errc::precondition_violated, "least prime factor of w=" + std::to_string(w) +
                                               " must exceed t=" + std::to_string(t));
    Cdm m;
    m.w = w;
    m.t = t;
    m.rows.assign(static_cast<std::size_t>(t), std::vector<i64>(static_cast<std::size_t>(w), 0));
    for (i64 i = 1; i <= t; ++i)
        for (i64 j = 0; j < w; ++j) m.rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] = i * j % w;
    if (!verify_cdm(m)) raise(Errc::internal_verification_failed, "constructed cdm is not homogeneous");
    return m;
}

bool verify_cdm(const Cdm& m) {
    if (m.w < 1 || static_cast<i64>(m.rows.size()) != m.t) return false;
    PermChecker check(m.w);
    for (const auto& row : m.rows)
        if (!check.row_is_permutation(row, m.w)) return false;
    std::vector<i64> diff(static_cast<std::size_t>(m.w), 0);
    for (std::size_t a = 0; a < m.rows.size(); ++a) {
        for (std::size_t b = a + 1; b < m.rows.size(); ++b) {
            for (i64 j = 0; j < m.w; ++j) {
                i64 d = m.rows[b][static_cast<std::size_t>(j)] - m.rows[a][static_cast<std::size_t>(j)];
                diff[static_cast<std::size_t>(j)] = d < 0 ? d + m.w : d;
            }
            if (!check.row_is_permutation(diff, m.w)) return false;
        }
    }
    return true;
}

}  // namespace fhs
