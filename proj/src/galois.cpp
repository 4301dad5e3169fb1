#include "fhs/galois.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fhs/errors.hpp"

namespace fhs {

namespace {

constexpr i64 kMaxFieldOrder = 1 << 20;

// dense polynomial helpers over Z_p, coefficient of x^i at index i
void trim(std::vector<i64>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<i64> poly_mod(std::vector<i64> a, const std::vector<i64>& m, i64 p) {
    // m is monic
    while (a.size() >= m.size()) {
        i64 lead = a.back();
        if (lead != 0) {
            std::size_t shift = a.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i) {
                a[shift + i] = (a[shift + i] - lead * m[i]) % p;
                if (a[shift + i] < 0) a[shift + i] += p;
            }
        }
        a.pop_back();
    }
    trim(a);
    return a;
}

std::vector<i64> poly_mul(const std::vector<i64>& a, const std::vector<i64>& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<i64> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    trim(c);
    return c;
}

bool poly_divides(const std::vector<i64>& d, const std::vector<i64>& f, i64 p) {
    // d monic; true iff d | f
    return poly_mod(f, d, p).empty();
}

// irreducibility over GF(p) by trial division by all monic polynomials of
// degree <= deg/2
bool is_irreducible(const std::vector<i64>& f, i64 p) {
    const i64 deg = static_cast<i64>(f.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    for (i64 d = 1; 2 * d <= deg; ++d) {
        const i64 count = power_checked(p, d);
        for (i64 code = 0; code < count; ++code) {
            std::vector<i64> cand(static_cast<std::size_t>(d) + 1, 0);
            i64 c = code;
            for (i64 i = 0; i < d; ++i) { cand[static_cast<std::size_t>(i)] = c % p; c /= p; }
            cand[static_cast<std::size_t>(d)] = 1;
            if (poly_divides(cand, f, p)) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<i64> GF::decode(i64 enc) const {
    std::vector<i64> c(static_cast<std::size_t>(k_), 0);
    for (i64 i = 0; i < k_; ++i) { c[static_cast<std::size_t>(i)] = enc % p_; enc /= p_; }
    return c;
}

i64 GF::encode(const std::vector<i64>& c) const {
    i64 enc = 0;
    for (i64 i = k_ - 1; i >= 0; --i) {
        i64 v = i < static_cast<i64>(c.size()) ? ((c[static_cast<std::size_t>(i)] % p_) + p_) % p_ : 0;
        enc = enc * p_ + v;
    }
    return enc;
}

i64 GF::mul_raw(i64 a, i64 b) const {
    auto prod = poly_mul(decode(a), decode(b), p_);
    return encode(poly_mod(std::move(prod), mod_, p_));
}

GF GF::create(i64 p, i64 k) {
    if (!is_prime(p)) raise(Errc::non_prime_characteristic, "characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) raise(Errc::param_violation, "extension degree must be >= 1");
    __int128 q = 1;
    for (i64 i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxFieldOrder)
            raise(Errc::range_exceeded, "field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^20");
    }

    GF f;
    f.p_ = p;
    f.k_ = k;
    f.q_ = static_cast<i64>(q);

    // first irreducible monic polynomial in base-p encoding order
    const i64 lower_count = power_checked(p, k);
    for (i64 code = 0; code < lower_count; ++code) {
        std::vector<i64> cand(static_cast<std::size_t>(k) + 1, 0);
        i64 c = code;
        for (i64 i = 0; i < k; ++i) { cand[static_cast<std::size_t>(i)] = c % p; c /= p; }
        cand[static_cast<std::size_t>(k)] = 1;
        if (is_irreducible(cand, p)) { f.mod_ = std::move(cand); break; }
    }
    if (f.mod_.empty()) raise(Errc::internal_verification_failed, "no irreducible modulus found");

    // first element of full multiplicative order, checked via the
    // factorization of q - 1
    auto fac = factorize(std::max<i64>(f.q_ - 1, 1));
    auto order_is_full = [&](i64 enc) {
        if (enc == 0) return false;
        if (f.q_ == 2) return enc == 1;
        // enc^{(q-1)/r} != 1 for every prime r | q-1
        for (auto [r, e] : fac) {
            i64 acc = 1, b = enc, ex = (f.q_ - 1) / r;
            while (ex > 0) {
                if (ex & 1) acc = f.mul_raw(acc, b);
                b = f.mul_raw(b, b);
                ex >>= 1;
            }
            if (acc == 1) return false;
        }
        return true;
    };
    f.alpha_enc_ = 0;
    for (i64 enc = 1; enc < f.q_; ++enc)
        if (order_is_full(enc)) { f.alpha_enc_ = enc; break; }
    if (f.alpha_enc_ == 0) raise(Errc::internal_verification_failed, "no primitive element found");

    f.exp_.assign(static_cast<std::size_t>(f.q_ - 1), 0);
    f.log_.assign(static_cast<std::size_t>(f.q_), -1);
    i64 cur = 1;
    for (i64 t = 0; t < f.q_ - 1; ++t) {
        f.exp_[static_cast<std::size_t>(t)] = cur;
        if (f.log_[static_cast<std::size_t>(cur)] != -1)
            raise(Errc::internal_verification_failed, "designated alpha does not have order q-1");
        f.log_[static_cast<std::size_t>(cur)] = t;
        cur = f.mul_raw(cur, f.alpha_enc_);
    }
    if (cur != 1) raise(Errc::internal_verification_failed, "power table did not close");
    return f;
}

FieldElement GF::from_int(i64 c) const { return {((c % p_) + p_) % p_}; }

std::vector<i64> GF::coeffs(FieldElement x) const { return decode(x.enc); }

FieldElement GF::from_coeffs(const std::vector<i64>& c) const { return {encode(c)}; }

FieldElement GF::add(FieldElement a, FieldElement b) const {
    i64 ea = a.enc, eb = b.enc, out = 0, place = 1;
    for (i64 i = 0; i < k_; ++i) {
        out += ((ea + eb) % p_) * place;
        ea /= p_;
        eb /= p_;
        place *= p_;
    }
    return {out};
}

FieldElement GF::neg(FieldElement a) const {
    i64 ea = a.enc, out = 0, place = 1;
    for (i64 i = 0; i < k_; ++i) {
        out += ((p_ - ea % p_) % p_) * place;
        ea /= p_;
        place *= p_;
    }
    return {out};
}

FieldElement GF::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement GF::mul(FieldElement a, FieldElement b) const {
    if (a.enc == 0 || b.enc == 0) return {0};
    return exp(log_[static_cast<std::size_t>(a.enc)] + log_[static_cast<std::size_t>(b.enc)]);
}

FieldElement GF::inv(FieldElement a) const {
    if (a.enc == 0) raise(Errc::log_of_zero, "inverse of zero");
    return exp(-log_[static_cast<std::size_t>(a.enc)]);
}

FieldElement GF::pow(FieldElement a, i64 e) const {
    if (a.enc == 0) {
        if (e <= 0) raise(Errc::log_of_zero, "0 to a non-positive power");
        return {0};
    }
    const i64 g = q_ - 1;
    i64 t = log_[static_cast<std::size_t>(a.enc)] % g;
    __int128 prod = static_cast<__int128>(t) * (e % g);
    return exp(static_cast<i64>(((prod % g) + g) % g));
}

FieldElement GF::exp(i64 t) const {
    const i64 g = q_ - 1;
    t = ((t % g) + g) % g;
    return {exp_[static_cast<std::size_t>(t)]};
}

i64 GF::dlog(FieldElement x) const {
    if (x.enc == 0) raise(Errc::log_of_zero, "discrete log of zero");
    return log_[static_cast<std::size_t>(x.enc)];
}

i64 GF::multiplicative_order(FieldElement x) const {
    if (x.enc == 0) raise(Errc::log_of_zero, "order of zero");
    const i64 g = q_ - 1;
    return g / std::gcd(g, dlog(x));
}

i64 GF::subfield_degree(i64 base_q) const {
    if (base_q >= 2) {
        i64 acc = base_q;
        for (i64 m = 1; acc <= q_; ++m) {
            if (acc == q_) return m;
            acc *= base_q;
        }
    }
    raise(Errc::not_a_subfield, std::to_string(base_q) + " does not generate a subfield of order " +
                                    std::to_string(q_));
}

FieldElement GF::trace_to(i64 base_q, FieldElement x) const {
    const i64 m = subfield_degree(base_q);
    if (x.enc == 0) return {0};
    const i64 t = dlog(x);
    FieldElement acc = {0};
    i64 qpow = 1;
    for (i64 i = 0; i < m; ++i) {
        acc = add(acc, exp(t * qpow));
        qpow *= base_q;
    }
    return acc;
}

std::vector<FieldElement> GF::subfield_elements(i64 base_q) const {
    subfield_degree(base_q);  // validates
    std::vector<FieldElement> out;
    out.push_back({0});
    const i64 step = (q_ - 1) / (base_q - 1);
    for (i64 j = 0; j < base_q - 1; ++j) out.push_back(exp(j * step));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FieldElement> GF::enumeration() const {
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(q_));
    out.push_back({0});
    for (i64 t = 0; t < q_ - 1; ++t) out.push_back(exp(t));
    return out;
}

SubfieldMap build_subfield_map(const GF& ext, const GF& sub) {
    if (sub.characteristic() != ext.characteristic())
        raise(Errc::not_a_subfield, "characteristic mismatch");
    ext.subfield_degree(sub.order());

    // image of the modulus root of `sub`: any subfield element annihilated by
    // sub.modulus()
    const auto& m = sub.modulus();
    FieldElement root{-1};
    for (FieldElement cand : ext.subfield_elements(sub.order())) {
        FieldElement acc = {0}, xp = {1};
        for (i64 ci : m) {
            acc = ext.add(acc, ext.mul(ext.from_int(ci), xp));
            xp = ext.mul(xp, cand);
        }
        if (acc.enc == 0) { root = cand; break; }
    }
    if (root.enc < 0) raise(Errc::internal_verification_failed, "no modulus root in extension");

    SubfieldMap map;
    map.base_q = sub.order();
    map.to_ext.resize(static_cast<std::size_t>(sub.order()));
    for (i64 e = 0; e < sub.order(); ++e) {
        auto c = sub.coeffs({e});
        FieldElement acc = {0}, xp = {1};
        for (i64 ci : c) {
            acc = ext.add(acc, ext.mul(ext.from_int(ci), xp));
            xp = ext.mul(xp, root);
        }
        map.to_ext[static_cast<std::size_t>(e)] = acc;
        map.to_sub[acc.enc] = e;
    }
    if (map.to_sub.size() != static_cast<std::size_t>(sub.order()))
        raise(Errc::internal_verification_failed, "subfield embedding is not injective");
    return map;
}

}  // namespace fhs
