#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "fhs/residue.hpp"

namespace fhs {

// Element of GF(p^k) in the polynomial basis, packed as the base-p integer
// sum c_i * p^i of its coordinates. All coordinates live in [0, p).
struct FieldElement {
    i64 enc = 0;
    auto operator<=>(const FieldElement&) const = default;
};

// Exact arithmetic in GF(p^k) with a fixed primitive element.
//
// Construction is deterministic: the modulus is the first monic irreducible
// polynomial of degree k in base-p encoding order, and alpha is the first
// element (in encoding order) of multiplicative order p^k - 1. Discrete logs
// go through a full power table, so fields are capped at 2^20 elements.
// Instances are immutable after creation; all operations are const and safe
// to share across threads.
class GF {
public:
    GF() = default;  // empty field descriptor; use create()
    static GF create(i64 p, i64 k);

    i64 characteristic() const { return p_; }
    i64 degree() const { return k_; }
    i64 order() const { return q_; }
    // Monic modulus polynomial, coefficient of x^i at index i (size k+1).
    const std::vector<i64>& modulus() const { return mod_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement alpha() const { return {alpha_enc_}; }

    // Prime-subfield element c * 1.
    FieldElement from_int(i64 c) const;
    std::vector<i64> coeffs(FieldElement x) const;
    FieldElement from_coeffs(const std::vector<i64>& c) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement pow(FieldElement a, i64 e) const;

    // alpha^t for any integer t (reduced mod q-1).
    FieldElement exp(i64 t) const;
    // Discrete log base alpha; LogOfZero on 0.
    i64 dlog(FieldElement x) const;
    i64 multiplicative_order(FieldElement x) const;

    // Degree m with base_q^m = order(); NotASubfield if none exists.
    i64 subfield_degree(i64 base_q) const;
    // Tr_{q^m/q}(x) = sum of x^{q^i}, returned as an element of this field
    // (it lands in the order-base_q subfield).
    FieldElement trace_to(i64 base_q, FieldElement x) const;
    // The order-base_q subfield {0} u {beta^j}, ascending by encoding.
    std::vector<FieldElement> subfield_elements(i64 base_q) const;

    // Canonical enumeration 0, 1, alpha, alpha^2, ... used wherever a fixed
    // injection into the field is required.
    std::vector<FieldElement> enumeration() const;

private:

    i64 p_ = 0, k_ = 0, q_ = 0;
    std::vector<i64> mod_;
    i64 alpha_enc_ = 0;
    std::vector<i64> exp_;  // exp_[t] = encoding of alpha^t, t in [0, q-1)
    std::vector<i64> log_;  // log_[enc] = t, log_[0] = -1

    std::vector<i64> decode(i64 enc) const;
    i64 encode(const std::vector<i64>& c) const;
    i64 mul_raw(i64 a, i64 b) const;  // polynomial multiplication mod modulus
};

// Explicit isomorphism table from an abstract GF(q) onto the order-q subfield
// of an extension: x (the modulus root of `sub`) is sent to a root of
// sub.modulus() inside `ext`, then extended linearly over the prime field.
struct SubfieldMap {
    i64 base_q = 0;
    std::vector<FieldElement> to_ext;   // indexed by abstract encoding
    std::map<i64, i64> to_sub;          // ext encoding -> abstract encoding
};

SubfieldMap build_subfield_map(const GF& ext, const GF& sub);

}  // namespace fhs
