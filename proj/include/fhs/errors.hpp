#pragma once

#include <stdexcept>
#include <string>

namespace fhs {

// Error codes mirror the failure modes of the library operations. Each
// operation documents which codes it can raise.
enum class Errc {
    non_prime_characteristic,
    range_exceeded,
    not_a_subfield,
    log_of_zero,
    modulus_mismatch,
    not_coprime,
    bad_divisor,
    size_mismatch,
    not_partition_type,
    precondition_violated,
    param_violation,
    internal_verification_failed,
    representative_gap_mismatch,
    construction_failed,
    structure_mismatch,
    representative_violation,
    cdm_too_small,
    gcd_violation,
    field_too_small,
    di_floor_violated,
    window_out_of_range,
    degenerate_parameters,
    internal_inconsistency,
    unknown_family,
    validation_failed,
    parse_error,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::non_prime_characteristic: return "NonPrimeCharacteristic";
        case Errc::range_exceeded: return "RangeExceeded";
        case Errc::not_a_subfield: return "NotASubfield";
        case Errc::log_of_zero: return "LogOfZero";
        case Errc::modulus_mismatch: return "ModulusMismatch";
        case Errc::not_coprime: return "NotCoprime";
        case Errc::bad_divisor: return "BadDivisor";
        case Errc::size_mismatch: return "SizeMismatch";
        case Errc::not_partition_type: return "NotPartitionType";
        case Errc::precondition_violated: return "PreconditionViolated";
        case Errc::param_violation: return "ParamViolation";
        case Errc::internal_verification_failed: return "InternalVerificationFailed";
        case Errc::representative_gap_mismatch: return "RepresentativeGapMismatch";
        case Errc::construction_failed: return "ConstructionFailed";
        case Errc::structure_mismatch: return "StructureMismatch";
        case Errc::representative_violation: return "RepresentativeViolation";
        case Errc::cdm_too_small: return "CDMTooSmall";
        case Errc::gcd_violation: return "GcdViolation";
        case Errc::field_too_small: return "FieldTooSmall";
        case Errc::di_floor_violated: return "DiFloorViolated";
        case Errc::window_out_of_range: return "WindowOutOfRange";
        case Errc::degenerate_parameters: return "DegenerateParameters";
        case Errc::internal_inconsistency: return "InternalInconsistency";
        case Errc::unknown_family: return "UnknownFamily";
        case Errc::validation_failed: return "ValidationFailed";
        case Errc::parse_error: return "ParseError";
    }
    return "Error";
}

}  // namespace fhs
