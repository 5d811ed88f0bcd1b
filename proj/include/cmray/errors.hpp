#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmray {

enum class ErrorCode {
    NotADiscriminant,
    NotFundamental,
    NotImaginary,
    NotPrime,
    NotPrimeToModulus,
    ModulusTrivial,
    ModulusNotRational,
    NoSuchCharacter,
    NotInUpperHalfPlane,
    PrecisionUnattainable,
    PoleAtLatticePoint,
    LabelsEquivalent,
    InvalidLabel,
    DenominatorNotDividingN,
    NNotCoprimeTo6,
    ExceptionalField,
    PrincipalCharacter,
    TruncationTooSmall,
    GammaInvalid,
    SearchExhausted,
    RHSZero,
    InvalidArgument,
    Overflow,
};

constexpr std::string_view to_string(ErrorCode c)
{
    switch (c) {
    case ErrorCode::NotADiscriminant: return "NotADiscriminant";
    case ErrorCode::NotFundamental: return "NotFundamental";
    case ErrorCode::NotImaginary: return "NotImaginary";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotPrimeToModulus: return "NotPrimeToModulus";
    case ErrorCode::ModulusTrivial: return "ModulusTrivial";
    case ErrorCode::ModulusNotRational: return "ModulusNotRational";
    case ErrorCode::NoSuchCharacter: return "NoSuchCharacter";
    case ErrorCode::NotInUpperHalfPlane: return "NotInUpperHalfPlane";
    case ErrorCode::PrecisionUnattainable: return "PrecisionUnattainable";
    case ErrorCode::PoleAtLatticePoint: return "PoleAtLatticePoint";
    case ErrorCode::LabelsEquivalent: return "LabelsEquivalent";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::DenominatorNotDividingN: return "DenominatorNotDividingN";
    case ErrorCode::NNotCoprimeTo6: return "NNotCoprimeTo6";
    case ErrorCode::ExceptionalField: return "ExceptionalField";
    case ErrorCode::PrincipalCharacter: return "PrincipalCharacter";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::GammaInvalid: return "GammaInvalid";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::RHSZero: return "RHSZero";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

/// All library failures are reported through this one exception type; the
/// code distinguishes the contract that was violated.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string const& what) { throw Error(code, what); }

} // namespace cmray
