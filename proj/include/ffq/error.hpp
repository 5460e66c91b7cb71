/*
   Copyright 2026 The ffq Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FFQ_ERROR_HPP
#define FFQ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffq {

enum class Errc {
    InvalidArgument,
    ParseError,
    CompositeModulus,
    EvenCharacteristic,
    DivisionByZeroPoly,
    BothZero,
    ConstantPolynomial,
    ZeroPolynomial,
    BudgetExceeded,
    DegreeExceedsN,
    DegreeMismatch,
    UnsupportedModulusShape,
    TrivialCharacter,
    RootFindingDidNotConverge,
    NotEvenPrimitive,
    ClosedFormNotAvailable,
    InvalidPartition,
    NotCoprime,
    InvalidShiftTuple,
    DuplicateShifts,
    ZeroShift,
    NotSquarefree,
    DegreeOutOfRange,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

   private:
    Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
        case Errc::CompositeModulus: return "CompositeModulus";
        case Errc::EvenCharacteristic: return "EvenCharacteristic";
        case Errc::DivisionByZeroPoly: return "DivisionByZeroPoly";
        case Errc::BothZero: return "BothZero";
        case Errc::ConstantPolynomial: return "ConstantPolynomial";
        case Errc::ZeroPolynomial: return "ZeroPolynomial";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::DegreeExceedsN: return "DegreeExceedsN";
        case Errc::DegreeMismatch: return "DegreeMismatch";
        case Errc::UnsupportedModulusShape: return "UnsupportedModulusShape";
        case Errc::TrivialCharacter: return "TrivialCharacter";
        case Errc::RootFindingDidNotConverge: return "RootFindingDidNotConverge";
        case Errc::NotEvenPrimitive: return "NotEvenPrimitive";
        case Errc::ClosedFormNotAvailable: return "ClosedFormNotAvailable";
        case Errc::InvalidPartition: return "InvalidPartition";
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::InvalidShiftTuple: return "InvalidShiftTuple";
        case Errc::DuplicateShifts: return "DuplicateShifts";
        case Errc::ZeroShift: return "ZeroShift";
        case Errc::NotSquarefree: return "NotSquarefree";
        case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    }
    return "Unknown";
}

}  // namespace ffq

#endif  // FFQ_ERROR_HPP
