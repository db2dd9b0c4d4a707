/**************************************************************************
 * Copyright 2026 The delcodes Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delcodes {

enum class Errc {
    NotPrimePower,
    FieldMismatch,
    DivisionByZero,
    AlphabetMismatch,
    NotBinary,
    OutOfRange,
    LengthMismatch,
    GuardExceeded,
    TargetUnreachable,
    IndexOutOfRange,
    NoMatch,
    Ambiguous,
    DecodeFailure,
    InfeasibleAtDeskScale,
    InvalidOverride,
    PatternOutOfRange,
    BudgetExceeded,
    ParseError,
    KindMismatch,
};

constexpr std::string_view to_string(Errc e) noexcept {
    switch (e) {
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::NotBinary: return "NotBinary";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::GuardExceeded: return "GuardExceeded";
    case Errc::TargetUnreachable: return "TargetUnreachable";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NoMatch: return "NoMatch";
    case Errc::Ambiguous: return "Ambiguous";
    case Errc::DecodeFailure: return "DecodeFailure";
    case Errc::InfeasibleAtDeskScale: return "InfeasibleAtDeskScale";
    case Errc::InvalidOverride: return "InvalidOverride";
    case Errc::PatternOutOfRange: return "PatternOutOfRange";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::KindMismatch: return "KindMismatch";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace delcodes
