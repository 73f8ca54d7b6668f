// SPDX-License-Identifier: Apache-2.0
//
// risisac: RIS-assisted ISAC sensing-accuracy optimization toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risisac/error.hpp"

namespace risisac
{
    std::string_view to_string(ErrorCode code) noexcept
    {
        switch (code)
        {
        case ErrorCode::NonHermitian:
            return "NonHermitian";
        case ErrorCode::NonFinite:
            return "NonFinite";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::InvalidConfig:
            return "InvalidConfig";
        case ErrorCode::DegenerateGeometry:
            return "DegenerateGeometry";
        case ErrorCode::InvalidAlpha:
            return "InvalidAlpha";
        case ErrorCode::SingularFim:
            return "SingularFIM";
        case ErrorCode::RecoveryFailed:
            return "RecoveryFailed";
        case ErrorCode::EmptyFeasibleSet:
            return "EmptyFeasibleSet";
        case ErrorCode::InfeasibleScenario:
            return "InfeasibleScenario";
        case ErrorCode::SubproblemFailure:
            return "SubproblemFailure";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::ValidationError:
            return "ValidationError";
        case ErrorCode::IoError:
            return "IoError";
        }
        return "Unknown";
    }
} // namespace risisac
