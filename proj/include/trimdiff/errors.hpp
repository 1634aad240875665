// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace trimdiff {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// kinematics
struct ChannelClosed : Error {
    using Error::Error;
};
struct EvanescentOrder : Error {
    using Error::Error;
};
struct TotalReflection : Error {
    using Error::Error;
};
struct DegenerateIncidence : Error {
    using Error::Error;
};

// grating geometry
struct GeometryError : Error {
    using Error::Error;
};

// configuration / parsing
struct ParseError : Error {
    using Error::Error;
};
struct MissingParameter : Error {
    using Error::Error;
};

// solvers
struct GridTooCoarse : Error {
    using Error::Error;
};
struct NoBoundState : Error {
    using Error::Error;
};
struct QuadratureNotConverged : Error {
    using Error::Error;
};
struct StrengthNotCalibrated : Error {
    using Error::Error;
};
struct MeshNotConverged : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct WindowEmpty : Error {
    using Error::Error;
};

// fitting
struct AllUnassigned : Error {
    using Error::Error;
};
struct NonIdentifiable : Error {
    using Error::Error;
};

}  // namespace trimdiff
