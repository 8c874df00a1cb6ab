// Copyright 2026 Sparse Ising Machine Developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sparseising {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A spin configuration does not match the model's node set.
struct InvalidConfigurationError : Error {
    using Error::Error;
};

// A numeric or structural argument is out of its documented domain.
struct ParameterError : Error {
    using Error::Error;
};

// The instance exceeds the exhaustive-enumeration limit.
struct SizeLimitError : Error {
    using Error::Error;
};

// An embedding violates one or more of its invariants.
struct ValidationError : Error {
    using Error::Error;
};

// File access or JSON parsing failed.
struct IoError : Error {
    using Error::Error;
};

// A chain graph is malformed (e.g. disconnected) for the requested computation.
struct StructuralError : Error {
    using Error::Error;
};

// Every admissible chain partition has zero volume.
struct DegenerateVolumeError : Error {
    using Error::Error;
};

// A requested consistency threshold exceeds the lambda -> infinity limit.
struct SaturationError : Error {
    SaturationError(const std::string& what, double limit) : Error(what), limit(limit) {}
    double limit;
};

// An eigensolve or normalization produced values outside their proven range.
struct NumericalError : Error {
    using Error::Error;
};

// A label lookup failed.
struct LookupError : Error {
    using Error::Error;
};

}  // namespace sparseising
