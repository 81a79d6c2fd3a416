/*
 * Copyright 2026 The Frechet Oracle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace frechet {

/// Bad parameters or violated preconditions supplied by the caller.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// An internal guarantee did not hold (e.g. a sub-oracle answered NO where
/// the analysis says it cannot). Always a bug or a numerical breakdown.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed curve file, index file or checkpoint.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace frechet
