// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace ocsim {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteInput : Error { using Error::Error; };
struct NotSquare : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ProbabilityOutOfRange : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct InvalidRate : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };
struct InvalidRange : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace ocsim
