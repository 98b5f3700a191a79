// Copyright 2026 The pshqm Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace pshqm {

/// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PSHQM_DEFINE_ERROR(Name)                                 \
  struct Name : Error {                                          \
    explicit Name(const std::string& what) : Error(what) {}      \
  }

PSHQM_DEFINE_ERROR(DimensionMismatch);
PSHQM_DEFINE_ERROR(NotDiagonalizable);
PSHQM_DEFINE_ERROR(NonConvergence);
PSHQM_DEFINE_ERROR(DegenerateSpectrum);
PSHQM_DEFINE_ERROR(NotHermitian);
PSHQM_DEFINE_ERROR(NotPositiveDefinite);
PSHQM_DEFINE_ERROR(ComplexSpectrum);
PSHQM_DEFINE_ERROR(MetricMismatch);
PSHQM_DEFINE_ERROR(ZeroState);
PSHQM_DEFINE_ERROR(CoincidentStates);
PSHQM_DEFINE_ERROR(NeverReaches);
PSHQM_DEFINE_ERROR(DependentStates);

#undef PSHQM_DEFINE_ERROR

}  // namespace pshqm
