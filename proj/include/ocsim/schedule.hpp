// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "ocsim/errors.hpp"

namespace ocsim {

enum class ScheduleKind { UniformIid, Constant, CustomList };

/// Dephasing-probability schedule specification.
///
/// UniformIid draws p_t uniformly in [p_min, p_max) with the degenerate
/// p_min == p_max case producing the constant p_min. Constant yields p_min
/// at every step. CustomList returns `custom` verbatim (its length defines
/// the horizon). Generation is deterministic in `seed` and bit-identical
/// across platforms.
struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::UniformIid;
  double p_min = 0.2;
  double p_max = 0.2;
  int horizon = 150;
  std::uint64_t seed = 0;
  std::vector<double> custom;
};

std::vector<double> gen_schedule(const ScheduleSpec& spec);

}  // namespace ocsim
