// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/schedule.hpp"

#include "ocsim/rng.hpp"

namespace ocsim {

std::vector<double> gen_schedule(const ScheduleSpec& spec) {
  if (spec.kind == ScheduleKind::CustomList) {
    if (spec.custom.empty())
      throw InvalidRange("gen_schedule: custom list is empty");
    for (double p : spec.custom)
      if (!(p >= 0.0 && p <= 1.0))
        throw InvalidRange("gen_schedule: custom probability out of [0, 1]");
    return spec.custom;
  }
  if (!(spec.p_min >= 0.0 && spec.p_min <= spec.p_max && spec.p_max <= 1.0))
    throw InvalidRange("gen_schedule: need 0 <= p_min <= p_max <= 1");
  if (spec.horizon < 1) throw InvalidRange("gen_schedule: horizon must be >= 1");

  std::vector<double> out(static_cast<std::size_t>(spec.horizon), spec.p_min);
  if (spec.kind == ScheduleKind::UniformIid && spec.p_max > spec.p_min) {
    SplitMix64 rng(spec.seed);
    for (double& p : out)
      p = spec.p_min + rng.next_double() * (spec.p_max - spec.p_min);
  }
  return out;
}

}  // namespace ocsim
