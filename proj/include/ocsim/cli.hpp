// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace ocsim {

/// Command-line entry point (subcommands: run, sweep, certify, reference).
/// Returns 0 on success, 1 on invalid usage or configuration, 2 when a
/// certification check fails.
int cli_main(int argc, const char* const* argv);

}  // namespace ocsim
