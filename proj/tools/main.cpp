// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/cli.hpp"

int main(int argc, char** argv) { return ocsim::cli_main(argc, argv); }
