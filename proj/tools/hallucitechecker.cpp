// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "hallucite/report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hallucite::run_cli(std::move(args), std::cout, std::cerr);
}
