#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "mpfj/network.hpp"

namespace mpfj {

class SpecFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Network spec document:
//   {"name": "...",
//    "nodes": [{"id": 1, "initial_buffer": 0 | "inf"}, ...],
//    "arcs": [[1, 2], ...],
//    "service": {"1": {"kind": "constant", "value": 2}, ...}}
// Ids are one-based and must cover 1..n exactly once. Unknown keys are
// rejected. Service kinds: constant{value}, explicit{values, on_exhaust},
// uniform{lo, hi, seed}, exponential{rate, seed},
// strided{stride, offset, source}.
NetworkSpec parse_spec(const std::string& json_text);
NetworkSpec load_spec(const std::filesystem::path& path);

std::string dump_spec(const NetworkSpec& spec);

}  // namespace mpfj
