#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpfj/network.hpp"

namespace mpfj {

class PresetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PresetOptions {
  // Initial buffers for closed-tandem:<n>.
  std::optional<std::vector<std::uint32_t>> buffers;
  ServiceTimeSource service = ServiceTimeSource::constant(1);
  std::uint64_t seed = 0;
};

// Named networks:
//   paper-example-1          five-node fork-join network with feedback
//   open-tandem:<n>          n >= 2 queues in series behind a source
//   closed-tandem:<n>        ring of n queues, buffers from options.buffers
//   closed-tandem-unit:<n>   ring of n queues, one customer at every node
//   round-robin:<l>          fork-join equivalent of round routing to l branches
//   diamond                  source forking to two branches that join again
// Every node gets options.service, seeded per node from options.seed.
NetworkSpec make_preset(const std::string& name, const PresetOptions& options = {});

std::vector<std::string> preset_names();

}  // namespace mpfj
