#include "mpfj/presets.hpp"

namespace mpfj {

namespace {

std::size_t parse_size_arg(const std::string& name, const std::string& arg) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (arg.empty() || used != arg.size())
    throw PresetError("preset '" + name + "' needs a numeric size argument");
  return value;
}

}  // namespace

NetworkSpec make_preset(const std::string& name, const PresetOptions& options) {
  const auto colon = name.find(':');
  const std::string family = name.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const std::string arg = has_arg ? name.substr(colon + 1) : "";

  NetworkSpec spec;
  try {
    if (family == "paper-example-1" && !has_arg) {
      spec = build_example_fork_join();
    } else if (family == "diamond" && !has_arg) {
      spec = build_fork_join("diamond", 4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}},
                             {InitialBuffer::infinite(), InitialBuffer::of(0),
                              InitialBuffer::of(0), InitialBuffer::of(0)});
    } else if (family == "open-tandem" && has_arg) {
      spec = build_open_tandem(parse_size_arg(name, arg));
    } else if (family == "closed-tandem" && has_arg) {
      const std::size_t n = parse_size_arg(name, arg);
      if (!options.buffers) throw PresetError("preset '" + name + "' needs initial buffers (--r)");
      spec = build_closed_tandem(n, *options.buffers);
    } else if (family == "closed-tandem-unit" && has_arg) {
      const std::size_t n = parse_size_arg(name, arg);
      spec = build_closed_tandem(n, std::vector<std::uint32_t>(n, 1));
      spec.name = name;
    } else if (family == "round-robin" && has_arg) {
      const std::size_t l = parse_size_arg(name, arg);
      spec = build_round_robin(l, options.service,
                               std::vector<ServiceTimeSource>(l, options.service));
    } else {
      throw PresetError("unknown preset '" + name + "'");
    }
  } catch (const PresetError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw PresetError("preset '" + name + "': " + e.what());
  }
  return with_uniform_service(std::move(spec), options.service, options.seed);
}

std::vector<std::string> preset_names() {
  return {"paper-example-1", "open-tandem:<n>",  "closed-tandem:<n>",
          "closed-tandem-unit:<n>", "round-robin:<l>", "diamond"};
}

}  // namespace mpfj
