#include "mpfj/network.hpp"

#include <algorithm>
#include <set>

namespace mpfj {

namespace {

std::string label(std::size_t node) { return std::to_string(node + 1); }

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid network";
  for (const auto& line : lines) out += "\n  " + line;
  return out;
}

std::vector<std::optional<ServiceTimeSource>> attach(std::size_t n,
                                                     std::vector<ServiceTimeSource> service) {
  std::vector<std::optional<ServiceTimeSource>> out(n);
  if (service.empty()) return out;
  if (service.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " service sources, got " +
                                std::to_string(service.size()));
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = std::move(service[i]);
  return out;
}

bool strongly_connected(const Network& net, std::size_t n) {
  auto reach_all = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : forward ? net.successors(u) : net.predecessors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach_all(true) && reach_all(false);
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_lines(violations)), violations_(std::move(violations)) {}

Network validate(NetworkSpec spec) {
  std::vector<std::string> problems;
  const std::size_t n = spec.node_count;
  if (n == 0) throw ValidationError({"network has no nodes"});
  if (spec.initial_buffer.size() != n) {
    problems.push_back("initial buffers given for " + std::to_string(spec.initial_buffer.size()) +
                       " nodes, expected " + std::to_string(n));
  }
  if (spec.service.empty()) spec.service.resize(n);
  if (spec.service.size() != n) {
    problems.push_back("service given for " + std::to_string(spec.service.size()) +
                       " nodes, expected " + std::to_string(n));
  }
  if (!problems.empty()) throw ValidationError(problems);

  Network net;
  net.predecessors_.resize(n);
  net.successors_.resize(n);
  std::set<Arc> seen;
  for (const Arc& a : spec.arcs) {
    if (a.from >= n || a.to >= n) {
      problems.push_back("arc (" + label(a.from) + "," + label(a.to) + ") names a node outside 1.." +
                         std::to_string(n));
      continue;
    }
    if (a.from == a.to) {
      problems.push_back("self-loop at " + label(a.from));
      continue;
    }
    if (!seen.insert(a).second) {
      problems.push_back("duplicate arc (" + label(a.from) + "," + label(a.to) + ")");
      continue;
    }
    net.successors_[a.from].push_back(a.to);
    net.predecessors_[a.to].push_back(a.from);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(net.predecessors_[i].begin(), net.predecessors_[i].end());
    std::sort(net.successors_[i].begin(), net.successors_[i].end());
  }

  for (std::size_t i = 0; i < n; ++i) {
    const InitialBuffer r = spec.initial_buffer[i];
    const bool source = net.predecessors_[i].empty();
    if (source && !r.is_infinite()) {
      problems.push_back("node " + label(i) + " has no predecessors but finite initial buffer " +
                         r.to_string() + "; source nodes need r = inf");
    } else if (!source && r.is_infinite()) {
      problems.push_back("node " + label(i) + " has predecessors but initial buffer inf");
    }
    if (spec.service[i]) {
      if (auto problem = spec.service[i]->check(); !problem.empty())
        problems.push_back("node " + label(i) + ": " + problem);
    }
  }

  if (problems.empty() && n >= 2 && strongly_connected(net, n)) {
    std::uint64_t population = 0;
    for (const auto& r : spec.initial_buffer) population += r.is_infinite() ? 0 : r.count();
    if (population == 0) problems.push_back("closed network holds no customers");
  }

  if (!problems.empty()) throw ValidationError(problems);
  net.spec_ = std::move(spec);
  return net;
}

NetworkSpec build_open_tandem(std::size_t n, std::vector<ServiceTimeSource> service) {
  if (n < 2) throw std::invalid_argument("open tandem needs at least 2 nodes");
  NetworkSpec spec;
  spec.name = "open-tandem:" + std::to_string(n);
  spec.node_count = n;
  for (std::size_t i = 0; i + 1 < n; ++i) spec.arcs.push_back({i, i + 1});
  spec.initial_buffer.assign(n, InitialBuffer::of(0));
  spec.initial_buffer[0] = InitialBuffer::infinite();
  spec.service = attach(n, std::move(service));
  return spec;
}

NetworkSpec build_closed_tandem(std::size_t n, const std::vector<std::uint32_t>& r,
                                std::vector<ServiceTimeSource> service) {
  if (n < 2) throw std::invalid_argument("closed tandem needs at least 2 nodes");
  if (r.size() != n) {
    throw std::invalid_argument("closed tandem needs " + std::to_string(n) +
                                " initial buffer values, got " + std::to_string(r.size()));
  }
  if (std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; }))
    throw std::invalid_argument("closed tandem needs at least one customer");
  NetworkSpec spec;
  spec.name = "closed-tandem:" + std::to_string(n);
  spec.node_count = n;
  for (std::size_t i = 0; i < n; ++i) spec.arcs.push_back({i, (i + 1) % n});
  for (std::uint32_t x : r) spec.initial_buffer.push_back(InitialBuffer::of(x));
  spec.service = attach(n, std::move(service));
  return spec;
}

NetworkSpec build_fork_join(std::string name, std::size_t n,
                            const std::vector<std::pair<std::size_t, std::size_t>>& arcs,
                            std::vector<InitialBuffer> r, std::vector<ServiceTimeSource> service) {
  NetworkSpec spec;
  spec.name = std::move(name);
  spec.node_count = n;
  for (const auto& [from, to] : arcs) {
    if (from == 0 || to == 0) throw std::invalid_argument("node labels are one-based");
    spec.arcs.push_back({from - 1, to - 1});
  }
  spec.initial_buffer = std::move(r);
  spec.service = attach(n, std::move(service));
  validate(spec);
  return spec;
}

NetworkSpec build_example_fork_join(std::vector<ServiceTimeSource> service) {
  const auto inf = InitialBuffer::infinite();
  const auto zero = InitialBuffer::of(0);
  const auto one = InitialBuffer::of(1);
  return build_fork_join("paper-example-1", 5, {{1, 2}, {3, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}},
                         {inf, zero, one, zero, one}, std::move(service));
}

NetworkSpec build_round_robin(std::size_t l, ServiceTimeSource source,
                              std::vector<ServiceTimeSource> branch_service) {
  if (l < 2) throw std::invalid_argument("round routing needs at least 2 branches");
  if (branch_service.size() != l) {
    throw std::invalid_argument("round routing needs " + std::to_string(l) +
                                " branch service sources, got " +
                                std::to_string(branch_service.size()));
  }
  NetworkSpec spec;
  spec.name = "round-robin:" + std::to_string(l);
  spec.node_count = 2 * l;
  for (std::size_t j = 0; j < l; ++j) {
    spec.arcs.push_back({l + j, j});
    spec.arcs.push_back({l + j, j + 1 < l ? l + j + 1 : l});
  }
  spec.initial_buffer.assign(2 * l, InitialBuffer::of(0));
  spec.initial_buffer[l] = InitialBuffer::of(1);
  spec.service.resize(2 * l);
  for (std::size_t j = 0; j < l; ++j) {
    spec.service[j] = branch_service[j];
    spec.service[l + j] = ServiceTimeSource::strided(source, l, j + 1);
  }
  spec.round_robin = RoundRobinOrigin{l, std::move(source), std::move(branch_service)};
  return spec;
}

NetworkSpec with_uniform_service(NetworkSpec spec, const ServiceTimeSource& source,
                                 std::uint64_t base_seed) {
  if (spec.round_robin) {
    const std::size_t l = spec.round_robin->branches;
    std::vector<ServiceTimeSource> branches;
    for (std::size_t j = 0; j < l; ++j) branches.push_back(source.with_seed(derive_seed(base_seed, j + 1)));
    NetworkSpec rebuilt = build_round_robin(l, source.with_seed(derive_seed(base_seed, 0)),
                                            std::move(branches));
    rebuilt.name = std::move(spec.name);
    return rebuilt;
  }
  spec.service.assign(spec.node_count, std::nullopt);
  for (std::size_t i = 0; i < spec.node_count; ++i)
    spec.service[i] = source.with_seed(derive_seed(base_seed, i + 1));
  return spec;
}

}  // namespace mpfj
