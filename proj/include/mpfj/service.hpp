#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mpfj {

class ServiceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// k-th output (k >= 1) of a splitmix64 stream started at `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) noexcept;

// Per-node seed derived from a run-wide seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t node) noexcept;

enum class ExhaustPolicy { error, wrap };

struct ConstantService {
  double value = 1.0;
};

struct ExplicitService {
  std::vector<double> values;
  ExhaustPolicy on_exhaust = ExhaustPolicy::error;
};

struct UniformService {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t seed = 0;
};

struct ExponentialService {
  double rate = 1.0;
  std::uint64_t seed = 0;
};

class ServiceTimeSource;

// tau_k = source(stride * (k - 1) + offset). Carries the service-time index
// remapping of the round-routing network.
struct StridedService {
  std::shared_ptr<const ServiceTimeSource> source;
  std::size_t stride = 1;
  std::size_t offset = 1;
};

// Stream of service times tau_1, tau_2, ... for one node. Sampling is a pure
// function of (parameters, k).
class ServiceTimeSource {
 public:
  using Kind = std::variant<ConstantService, ExplicitService, UniformService,
                            ExponentialService, StridedService>;

  ServiceTimeSource() = default;
  template <class K>
    requires std::constructible_from<Kind, K>
  ServiceTimeSource(K kind) : kind_(std::move(kind)) {}  // NOLINT

  static ServiceTimeSource constant(double c) { return ConstantService{c}; }
  static ServiceTimeSource sequence(std::vector<double> values,
                                    ExhaustPolicy policy = ExhaustPolicy::error) {
    return ExplicitService{std::move(values), policy};
  }
  static ServiceTimeSource uniform(double lo, double hi, std::uint64_t seed) {
    return UniformService{lo, hi, seed};
  }
  static ServiceTimeSource exponential(double rate, std::uint64_t seed) {
    return ExponentialService{rate, seed};
  }
  static ServiceTimeSource strided(ServiceTimeSource source, std::size_t stride,
                                   std::size_t offset) {
    return StridedService{std::make_shared<const ServiceTimeSource>(std::move(source)), stride,
                          offset};
  }

  const Kind& kind() const noexcept { return kind_; }

  // k is one-based. Throws ServiceError when an explicit sequence with the
  // error policy runs out.
  double sample(std::size_t k) const;

  // Parameter problems (nonpositive constant, empty sequence, ...), empty
  // string when the source is well formed.
  std::string check() const;

  bool stochastic() const;

  // Copy with every seed replaced; deterministic kinds are returned unchanged.
  ServiceTimeSource with_seed(std::uint64_t seed) const;

  std::string describe() const;

 private:
  Kind kind_ = ConstantService{};
};

// Parses the CLI shorthand: const:<c> | explicit:<v1,v2,...>[:wrap] |
// uniform:<lo>:<hi>[:<seed>] | exp:<rate>[:<seed>].
ServiceTimeSource parse_service_shorthand(const std::string& text);

// Realized service times tau_ik, i = 1..n, k = 1..K, stored step-major so
// that row(k) is the diagonal of the k-th service matrix.
template <class T>
class ServiceTimeTable {
 public:
  ServiceTimeTable(std::size_t nodes, std::size_t horizon)
      : nodes_(nodes), horizon_(horizon), data_(nodes * horizon, T{0}) {}

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t horizon() const noexcept { return horizon_; }

  // node is zero-based, k is one-based.
  T at(std::size_t node, std::size_t k) const { return data_.at((k - 1) * nodes_ + node); }
  void set(std::size_t node, std::size_t k, T value) {
    if (!(value > T{0})) {
      throw ServiceError("service time for node " + std::to_string(node + 1) + ", customer " +
                         std::to_string(k) + " is not positive");
    }
    data_.at((k - 1) * nodes_ + node) = value;
  }

  std::span<const T> row(std::size_t k) const {
    if (k == 0 || k > horizon_) throw std::out_of_range("service table row out of range");
    return std::span<const T>(data_).subspan((k - 1) * nodes_, nodes_);
  }

  friend bool operator==(const ServiceTimeTable&, const ServiceTimeTable&) = default;

 private:
  std::size_t nodes_;
  std::size_t horizon_;
  std::vector<T> data_;
};

// Converts a sampled double into the run's arithmetic type. Integer runs
// reject non-integral samples.
template <class T>
T to_backend(double x, std::size_t node, std::size_t k) {
  if constexpr (std::is_integral_v<T>) {
    if (std::trunc(x) != x || std::abs(x) > 9.0e15) {
      throw ServiceError("service time " + std::to_string(x) + " for node " +
                         std::to_string(node + 1) + ", customer " + std::to_string(k) +
                         " is not an integer; use the float backend");
    }
    return static_cast<T>(x);
  } else {
    return static_cast<T>(x);
  }
}

}  // namespace mpfj
