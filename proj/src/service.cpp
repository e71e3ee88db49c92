#include "mpfj/service.hpp"

#include <sstream>

namespace mpfj {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// Open interval (0, 1) from the top 53 bits.
double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw std::invalid_argument("bad number '" + s + "' in " + context);
  return x;
}

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  std::uint64_t x = 0;
  try {
    x = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw std::invalid_argument("bad seed '" + s + "' in " + context);
  return x;
}

}  // namespace

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) noexcept {
  std::uint64_t z = seed + k * kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t node) noexcept {
  return splitmix64_at(base, node + 1);
}

double ServiceTimeSource::sample(std::size_t k) const {
  if (k == 0) throw std::out_of_range("service index is one-based");
  return std::visit(
      Overloaded{
          [](const ConstantService& c) { return c.value; },
          [k](const ExplicitService& e) {
            if (e.values.empty()) throw ServiceError("explicit service sequence is empty");
            if (k > e.values.size()) {
              if (e.on_exhaust == ExhaustPolicy::error) {
                throw ServiceError("explicit service sequence of length " +
                                   std::to_string(e.values.size()) + " exhausted at customer " +
                                   std::to_string(k));
              }
              return e.values[(k - 1) % e.values.size()];
            }
            return e.values[k - 1];
          },
          [k](const UniformService& u) {
            return u.lo + (u.hi - u.lo) * unit_open(splitmix64_at(u.seed, k));
          },
          [k](const ExponentialService& e) {
            return -std::log(unit_open(splitmix64_at(e.seed, k))) / e.rate;
          },
          [k](const StridedService& s) {
            return s.source->sample(s.stride * (k - 1) + s.offset);
          },
      },
      kind_);
}

std::string ServiceTimeSource::check() const {
  return std::visit(
      Overloaded{
          [](const ConstantService& c) -> std::string {
            return c.value > 0 ? "" : "constant service time must be positive";
          },
          [](const ExplicitService& e) -> std::string {
            if (e.values.empty()) return "explicit service sequence is empty";
            for (double x : e.values)
              if (!(x > 0)) return "explicit service sequence holds a nonpositive value";
            return "";
          },
          [](const UniformService& u) -> std::string {
            if (!(u.lo > 0)) return "uniform service lower bound must be positive";
            if (!(u.hi >= u.lo)) return "uniform service needs lo <= hi";
            return "";
          },
          [](const ExponentialService& e) -> std::string {
            return e.rate > 0 ? "" : "exponential service rate must be positive";
          },
          [](const StridedService& s) -> std::string {
            if (!s.source) return "strided service has no source";
            if (s.stride == 0 || s.offset == 0) return "strided service needs stride, offset >= 1";
            return s.source->check();
          },
      },
      kind_);
}

bool ServiceTimeSource::stochastic() const {
  return std::visit(Overloaded{
                        [](const UniformService&) { return true; },
                        [](const ExponentialService&) { return true; },
                        [](const StridedService& s) { return s.source->stochastic(); },
                        [](const auto&) { return false; },
                    },
                    kind_);
}

ServiceTimeSource ServiceTimeSource::with_seed(std::uint64_t seed) const {
  return std::visit(Overloaded{
                        [seed](UniformService u) -> ServiceTimeSource {
                          u.seed = seed;
                          return u;
                        },
                        [seed](ExponentialService e) -> ServiceTimeSource {
                          e.seed = seed;
                          return e;
                        },
                        [seed](const StridedService& s) -> ServiceTimeSource {
                          return strided(s.source->with_seed(seed), s.stride, s.offset);
                        },
                        [](const auto& other) -> ServiceTimeSource { return other; },
                    },
                    kind_);
}

std::string ServiceTimeSource::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const ConstantService& c) { os << "const:" << c.value; },
                 [&](const ExplicitService& e) {
                   os << "explicit:";
                   for (std::size_t i = 0; i < e.values.size(); ++i)
                     os << (i ? "," : "") << e.values[i];
                   if (e.on_exhaust == ExhaustPolicy::wrap) os << ":wrap";
                 },
                 [&](const UniformService& u) {
                   os << "uniform:" << u.lo << ":" << u.hi << ":" << u.seed;
                 },
                 [&](const ExponentialService& e) { os << "exp:" << e.rate << ":" << e.seed; },
                 [&](const StridedService& s) {
                   os << "strided(" << s.source->describe() << ", stride " << s.stride
                      << ", offset " << s.offset << ")";
                 },
             },
             kind_);
  return os.str();
}

ServiceTimeSource parse_service_shorthand(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("service shorthand needs <kind>:<args>, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::vector<std::string> args = split(text.substr(colon + 1), ':');

  ServiceTimeSource source;
  if ((kind == "const" || kind == "constant") && args.size() == 1) {
    source = ServiceTimeSource::constant(parse_double(args[0], text));
  } else if (kind == "explicit" && (args.size() == 1 || args.size() == 2)) {
    ExhaustPolicy policy = ExhaustPolicy::error;
    if (args.size() == 2) {
      if (args[1] == "wrap") {
        policy = ExhaustPolicy::wrap;
      } else if (args[1] != "error") {
        throw std::invalid_argument("unknown exhaustion policy '" + args[1] + "'");
      }
    }
    std::vector<double> values;
    for (const auto& v : split(args[0], ',')) values.push_back(parse_double(v, text));
    source = ServiceTimeSource::sequence(std::move(values), policy);
  } else if (kind == "uniform" && (args.size() == 2 || args.size() == 3)) {
    source = ServiceTimeSource::uniform(parse_double(args[0], text), parse_double(args[1], text),
                                        args.size() == 3 ? parse_u64(args[2], text) : 0);
  } else if ((kind == "exp" || kind == "exponential") && (args.size() == 1 || args.size() == 2)) {
    source = ServiceTimeSource::exponential(parse_double(args[0], text),
                                            args.size() == 2 ? parse_u64(args[1], text) : 0);
  } else {
    throw std::invalid_argument("unrecognized service shorthand '" + text + "'");
  }
  if (auto problem = source.check(); !problem.empty())
    throw std::invalid_argument(problem + " ('" + text + "')");
  return source;
}

}  // namespace mpfj
