// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpfj/compiler.hpp"
#include "mpfj/des.hpp"
#include "mpfj/graph.hpp"
#include "mpfj/implicit.hpp"
#include "mpfj/presets.hpp"
#include "mpfj/recursion.hpp"
#include "support/oracles.hpp"

namespace {

using namespace mpfj;
using mpfj::testing::Int;
using mpfj::testing::IntMatrix;
using mpfj::testing::IntVector;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

// Compares a symbolic block against expected renderings, row by row.
void expect_matrix(Outcome& o, const Matrix<Polynomial>& got,
                   const std::vector<std::vector<std::string>>& want, const std::string& label) {
  if (got.order() != want.size()) {
    o.fail(label + ": order " + std::to_string(got.order()));
    return;
  }
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = 0; j < want.size(); ++j)
      if (got(i, j).to_string() != want[i][j])
        o.fail(label + ": entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is " +
               got(i, j).to_string() + ", expected " + want[i][j]);
}

std::string product(std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t s = from; s <= to; ++s) out += (s > from ? "*t" : "t") + std::to_string(s);
  return out;
}

Outcome fork_join_example_matrix() {
  Outcome o;
  const auto start = Clock::now();
  const auto blocks = compile(make_preset("paper-example-1")).symbolic();
  const double elapsed = seconds_since(start);
  if (blocks.size() != 1) o.fail("expected a single transition block");
  else
    expect_matrix(o, blocks[0],
                  {{"t1", "eps", "eps", "eps", "eps"},
                   {"t1*t2", "t2*t3", "t2*t3", "eps", "eps"},
                   {"eps", "t3", "t3", "eps", "eps"},
                   {"t1*t2*t4", "t2*t3*t4", "t2*t3*t4", "t4", "eps"},
                   {"eps", "eps", "t5", "t5", "t5"}},
                  "T1");
  if (elapsed >= 1.0) o.fail("took " + fmt_seconds(elapsed));
  if (o.pass) o.detail = "5x5 matrix exact, " + fmt_seconds(elapsed);
  return o;
}

Outcome open_tandem_formula() {
  Outcome o;
  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<std::vector<std::string>> want(n, std::vector<std::string>(n, "eps"));
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= i; ++j) want[i - 1][j - 1] = product(j, i);
    const auto blocks = compile(make_preset("open-tandem:" + std::to_string(n))).symbolic();
    if (blocks.size() != 1) o.fail("n=" + std::to_string(n) + ": expected one block");
    else expect_matrix(o, blocks[0], want, "n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "n = 2..8 lower-triangular products exact";
  return o;
}

Outcome closed_tandem_formula() {
  Outcome o;
  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<std::vector<std::string>> want(n, std::vector<std::string>(n, "eps"));
    for (std::size_t i = 1; i <= n; ++i) {
      want[i - 1][i - 1] = "t" + std::to_string(i);
      const std::size_t pred = i == 1 ? n : i - 1;
      want[i - 1][pred - 1] = "t" + std::to_string(i);
    }
    const auto blocks = compile(make_preset("closed-tandem-unit:" + std::to_string(n))).symbolic();
    if (blocks.size() != 1) o.fail("n=" + std::to_string(n) + ": expected one block");
    else expect_matrix(o, blocks[0], want, "n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "n = 2..8 diagonal plus ring entries exact";
  return o;
}

Outcome round_robin_matrix() {
  Outcome o;
  const auto blocks = compile(make_preset("round-robin:3")).symbolic(SymbolicForm::reduced);
  if (blocks.size() != 1) o.fail("expected a single transition block");
  else
    expect_matrix(o, blocks[0],
                  {{"t1", "eps", "eps", "eps", "eps", "t1*t4"},
                   {"eps", "t2", "eps", "eps", "eps", "t2*t4*t5"},
                   {"eps", "eps", "t3", "eps", "eps", "t3*t4*t5*t6"},
                   {"eps", "eps", "eps", "eps", "eps", "t4"},
                   {"eps", "eps", "eps", "eps", "eps", "t4*t5"},
                   {"eps", "eps", "eps", "eps", "eps", "t4*t5*t6"}},
                  "T1");
  if (o.pass) o.detail = "6x6 matrix exact";
  return o;
}

struct CorpusCase {
  NetworkSpec spec;
  ServiceTimeTable<Int> table;
};

constexpr std::size_t kCorpusSize = 250;
constexpr std::size_t kCorpusHorizon = 25;

std::vector<CorpusCase> random_corpus() {
  std::mt19937_64 rng(20240601);
  std::vector<CorpusCase> corpus;
  for (std::size_t c = 0; c < kCorpusSize; ++c) {
    auto spec = mpfj::testing::random_network(rng);
    auto table = mpfj::testing::random_table(rng, spec.node_count, kCorpusHorizon);
    corpus.push_back({std::move(spec), std::move(table)});
  }
  return corpus;
}

Outcome step_forms_agree(const std::vector<CorpusCase>& corpus) {
  Outcome o;
  const auto start = Clock::now();
  std::size_t max_depth = 0;
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    const auto ct = compile(corpus[c].spec);
    max_depth = std::max(max_depth, ct.memory_depth());
    const auto a = run<Int>(ct, corpus[c].table, kCorpusHorizon, StepMethod::explicit_form);
    const auto b = run<Int>(ct, corpus[c].table, kCorpusHorizon, StepMethod::implicit_form);
    const auto e = run<Int>(ct, corpus[c].table, kCorpusHorizon, StepMethod::extended_form);
    if (a.history != b.history) o.fail("network " + std::to_string(c) + ": explicit != implicit");
    if (a.history != e.history) o.fail("network " + std::to_string(c) + ": explicit != extended");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) o.fail("took " + fmt_seconds(elapsed));
  if (o.pass)
    o.detail = std::to_string(corpus.size()) + " networks, K=25, M up to " +
               std::to_string(max_depth) + ", " + fmt_seconds(elapsed);
  return o;
}

Outcome oracle_equivalence(const std::vector<CorpusCase>& corpus) {
  Outcome o;
  std::size_t checked = 0;
  auto check = [&](const std::string& label, const CompiledTransition& ct,
                   const ServiceTimeTable<Int>& table, std::size_t horizon) {
    const auto rec = run<Int>(ct, table, horizon);
    const auto sim = simulate<Int>(ct.network(), table, horizon);
    const auto diff = compare_traces(rec, sim, 0.0);
    if (!diff.within_tolerance)
      o.fail(label + ": first difference at k=" + std::to_string(*diff.first_k) +
             ", node=" + std::to_string(*diff.first_node + 1));
    ++checked;
  };
  for (std::size_t c = 0; c < corpus.size(); ++c)
    check("random network " + std::to_string(c), compile(corpus[c].spec), corpus[c].table,
          kCorpusHorizon);

  std::vector<std::pair<std::string, PresetOptions>> presets{{"paper-example-1", {}},
                                                             {"diamond", {}}};
  for (int n = 2; n <= 8; ++n) {
    presets.push_back({"open-tandem:" + std::to_string(n), {}});
    presets.push_back({"closed-tandem-unit:" + std::to_string(n), {}});
  }
  presets.push_back({"closed-tandem:4", {std::vector<std::uint32_t>{2, 0, 3, 0}}});
  for (int l = 2; l <= 5; ++l) presets.push_back({"round-robin:" + std::to_string(l), {}});

  std::mt19937_64 rng(77);
  for (const auto& [name, options] : presets) {
    const auto ct = compile(make_preset(name, options));
    // the preset's own (unit) service times, then random integer ones
    check(name, ct, realize_service<Int>(ct.network(), 40), 40);
    check(name + " (random tau)", ct, mpfj::testing::random_table(rng, ct.size(), 40), 40);
  }
  if (o.pass)
    o.detail = std::to_string(checked) + " traces (random corpus and " +
               std::to_string(presets.size()) + " presets) equal to simulation";
  return o;
}

Outcome round_routing_equivalence() {
  Outcome o;
  constexpr std::size_t kHorizon = 50;
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> tau(1, 10);
  for (std::size_t l = 2; l <= 5; ++l) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> source;
      for (std::size_t c = 0; c < l * kHorizon; ++c) source.push_back(tau(rng));
      std::vector<ServiceTimeSource> branches;
      for (std::size_t j = 0; j < l; ++j) {
        std::vector<double> times;
        for (std::size_t k = 0; k < kHorizon; ++k) times.push_back(tau(rng));
        branches.push_back(ServiceTimeSource::sequence(times));
      }
      const auto spec = build_round_robin(l, ServiceTimeSource::sequence(source), branches);
      const auto rec = run<Int>(spec, kHorizon);
      const auto direct = simulate_round_routing<Int>(*spec.round_robin, kHorizon);
      std::vector<std::size_t> nodes(l);
      for (std::size_t j = 0; j < l; ++j) nodes[j] = j;
      const auto diff = compare_traces(rec, direct, 0.0, nodes, nodes);
      if (!diff.within_tolerance)
        o.fail("l=" + std::to_string(l) + ": branch " + std::to_string(*diff.first_node + 1) +
               " differs at k=" + std::to_string(*diff.first_k));
    }
  }
  if (o.pass) o.detail = "l = 2..5, K=50, 5 random instances each";
  return o;
}

Outcome implicit_solver() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::size_t acyclic = 0;
  std::size_t cyclic = 0;
  for (; acyclic < 600; ++acyclic) {
    const std::size_t n = 1 + acyclic % 8;
    const IntMatrix u = mpfj::testing::random_acyclic_positive(rng, n, 0.2 + 0.1 * (acyclic % 5));
    const IntVector v = mpfj::testing::random_vector(rng, n, 0, 30);
    const IntVector x = solve_implicit(u, v);
    if (oplus(otimes(u, x), v) != x) o.fail("instance " + std::to_string(acyclic) + ": not a solution");
    if (mpfj::testing::fixed_point_iteration(u, v, n + 1) != x)
      o.fail("instance " + std::to_string(acyclic) + ": differs from fixed-point iteration");
  }
  for (; cyclic < 150; ++cyclic) {
    const IntMatrix u = mpfj::testing::random_cyclic_positive(rng, 1 + cyclic % 8);
    try {
      solve_implicit(u, IntVector(u.order(), IntScalar(0)));
      o.fail("cyclic instance " + std::to_string(cyclic) + " was accepted");
    } catch (const CycleError& e) {
      if (!mpfj::testing::is_cycle_witness(u, e.witness()))
        o.fail("cyclic instance " + std::to_string(cyclic) + ": bad witness " +
               format_cycle(e.witness()));
    }
  }
  if (o.pass)
    o.detail = std::to_string(acyclic) + " acyclic solved, " + std::to_string(cyclic) +
               " cyclic refused with valid witness";
  return o;
}

Outcome semiring_properties() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(1234);
  std::size_t cases = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto a = mpfj::testing::random_matrix(rng, n);
    const auto b = mpfj::testing::random_matrix(rng, n);
    const auto c = mpfj::testing::random_matrix(rng, n);
    const auto e = IntMatrix::identity(n);
    const auto null = IntMatrix::null(n);
    const auto tag = " (trial " + std::to_string(trial) + ")";

    const auto sa = a(0, 0), sb = b(0, 0), sc = c(0, 0);
    if (oplus(oplus(sa, sb), sc) != oplus(sa, oplus(sb, sc)) ||
        otimes(otimes(sa, sb), sc) != otimes(sa, otimes(sb, sc)) ||
        otimes(sa, oplus(sb, sc)) != oplus(otimes(sa, sb), otimes(sa, sc)) ||
        oplus(sa, sa) != sa || oplus(sa, sb) != oplus(sb, sa))
      o.fail("scalar laws" + tag);
    ++cases;

    if (oplus(oplus(a, b), c) != oplus(a, oplus(b, c))) o.fail("oplus associativity" + tag);
    if (otimes(otimes(a, b), c) != otimes(a, otimes(b, c))) o.fail("otimes associativity" + tag);
    if (otimes(a, oplus(b, c)) != oplus(otimes(a, b), otimes(a, c))) o.fail("left distributivity" + tag);
    if (otimes(oplus(a, b), c) != oplus(otimes(a, c), otimes(b, c))) o.fail("right distributivity" + tag);
    if (oplus(a, a) != a) o.fail("idempotency" + tag);
    if (otimes(a, e) != a || otimes(e, a) != a || oplus(a, null) != a) o.fail("units" + tag);
    if (!otimes(a, null).is_null()) o.fail("null absorbs" + tag);
    cases += 7;

    const std::size_t q = trial % 5;
    IntMatrix sum = e;
    for (std::size_t s = 1; s <= q; ++s) sum = oplus(sum, power(a, s));
    if (power(oplus(e, a), q) != sum) o.fail("(E+X)^q expansion" + tag);
    ++cases;

    // acyclic support with arbitrary finite weights
    IntMatrix x = mpfj::testing::random_acyclic_positive(rng, n, 0.5);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (x(i, j).is_finite()) x(i, j) = mpfj::testing::random_scalar(rng, 0.0);
    const auto view = graph_view(x);
    if (!view.acyclic) {
      o.fail("acyclic generator produced a cycle" + tag);
    } else {
      if (!power(x, view.longest_path + 1).is_null()) o.fail("nilpotency bound" + tag);
      if (view.longest_path > 0 && power(x, view.longest_path).is_null())
        o.fail("longest path not tight" + tag);
    }
    ++cases;
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) o.fail("took " + fmt_seconds(elapsed));
  if (o.pass) o.detail = std::to_string(cases) + " cases, " + fmt_seconds(elapsed);
  return o;
}

Outcome large_network_performance() {
  Outcome o;
  constexpr std::size_t kHorizon = 10000;
  std::mt19937_64 rng(50);
  mpfj::testing::RandomNetworkOptions options;
  options.min_nodes = options.max_nodes = 50;
  const auto spec = mpfj::testing::random_network(rng, options);
  const auto table = mpfj::testing::random_table(rng, spec.node_count, kHorizon);

  const auto start = Clock::now();
  const auto ct = compile(spec);
  const auto trace = run<Int>(ct, table, kHorizon);
  const double elapsed = seconds_since(start);

  if (trace.horizon() != kHorizon) o.fail("trace is incomplete");
  if (elapsed >= 5.0) o.fail("took " + fmt_seconds(elapsed));
  if (o.pass)
    o.detail = "n=50, M=" + std::to_string(ct.memory_depth()) + ", p=" +
               std::to_string(ct.routing().longest_path()) + ", K=10000 in " + fmt_seconds(elapsed);
  return o;
}

}  // namespace

int main() {
  const auto corpus = random_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"five-node fork-join transition matrix", fork_join_example_matrix},
      {"open tandem transition matrices", open_tandem_formula},
      {"closed tandem transition matrices", closed_tandem_formula},
      {"round-robin transition matrix", round_robin_matrix},
      {"explicit, implicit and extended steps agree", [&] { return step_forms_agree(corpus); }},
      {"recursion equals event simulation", [&] { return oracle_equivalence(corpus); }},
      {"round-routing equivalence", round_routing_equivalence},
      {"implicit equation solver", implicit_solver},
      {"semiring and matrix identities", semiring_properties},
      {"large network performance", large_network_performance},
  };

  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Outcome outcome;
    try {
      outcome = criteria[c].second();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << c + 1 << ". " << criteria[c].first
              << ": " << outcome.detail << std::endl;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failures) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
