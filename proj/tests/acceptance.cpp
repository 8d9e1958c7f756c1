// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "loglist/lct.hpp"
#include "loglist/log_list.hpp"
#include "loglist/oracle.hpp"
#include "loglist/random.hpp"
#include "loglist/rearrange.hpp"

using namespace loglist;
using rearrange::Permutation;
using V = std::vector<CostValue>;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// --- 1 -------------------------------------------------------------------

void worked_examples() {
  const auto start = Clock::now();
  std::vector<std::string> bad;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) bad.push_back(what);
  };

  LogList l = LogList::build(V{8, 5, -4, 6});
  expect(l.iterate() == V{8, 5, -4, 6} && l.iterate(Channel::index()) == V{1, 2, 3, 4}, "build labels");

  LogList l1 = l.make_sibling(V{3, 12});
  l.insert(l1, l.find_element(2));
  expect(l.iterate() == V{8, 5, 3, 12, -4, 6} && l.iterate(Channel::index()) == V{1, 2, 3, 4, 5, 6}, "insert");

  LogList d = LogList::build(V{8, 5, 3, 12, -4, 6});
  LogList cut = d.erase(d.find_element(3), d.find_element(4));
  expect(d.iterate() == V{8, 5, -4, 6} && d.iterate(Channel::index()) == V{1, 2, 3, 4} &&
             cut.iterate() == V{3, 12} && cut.iterate(Channel::index()) == V{1, 2},
         "delete");

  LogList r = LogList::build(V{8, 5, 3, 12, -4, 6});
  r.reverse(r.find_element(3), r.find_element(4));
  expect(r.iterate() == V{8, 5, 12, 3, -4, 6} && r.iterate(Channel::index()) == V{1, 2, 3, 4, 5, 6}, "reverse");

  lct::Forest f(1);
  const auto path = f.make_path(V{7, 2, 5, 2});
  const lct::VertexId a = path.vertices[0];
  const V initial = f.path_costs(a, CostChannel{0});
  f.dminuscost(a, CostChannel{0});
  const V negated = f.path_costs(a, CostChannel{0});
  f.dupdate(a, CostChannel{0}, 3);
  expect(initial == V{7, 2, 5, 2} && negated == V{-7, -2, -5, -2} && f.path_costs(a, CostChannel{0}) == V{-4, 1, -2, 1},
         "negate then add 3");

  const double t = seconds_since(start);
  std::string detail = "worked examples reproduced in " + fmt("%.4f s", t);
  for (const auto& b : bad) detail += "; mismatch: " + b;
  report(1, bad.empty() && t < 1.0, detail);
}

// --- 2, 3, 7 -------------------------------------------------------------

void fuzz_list() {
  oracle::LogListFuzzOptions options;
  options.seed = 2024;
  options.cases = 1000;
  options.ops_per_case = 100;
  options.max_len = 128;
  options.weight_channels = 2;
  const auto start = Clock::now();
  const oracle::FuzzReport r = oracle::fuzz_log_list(options);
  const double t = seconds_since(start);
  report(2, r.ok() && r.cases >= 1000 && r.operations >= 100000 && t < 60.0,
         std::to_string(r.cases) + " sequences, " + std::to_string(r.operations) + " operations, " +
             std::to_string(r.divergences) + " divergent, " + fmt("%.2f s", t) +
             (r.ok() ? "" : "; first: " + r.first_divergence));
}

void fuzz_forest() {
  oracle::LctFuzzOptions options;
  options.seed = 77;
  options.cases = 500;
  options.ops_per_case = 200;
  options.max_vertices = 64;
  options.channels = 2;
  const auto start = Clock::now();
  const oracle::FuzzReport r = oracle::fuzz_lct(options);
  const double t = seconds_since(start);
  report(3, r.ok() && r.cases >= 500 && t < 30.0,
         std::to_string(r.cases) + " sequences, " + std::to_string(r.operations) + " operations, " +
             std::to_string(r.divergences) + " divergent, " + fmt("%.2f s", t) +
             (r.ok() ? "" : "; first: " + r.first_divergence));
}

void fuzz_ptree() {
  oracle::PtreeFuzzOptions options;
  options.seed = 9;
  options.scenarios = 1000;
  const auto start = Clock::now();
  const oracle::FuzzReport r = oracle::fuzz_ptree(options);
  const double t = seconds_since(start);
  report(7, r.ok() && r.cases >= 1000 && t < 10.0,
         std::to_string(r.cases) + " scenarios, " + std::to_string(r.divergences) + " divergent, " +
             fmt("%.2f s", t) + (r.ok() ? "" : "; first: " + r.first_divergence));
}

// --- 4 -------------------------------------------------------------------

void exhaustive() {
  const auto start = Clock::now();
  std::size_t count = 0;
  std::size_t unsorted = 0;
  std::size_t mismatched = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    V p(n);
    std::iota(p.begin(), p.end(), CostValue{1});
    do {
      ++count;
      const Permutation perm{p};
      const rearrange::SortTrace trace = rearrange::sort_prefix_rt(perm);
      Permutation q = perm;
      for (const auto& op : trace.ops) q = oracle::apply_op_formula(q, op);
      if (!q.is_identity()) ++unsorted;
      if (!(trace == oracle::sort_prefix_rt_naive(perm))) ++mismatched;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  const double t = seconds_since(start);
  report(4, count == 5913 && unsorted == 0 && mismatched == 0 && t < 60.0,
         std::to_string(count) + " permutations, " + std::to_string(unsorted) + " not sorted, " +
             std::to_string(mismatched) + " traces differ from the array sorter, " + fmt("%.2f s", t));
}

// --- 5 -------------------------------------------------------------------

// Best of `reps` runs, in seconds.
template <typename F>
double best_of(int reps, F&& run) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    run();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

void sort_scaling() {
  const std::vector<std::size_t> sizes{1u << 14, 1u << 15, 1u << 16};
  constexpr std::uint64_t kSeeds = 5;
  constexpr int kReps = 2;
  std::vector<double> fast(sizes.size(), 0.0);
  std::vector<double> slow(sizes.size(), 0.0);
  bool same_d = true;
  {
    std::mt19937_64 rng(mix_seed(99, 0));
    const Permutation warm{random_permutation(sizes[0], rng)};
    rearrange::sort_prefix_rt(warm);
    oracle::sort_prefix_rt_naive(warm);
  }
  // Sizes are interleaved within each seed so that drift in machine speed
  // hits every size alike.
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    for (std::size_t s = 0; s < sizes.size(); ++s) {
      std::mt19937_64 rng(mix_seed(seed, sizes[s]));
      const Permutation p{random_permutation(sizes[s], rng)};
      std::size_t da = 0;
      std::size_t db = 0;
      fast[s] += best_of(kReps, [&] { da = rearrange::sort_prefix_rt(p).d(); }) / kSeeds;
      slow[s] += best_of(kReps, [&] { db = oracle::sort_prefix_rt_naive(p).d(); }) / kSeeds;
      same_d = same_d && da == db;
    }
  }
  bool ok = same_d && fast.back() < 10.0;
  std::string detail = "mean over 5 seeds of best-of-2 seconds, log-list";
  for (std::size_t s = 0; s < sizes.size(); ++s) detail += fmt(" %.3f", fast[s]);
  detail += ", array";
  for (std::size_t s = 0; s < sizes.size(); ++s) detail += fmt(" %.3f", slow[s]);
  detail += "; doubling ratios log-list";
  for (std::size_t s = 1; s < sizes.size(); ++s) {
    const double ratio = fast[s] / fast[s - 1];
    ok = ok && ratio <= 2.6;
    detail += fmt(" %.2f", ratio);
  }
  detail += " (limit 2.6), array";
  for (std::size_t s = 1; s < sizes.size(); ++s) {
    const double ratio = slow[s] / slow[s - 1];
    ok = ok && ratio >= 3.4;
    detail += fmt(" %.2f", ratio);
  }
  detail += " (at least 3.4)";
  if (!same_d) detail += "; d differs between implementations";
  report(5, ok, detail);
}

// --- 6 -------------------------------------------------------------------

// Mean nanoseconds per call for one round of `calls` mixed queries.
double query_round(LogList& list, const std::vector<ElemId>& handles, std::size_t calls, std::mt19937_64& rng) {
  const std::size_t n = handles.size();
  std::vector<std::size_t> pos(2 * calls);
  for (auto& p : pos) p = draw_below(rng, n);
  std::size_t sink = 0;
  const auto start = Clock::now();
  for (std::size_t c = 0; c < calls; ++c) {
    std::size_t i = pos[2 * c];
    std::size_t j = pos[2 * c + 1];
    if (i > j) std::swap(i, j);
    switch (c % 3) {
      case 0:
        sink += list.find_element(i + 1).value;
        break;
      case 1:
        sink += list.find_rank(handles[i]);
        break;
      default:
        sink += list.range_extreme(handles[i], handles[j], Channel::value(), Extreme::min).value;
        break;
    }
  }
  const double ns = std::chrono::duration<double, std::nano>(Clock::now() - start).count() / calls;
  if (sink == 1) std::printf(" ");
  return ns;
}

void op_scaling() {
  const std::vector<std::size_t> sizes{1u << 18, 1u << 19, 1u << 20};
  constexpr std::size_t kCalls = 30000;
  constexpr int kRounds = 5;
  std::vector<double> per_call;
  for (std::size_t n : sizes) {
    std::mt19937_64 rng(mix_seed(6, n));
    LogList list = LogList::build(random_permutation(n, rng));
    const std::vector<ElemId> handles = list.elements();
    query_round(list, handles, kCalls / 10, rng);  // warm-up
    std::vector<double> rounds;
    for (int r = 0; r < kRounds; ++r) rounds.push_back(query_round(list, handles, kCalls, rng));
    std::nth_element(rounds.begin(), rounds.begin() + kRounds / 2, rounds.end());
    per_call.push_back(rounds[kRounds / 2]);
  }
  bool ok = true;
  std::string detail = "median-of-5 mean ns per call (" + std::to_string(kCalls) + " calls per round)";
  for (double v : per_call) detail += fmt(" %.0f", v);
  detail += "; doubling ratios";
  for (std::size_t s = 1; s < per_call.size(); ++s) {
    const double ratio = per_call[s] / per_call[s - 1];
    ok = ok && ratio <= 1.35;
    detail += fmt(" %.3f", ratio);
  }
  detail += " (limit 1.35)";
  report(6, ok, detail);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{worked_examples,    fuzz_list,    fuzz_forest, exhaustive,
                                                    sort_scaling, op_scaling,   fuzz_ptree};
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      std::printf("FAIL unexpected exception: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
