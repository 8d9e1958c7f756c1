// Batch front end: sort, apply, gen, bench, selftest.
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loglist/formats.hpp"
#include "loglist/oracle.hpp"
#include "loglist/random.hpp"
#include "loglist/rearrange.hpp"

namespace {

using namespace loglist;
using rearrange::Permutation;

constexpr int kOk = 0;
constexpr int kFail = 1;

// "-" or empty reads standard input.
class Input {
 public:
  explicit Input(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw std::runtime_error("cannot open " + path);
  }
  std::istream& get() { return file_ ? *file_ : std::cin; }

 private:
  std::unique_ptr<std::ifstream> file_;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot write " + path);
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

rearrange::SortTrace run_sort(const Permutation& p, const std::string& impl) {
  return impl == "naive" ? oracle::sort_prefix_rt_naive(p) : rearrange::sort_prefix_rt(p);
}

int cmd_sort(const std::string& input, const std::string& trace_path, const std::string& impl) {
  Input in(input);
  const std::vector<Permutation> perms = formats::read_permutations(in.get());
  std::unique_ptr<Output> trace_out;
  if (!trace_path.empty()) trace_out = std::make_unique<Output>(trace_path);
  for (std::size_t q = 0; q < perms.size(); ++q) {
    if (perms[q].is_signed) throw std::runtime_error("permutation " + std::to_string(q + 1) + " is signed");
    const rearrange::SortTrace trace = run_sort(perms[q], impl);
    std::cout << trace.d() << '\n';
    if (trace_out) formats::write_trace(trace_out->get(), trace);
  }
  return kOk;
}

int cmd_apply(const std::string& input, const std::string& trace_path) {
  Input in(input);
  const std::vector<Permutation> perms = formats::read_permutations(in.get());
  std::vector<std::vector<rearrange::RearrangeOp>> blocks;
  if (!trace_path.empty()) {
    Input trace_in(trace_path);
    blocks = formats::read_traces(trace_in.get());
  }
  if (blocks.size() > 1 && blocks.size() != perms.size()) {
    throw std::runtime_error("trace has " + std::to_string(blocks.size()) + " blocks for " +
                             std::to_string(perms.size()) + " permutations");
  }
  for (std::size_t q = 0; q < perms.size(); ++q) {
    Permutation p = perms[q];
    if (!blocks.empty()) {
      const auto& ops = blocks.size() == 1 ? blocks[0] : blocks[q];
      for (std::size_t step = 0; step < ops.size(); ++step) {
        try {
          p = rearrange::apply_op(p, ops[step]);
        } catch (const std::exception& e) {
          throw std::runtime_error("permutation " + std::to_string(q + 1) + ", step " + std::to_string(step + 1) +
                                   " (" + formats::format_op(ops[step]) + "): " + e.what());
        }
      }
    }
    std::cout << formats::format_permutation(p) << '\n';
  }
  return kOk;
}

int cmd_gen(std::size_t n, std::size_t count, std::uint64_t seed, bool is_signed) {
  std::mt19937_64 rng(mix_seed(seed, n));
  for (std::size_t q = 0; q < count; ++q) {
    Permutation p{random_permutation(n, rng), is_signed};
    if (is_signed) {
      for (CostValue& v : p.values) {
        if (draw_below(rng, 2) == 1) v = -v;
      }
    }
    std::cout << formats::format_permutation(p) << '\n';
  }
  return kOk;
}

int cmd_bench(const std::vector<std::size_t>& sizes, const std::vector<std::uint64_t>& seeds,
              const std::string& impl, const std::string& out_path) {
  Output out(out_path);
  out.get() << "n,seed,impl,d,nanos_total\n";
  const std::vector<std::string> impls =
      impl == "both" ? std::vector<std::string>{"loglist", "naive"} : std::vector<std::string>{impl};
  for (std::size_t n : sizes) {
    for (std::uint64_t seed : seeds) {
      std::mt19937_64 rng(mix_seed(seed, n));
      const Permutation p{random_permutation(n, rng), false};
      for (const std::string& which : impls) {
        const auto start = std::chrono::steady_clock::now();
        const rearrange::SortTrace trace = run_sort(p, which);
        const auto nanos =
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
        out.get() << n << ',' << seed << ',' << which << ',' << trace.d() << ',' << nanos << '\n';
      }
    }
  }
  return kOk;
}

void print_report(const char* name, const oracle::FuzzReport& r) {
  std::cout << name << ": " << r.cases << " cases, " << r.operations << " operations, " << r.divergences
            << " divergent\n";
  if (r.ok()) return;
  std::cout << "  first failing seed " << r.failing_seed << ": " << r.first_divergence << '\n';
  if (!r.minimized.empty()) {
    std::cout << "  minimized (" << r.minimized.size() << " calls):\n";
    for (const std::string& line : r.minimized) std::cout << "    " << line << '\n';
  }
}

int cmd_selftest(std::size_t cases, std::size_t max_len, std::uint64_t seed, bool inject) {
  if (cases == 0) return kOk;
  oracle::LogListFuzzOptions list_opts;
  list_opts.seed = seed;
  list_opts.cases = cases;
  list_opts.max_len = max_len;
  if (inject) list_opts.fault = testing::Fault::skip_erase_index_fix;
  const oracle::FuzzReport list = oracle::fuzz_log_list(list_opts);
  print_report("log-list", list);

  oracle::LctFuzzOptions lct_opts;
  lct_opts.seed = seed;
  lct_opts.cases = cases;
  const oracle::FuzzReport lct = oracle::fuzz_lct(lct_opts);
  print_report("link-cut", lct);
  return list.ok() && lct.ok() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prefix reversal/transposition sorting on log-lists"};
  app.require_subcommand(1);

  std::string input;
  std::string trace_path;
  std::string impl = "loglist";
  auto* sort = app.add_subcommand("sort", "Print d for every permutation line");
  sort->add_option("input", input, "Permutation file, - for standard input");
  sort->add_option("--trace", trace_path, "Write the traces here, one block per line");
  sort->add_option("--impl", impl)->check(CLI::IsMember({"loglist", "naive"}));

  auto* apply = app.add_subcommand("apply", "Replay a trace on every permutation line");
  apply->add_option("input", input, "Permutation file, - for standard input");
  apply->add_option("--trace", trace_path, "Trace file; a single block applies to every line");

  std::size_t n = 1;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  bool is_signed = false;
  auto* gen = app.add_subcommand("gen", "Random permutations");
  gen->add_option("--n", n)->check(CLI::PositiveNumber);
  gen->add_option("--count", count);
  gen->add_option("--seed", seed);
  gen->add_flag("--signed", is_signed);

  std::vector<std::size_t> sizes{1024, 2048, 4096};
  std::vector<std::uint64_t> seeds{0};
  std::string out_path;
  auto* bench = app.add_subcommand("bench", "CSV timings n,seed,impl,d,nanos_total");
  bench->add_option("--sizes", sizes)->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--seeds", seeds)->delimiter(',');
  bench->add_option("--impl", impl)->check(CLI::IsMember({"loglist", "naive", "both"}));
  bench->add_option("--out", out_path, "CSV destination, default standard output");

  std::size_t cases = 100;
  std::size_t max_len = 128;
  bool inject = false;
  auto* selftest = app.add_subcommand("selftest", "Differential fuzz against the array oracles");
  selftest->add_option("--cases", cases);
  selftest->add_option("--max-len", max_len);
  selftest->add_option("--seed", seed);
  selftest->add_flag("--inject-fault", inject)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFail;
  }

  try {
    if (*sort) return cmd_sort(input, trace_path, impl);
    if (*apply) return cmd_apply(input, trace_path);
    if (*gen) return cmd_gen(n, count, seed, is_signed);
    if (*bench) return cmd_bench(sizes, seeds, impl, out_path);
    if (*selftest) return cmd_selftest(cases, max_len, seed, inject);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kFail;
}
