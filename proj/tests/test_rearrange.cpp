#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "loglist/oracle.hpp"
#include "loglist/random.hpp"
#include "loglist/rearrange.hpp"

using namespace loglist;
using namespace loglist::rearrange;
using V = std::vector<CostValue>;

namespace {

Permutation replay(Permutation p, const SortTrace& t) {
  for (const RearrangeOp& op : t.ops) p = oracle::apply_op_formula(p, op);
  return p;
}

// A random op of the given kind that is valid on a permutation of size n >= 2.
RearrangeOp random_op(OpKind kind, std::size_t n, std::mt19937_64& rng) {
  auto pick = [&](std::size_t k, std::size_t hi) {  // k sorted distinct values in 1..hi
    std::vector<std::size_t> all(hi);
    for (std::size_t q = 0; q < hi; ++q) all[q] = q + 1;
    for (std::size_t q = 0; q < k; ++q) std::swap(all[q], all[q + draw_below(rng, hi - q)]);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  };
  switch (kind) {
    case OpKind::tr: {
      const auto v = pick(3, n + 1);
      return RearrangeOp::tr(v[0], v[1], v[2]);
    }
    case OpKind::preftr: {
      const auto v = pick(2, n + 1);
      return RearrangeOp::preftr(std::max<std::size_t>(v[0], 2), std::max<std::size_t>(v[1], 3));
    }
    case OpKind::rv:
    case OpKind::rv_signed: {
      std::size_t i = 1 + draw_below(rng, n);
      std::size_t j = 1 + draw_below(rng, n);
      if (i > j) std::swap(i, j);
      return kind == OpKind::rv ? RearrangeOp::rv(i, j) : RearrangeOp::rv_signed(i, j);
    }
    case OpKind::prefrv:
      return RearrangeOp::prefrv(1 + draw_below(rng, n));
    case OpKind::bi: {
      const auto v = pick(3, n + 1);
      const std::size_t k = v[1] + draw_below(rng, v[2] - v[1]);  // j <= k < l
      return RearrangeOp::bi(v[0], v[1], k, v[2]);
    }
  }
  return {};
}

}  // namespace

TEST_CASE("operation examples") {
  CHECK(apply_op(Permutation{{1, 2, 3, 4, 5}}, RearrangeOp::tr(2, 4, 5)).values == V{1, 4, 2, 3, 5});
  CHECK(apply_op(Permutation{{1, 2, 3, 4, 5, 6}}, RearrangeOp::bi(2, 3, 4, 5)).values == V{1, 4, 3, 2, 5, 6});
  CHECK(apply_op(Permutation{{1, -3, 2}, true}, RearrangeOp::rv_signed(2, 3)).values == V{1, -2, 3});
  CHECK(apply_op(Permutation{{3, 1, 2}}, RearrangeOp::prefrv(3)).values == V{2, 1, 3});
  CHECK(apply_op(Permutation{{3, 1, 2}}, RearrangeOp::preftr(2, 4)).values == V{1, 2, 3});
}

TEST_CASE("operation bounds and signedness") {
  const Permutation p{{1, 2}};
  CHECK_THROWS_AS(apply_op(p, RearrangeOp::rv(1, 3)), std::out_of_range);
  CHECK_THROWS_AS(apply_op(p, RearrangeOp::tr(1, 1, 2)), std::out_of_range);
  CHECK_THROWS_AS(apply_op(p, RearrangeOp::bi(1, 2, 1, 3)), std::out_of_range);
  CHECK_THROWS_AS(apply_op(p, RearrangeOp::rv_signed(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(apply_op(Permutation{{1, -2}, true}, RearrangeOp::rv(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(apply_op(Permutation{{1, 1}}, RearrangeOp::rv(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(validate(Permutation{{1, -2}}), std::invalid_argument);
}

TEST_CASE("log-list operations agree with formula substitution") {
  std::mt19937_64 rng(mix_seed(3, 0));
  for (OpKind kind : {OpKind::tr, OpKind::rv, OpKind::rv_signed, OpKind::preftr, OpKind::prefrv, OpKind::bi}) {
    std::size_t bad = 0;
    for (int rep = 0; rep < 10000; ++rep) {
      const std::size_t n = 2 + draw_below(rng, 11);
      Permutation p{random_permutation(n, rng), kind == OpKind::rv_signed};
      if (p.is_signed) {
        for (CostValue& v : p.values) {
          if (draw_below(rng, 2)) v = -v;
        }
      }
      const RearrangeOp op = random_op(kind, n, rng);
      if (apply_op(p, op) != oracle::apply_op_formula(p, op)) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("sorting small inputs") {
  CHECK(sort_prefix_rt(Permutation::identity(6)).d() == 0);
  CHECK(sort_prefix_rt(Permutation{{}}).d() == 0);
  const SortTrace t = sort_prefix_rt(Permutation{{2, 1}});
  REQUIRE(t.d() == 1);
  CHECK(t.ops[0] == RearrangeOp::prefrv(2));
  CHECK_THROWS_AS(sort_prefix_rt(Permutation{{1, -2}, true}), std::invalid_argument);
}

TEST_CASE("all permutations up to five") {
  for (std::size_t n = 1; n <= 5; ++n) {
    V p(n);
    for (std::size_t q = 0; q < n; ++q) p[q] = static_cast<CostValue>(q + 1);
    do {
      const Permutation perm{p};
      const SortTrace t = sort_prefix_rt(perm, SortOptions{true});
      CHECK(replay(perm, t).is_identity());
      CHECK(t == oracle::sort_prefix_rt_naive(perm));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("random permutations of size 1000") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    std::mt19937_64 rng(mix_seed(seed, 1000));
    const Permutation p{random_permutation(1000, rng)};
    const SortTrace t = sort_prefix_rt(p);
    CHECK(replay(p, t).is_identity());
    CHECK(t == oracle::sort_prefix_rt_naive(p));
  }
}

TEST_CASE("incremental strips match a rescan") {
  std::mt19937_64 rng(mix_seed(9, 0));
  const Permutation p{random_permutation(300, rng)};
  CHECK(sort_prefix_rt(p, SortOptions{true}) == oracle::sort_prefix_rt_naive(p));

  SortState state(p);
  while (!state.sorted()) {
    state.apply(state.next_op());
    V seq = state.contents();
    CHECK(state.strips() == strip_scan(seq));
  }
}

TEST_CASE("strip scan") {
  const StripIndex one = strip_scan(V{1, 2, 3});
  CHECK(one.partner(1) == 3);
  CHECK(one.partner(3) == 1);
  CHECK(one.partner(2) == 0);
  const StripMarkers m = strip_markers(V{1, 2, 3});
  CHECK(m.b[3] == 1);
  CHECK(m.e[1] == 3);
  CHECK(m.b[1] == 0);
  CHECK(m.e[3] == 0);
  CHECK(m.b[2] == 0);
  CHECK(m.e[2] == 0);

  const StripIndex two = strip_scan(V{2, 1, 3, 4, 5});
  CHECK(two.partner(2) == 1);
  CHECK(two.partner(1) == 2);
  CHECK(two.partner(3) == 5);
  CHECK(two.partner(5) == 3);
  CHECK(two.partner(4) == 0);

  const StripIndex down = strip_scan(V{5, 4, 3, 2, 1});
  CHECK(down.partner(5) == 1);
  CHECK(down.partner(1) == 5);

  const StripIndex singles = strip_scan(V{3, 1, 5});
  CHECK(singles.partner(3) == 3);
  CHECK(singles.partner(1) == 1);
}

TEST_CASE("strip merge and split") {
  StripIndex s = strip_scan(V{1, 2, 4, 5, 3});
  CHECK(s.partner(1) == 2);
  CHECK(s.partner(4) == 5);
  s.merge(2, 4);  // pretend 2 and 4 became adjacent
  CHECK(s.partner(1) == 5);
  CHECK(s.partner(5) == 1);
  CHECK(s.partner(2) == 0);
  CHECK(s.partner(4) == 0);
  s.split(1, 2, 4, 5);
  CHECK(s == strip_scan(V{1, 2, 4, 5, 3}));
}

TEST_CASE("ptree blocks") {
  LogList a = LogList::build(V{1, 3});
  LogList b = a.make_sibling(V{2});
  CHECK(ptree_join(std::move(a), std::move(b)).iterate() == V{1, 3, 2});

  auto [left, right] = ptree_split(LogList::build(V{5, 1, 4, 2, 3}), 2);
  CHECK(left.iterate() == V{5, 1});
  CHECK(right.iterate() == V{4, 2, 3});
  const ElemId top = ptree_block_max(right, *right.endpoint(Side::first), *right.endpoint(Side::last));
  CHECK(right.get_value(top) == 4);

  auto [none, all] = ptree_split(LogList::build(V{7, 8}), 0);
  CHECK(none.empty());
  CHECK(all.iterate() == V{7, 8});
  CHECK(ptree_join(std::move(none), std::move(all)).iterate() == V{7, 8});

  LogList x = LogList::build(V{1});
  LogList y = LogList::build(V{2});
  CHECK_THROWS_AS(ptree_join(std::move(x), std::move(y)), std::invalid_argument);
}
