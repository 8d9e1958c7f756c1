#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <stdexcept>
#include <vector>

#include "loglist/log_list.hpp"

using namespace loglist;
using V = std::vector<CostValue>;

namespace {

std::vector<std::size_t> ranks(LogList& l) {
  std::vector<std::size_t> out;
  for (ElemId x : l.elements()) out.push_back(l.find_rank(x));
  return out;
}

V index_channel(LogList& l) { return l.iterate(Channel::index()); }

V one_to(std::size_t n) {
  V out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(static_cast<CostValue>(i));
  return out;
}

ElemId at(LogList& l, std::size_t i) { return l.find_element(i); }

}  // namespace

TEST_CASE("build and the val;index labels") {
  LogList l = LogList::build(V{8, 5, -4, 6});
  CHECK(l.length() == 4);
  CHECK(l.iterate() == V{8, 5, -4, 6});
  CHECK(index_channel(l) == V{1, 2, 3, 4});
  CHECK(l.get_value(*l.endpoint(Side::first)) == 8);
  CHECK(l.get_value(*l.endpoint(Side::last)) == 6);
  CHECK(l.get_value(at(l, 3)) == -4);
}

TEST_CASE("empty and singleton lists") {
  LogList e = LogList::build(V{});
  CHECK(e.empty());
  CHECK_FALSE(e.endpoint(Side::first).has_value());
  CHECK_FALSE(e.endpoint(Side::last).has_value());
  CHECK(e.iterate().empty());
  CHECK(e.elements().empty());
  CHECK_THROWS_AS(e.find_element(1), std::out_of_range);

  LogList s = LogList::build(V{42});
  CHECK(s.length() == 1);
  CHECK(s.endpoint(Side::first) == s.endpoint(Side::last));
}

TEST_CASE("neighbors") {
  LogList l = LogList::build(V{8, 5, -4, 6});
  const ElemId x2 = at(l, 2);
  CHECK(l.get_value(l.neighbor(x2, Dir::succ)) == -4);
  CHECK(l.neighbor(l.neighbor(x2, Dir::succ), Dir::prec) == x2);
  CHECK(l.neighbor(l.neighbor(x2, Dir::prec), Dir::succ) == x2);
  CHECK_THROWS_AS(l.neighbor(*l.endpoint(Side::first), Dir::prec), std::out_of_range);
  CHECK_THROWS_AS(l.neighbor(*l.endpoint(Side::last), Dir::succ), std::out_of_range);
}

TEST_CASE("insert after x2") {
  LogList l = LogList::build(V{8, 5, -4, 6});
  LogList l1 = l.make_sibling(V{3, 12});
  l.insert(l1, at(l, 2));
  CHECK(l.iterate() == V{8, 5, 3, 12, -4, 6});
  CHECK(index_channel(l) == V{1, 2, 3, 4, 5, 6});
  CHECK(l.length() == 6);
  CHECK(l1.empty());
}

TEST_CASE("insert variants") {
  LogList l = LogList::build(V{1, 2, 3});
  LogList none = l.make_sibling(V{});
  l.insert(none, at(l, 2));
  CHECK(l.iterate() == V{1, 2, 3});

  LogList front = l.make_sibling(V{7, 8});
  l.insert(front, *l.endpoint(Side::first), Placement::before);
  CHECK(l.iterate() == V{7, 8, 1, 2, 3});

  LogList back = l.make_sibling(V{9});
  l.insert(back, *l.endpoint(Side::last));
  CHECK(l.iterate() == V{7, 8, 1, 2, 3, 9});
  CHECK(l.get_value(*l.endpoint(Side::last)) == 9);

  LogList mid = l.make_sibling(V{0});
  l.insert(mid, at(l, 3), Placement::before);
  CHECK(l.iterate() == V{7, 8, 0, 1, 2, 3, 9});
  CHECK(index_channel(l) == one_to(7));
}

TEST_CASE("append and prepend onto empty lists") {
  LogList l = LogList::build(V{});
  LogList a = l.make_sibling(V{1, 2});
  l.append(a);
  CHECK(l.iterate() == V{1, 2});
  LogList b = l.make_sibling(V{0});
  l.prepend(b);
  LogList c = l.make_sibling(V{3});
  l.append(c);
  CHECK(l.iterate() == V{0, 1, 2, 3});
  CHECK(index_channel(l) == one_to(4));
}

TEST_CASE("erase x3..x4") {
  LogList l = LogList::build(V{8, 5, 3, 12, -4, 6});
  LogList l1 = l.erase(at(l, 3), at(l, 4));
  CHECK(l.iterate() == V{8, 5, -4, 6});
  CHECK(l1.iterate() == V{3, 12});
  CHECK(index_channel(l) == V{1, 2, 3, 4});
  CHECK(index_channel(l1) == V{1, 2});
}

TEST_CASE("erase edge cases") {
  LogList l = LogList::build(V{1, 2, 3, 4});
  LogList one = l.erase(at(l, 2), at(l, 2));
  CHECK(one.length() == 1);
  CHECK(l.iterate() == V{1, 3, 4});
  LogList head = l.erase(at(l, 1), at(l, 1));
  CHECK(l.iterate() == V{3, 4});
  CHECK(l.get_value(*l.endpoint(Side::first)) == 3);
  LogList tail = l.erase(at(l, 2), at(l, 2));
  CHECK(l.iterate() == V{3});
  CHECK(l.get_value(*l.endpoint(Side::last)) == 3);

  LogList all = LogList::build(V{5, 6, 7});
  LogList moved = all.erase(*all.endpoint(Side::first), *all.endpoint(Side::last));
  CHECK(all.empty());
  CHECK(moved.iterate() == V{5, 6, 7});
}

TEST_CASE("handles follow their element into the erased sublist") {
  LogList l = LogList::build(V{1, 2, 3, 4});
  const ElemId x = at(l, 2);
  const ElemId y = at(l, 3);
  LogList out = l.erase(x, y);
  CHECK(out.get_value(x) == 2);
  CHECK(out.find_rank(y) == 2);
  CHECK_THROWS_AS(l.get_value(x), std::invalid_argument);
  l.insert(out, *l.endpoint(Side::first));
  CHECK(l.find_rank(x) == 2);
}

TEST_CASE("reverse x3..x4") {
  LogList l = LogList::build(V{8, 5, 3, 12, -4, 6});
  const ElemId x = at(l, 3);
  const ElemId y = at(l, 4);
  l.reverse(x, y);
  CHECK(l.iterate() == V{8, 5, 12, 3, -4, 6});
  CHECK(index_channel(l) == one_to(6));
  l.reverse(y, x);
  CHECK(l.iterate() == V{8, 5, 3, 12, -4, 6});
  l.reverse(x, x);
  CHECK(l.iterate() == V{8, 5, 3, 12, -4, 6});
}

TEST_CASE("reverse the whole list") {
  LogList l = LogList::build(V{1, 2, 3, 4, 5});
  const ElemId first = *l.endpoint(Side::first);
  l.reverse(first, *l.endpoint(Side::last));
  CHECK(l.iterate() == V{5, 4, 3, 2, 1});
  CHECK(l.find_rank(first) == 5);
  CHECK(*l.endpoint(Side::last) == first);
  CHECK(ranks(l) == std::vector<std::size_t>{1, 2, 3, 4, 5});
}

TEST_CASE("range extreme") {
  LogList l = LogList::build(V{8, 5, -4, 6});
  const ElemId first = *l.endpoint(Side::first);
  const ElemId last = *l.endpoint(Side::last);
  CHECK(l.get_value(l.range_extreme(first, last, Channel::value(), Extreme::min)) == -4);
  CHECK(l.get_value(l.range_extreme(first, last, Channel::value(), Extreme::max)) == 8);
  CHECK(l.get_value(l.range_extreme(first, at(l, 2), Channel::value(), Extreme::min)) == 5);

  LogList ties = LogList::build(V{2, 1, 1});
  const ElemId m = ties.range_extreme(*ties.endpoint(Side::first), *ties.endpoint(Side::last), Channel::value(),
                                      Extreme::min);
  CHECK(ties.find_rank(m) == 3);
}

TEST_CASE("range add and negate") {
  LogList l = LogList::build(V{8, 5, -4, 6});
  const ElemId first = *l.endpoint(Side::first);
  const ElemId last = *l.endpoint(Side::last);
  l.range_add(first, last, Channel::value(), 0);
  CHECK(l.iterate() == V{8, 5, -4, 6});
  l.range_add(first, last, Channel::value(), 3);
  CHECK(l.iterate() == V{11, 8, -1, 9});
  l.range_add(first, last, Channel::value(), -3);
  l.range_negate(first, last, Channel::value());
  CHECK(l.iterate() == V{-8, -5, 4, -6});
  l.range_negate(first, last, Channel::value());
  CHECK(l.iterate() == V{8, 5, -4, 6});

  const ElemId x3 = at(l, 3);
  l.range_negate(x3, x3, Channel::value());
  CHECK(l.get_value(x3) == 4);
  CHECK(index_channel(l) == one_to(4));
}

TEST_CASE("negation swaps a unique extreme") {
  LogList l = LogList::build(V{3, 9, -2, 4});
  const ElemId first = *l.endpoint(Side::first);
  const ElemId last = *l.endpoint(Side::last);
  const ElemId max_before = l.range_extreme(first, last, Channel::value(), Extreme::max);
  l.range_negate(first, last, Channel::value());
  CHECK(l.range_extreme(first, last, Channel::value(), Extreme::min) == max_before);
}

TEST_CASE("rank and select") {
  LogList l = LogList::build(V{8, 5, -4, 6});
  CHECK(l.find_rank(at(l, 3)) == 3);
  CHECK(l.find_rank(*l.endpoint(Side::first)) == 1);
  CHECK(at(l, 1) == *l.endpoint(Side::first));
  CHECK_THROWS_AS(l.find_element(0), std::out_of_range);
  CHECK_THROWS_AS(l.find_element(5), std::out_of_range);
  for (std::size_t i = 1; i <= 4; ++i) CHECK(l.find_rank(at(l, i)) == i);
}

TEST_CASE("weights and search_sorted") {
  LogList l = LogList::build(V{10, 20, 30}, std::vector<V>{{2, 5, 7}});
  CHECK(l.weight_channels() == 1);
  const CostChannel w = Channel::weight(0);
  CHECK(l.iterate(w) == V{2, 5, 7});
  CHECK(l.get_value(*l.search_sorted(w, 5), w) == 5);
  CHECK(l.get_value(*l.search_sorted(w, 6), w) == 5);
  CHECK_FALSE(l.search_sorted(w, 1).has_value());
  CHECK(l.get_value(*l.search_sorted(w, 99)) == 30);

  const ElemId first = *l.endpoint(Side::first);
  const ElemId last = *l.endpoint(Side::last);
  l.range_add(first, last, w, 10);
  CHECK(l.iterate(w) == V{12, 15, 17});
  CHECK(l.get_value(l.range_extreme(first, last, w, Extreme::max)) == 30);
  l.range_negate(first, at(l, 2), w);
  CHECK(l.iterate(w) == V{-12, -15, 17});
  CHECK(l.iterate() == V{10, 20, 30});
}

TEST_CASE("misuse is rejected") {
  LogList l = LogList::build(V{1, 2, 3});
  LogList other = LogList::build(V{1, 2, 3});
  const ElemId foreign = *other.endpoint(Side::first);
  CHECK_THROWS_AS(l.get_value(foreign), std::invalid_argument);
  CHECK_THROWS_AS(l.reverse(at(l, 3), at(l, 1)), std::invalid_argument);
  CHECK_THROWS_AS(l.range_add(at(l, 1), at(l, 2), Channel::index(), 1), std::invalid_argument);
  CHECK_THROWS_AS(l.range_add(at(l, 1), at(l, 2), CostChannel{7}, 1), std::out_of_range);
  CHECK_THROWS_AS(l.get_value(at(l, 1), CostChannel{7}), std::out_of_range);
  CHECK_THROWS_AS(l.insert(l, at(l, 1)), std::invalid_argument);
  CHECK_THROWS_AS(l.append(other), std::invalid_argument);
  CHECK(l.iterate() == V{1, 2, 3});
  CHECK(other.iterate() == V{1, 2, 3});
}

TEST_CASE("overflow leaves the list unchanged") {
  constexpr CostValue big = std::numeric_limits<CostValue>::max();
  LogList l = LogList::build(V{big, 0});
  const ElemId first = *l.endpoint(Side::first);
  const ElemId last = *l.endpoint(Side::last);
  CHECK_THROWS_AS(l.range_add(first, last, Channel::value(), 1), std::overflow_error);
  CHECK(l.iterate() == V{big, 0});
  l.range_add(last, last, Channel::value(), 1);
  CHECK(l.iterate() == V{big, 1});
  CHECK(l.find_rank(last) == 2);
}

TEST_CASE("moved-from lists are empty") {
  LogList l = LogList::build(V{1, 2});
  LogList m = std::move(l);
  CHECK(m.iterate() == V{1, 2});
  CHECK(l.empty());  // NOLINT(bugprone-use-after-move)
}
