#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#include "loglist/oracle.hpp"

namespace loglist::oracle {

namespace {

std::atomic<std::uint64_t> next_family{1};

constexpr CostValue kMin = std::numeric_limits<CostValue>::min();

}  // namespace

// ---- NaiveList ----

NaiveList NaiveList::build(std::span<const CostValue> values, std::size_t weight_channels) {
  return build(values, std::vector<std::vector<CostValue>>(weight_channels, std::vector<CostValue>(values.size(), 0)));
}

NaiveList NaiveList::build(std::span<const CostValue> values, const std::vector<std::vector<CostValue>>& weights) {
  auto family = std::make_shared<Family>();
  family->next = next_family.fetch_add(1) << 32;
  NaiveList list(std::move(family), weights.size() + 2);
  list.fill(values, weights);
  return list;
}

NaiveList NaiveList::make_sibling(std::span<const CostValue> values,
                                  const std::vector<std::vector<CostValue>>& weights) const {
  NaiveList list(family_, channels_);
  if (weights.empty()) {
    list.fill(values, std::vector<std::vector<CostValue>>(channels_ - 2, std::vector<CostValue>(values.size(), 0)));
  } else {
    list.fill(values, weights);
  }
  return list;
}

void NaiveList::fill(std::span<const CostValue> values, const std::vector<std::vector<CostValue>>& weights) {
  if (weights.size() + 2 != channels_) throw std::invalid_argument("weight channel count mismatch");
  for (const auto& w : weights) {
    if (w.size() != values.size()) throw std::invalid_argument("weight length mismatch");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    Item item{family_->next++, std::vector<CostValue>(channels_, 0)};
    item.costs[0] = values[i];
    for (std::size_t k = 0; k < weights.size(); ++k) item.costs[2 + k] = weights[k][i];
    items_.push_back(std::move(item));
  }
}

std::size_t NaiveList::locate(Token x) const {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].id == x) return i;
  }
  throw std::invalid_argument("not an element of this list");
}

CostValue NaiveList::cost(std::size_t pos, CostChannel ch) const {
  if (ch == Channel::index()) return static_cast<CostValue>(pos + 1);
  return items_[pos].costs[ch.index];
}

void NaiveList::check_channel(CostChannel ch) const {
  if (ch.index >= channels_) throw std::out_of_range("no such channel");
}

void NaiveList::check_user_channel(CostChannel ch) const {
  if (ch == Channel::index()) throw std::invalid_argument("index channel is read-only");
  check_channel(ch);
}

void NaiveList::check_partner(const NaiveList& other) const {
  if (&other == this) throw std::invalid_argument("same list");
  if (other.family_ != family_) throw std::invalid_argument("unrelated lists");
}

std::pair<std::size_t, std::size_t> NaiveList::ordered(Token x, Token y) const {
  const std::size_t a = locate(x);
  const std::size_t b = locate(y);
  if (b < a) throw std::invalid_argument("y before x");
  return {a, b};
}

std::optional<Token> NaiveList::endpoint(Side side) const {
  if (items_.empty()) return std::nullopt;
  return side == Side::first ? items_.front().id : items_.back().id;
}

CostValue NaiveList::get_value(Token x, CostChannel ch) const {
  const std::size_t pos = locate(x);
  check_channel(ch);
  return cost(pos, ch);
}

Token NaiveList::neighbor(Token x, Dir dir) const {
  const std::size_t pos = locate(x);
  if (dir == Dir::succ) {
    if (pos + 1 == items_.size()) throw std::out_of_range("no successor");
    return items_[pos + 1].id;
  }
  if (pos == 0) throw std::out_of_range("no predecessor");
  return items_[pos - 1].id;
}

NaiveList& NaiveList::insert(NaiveList& other, Token x, Placement where) {
  check_partner(other);
  const std::size_t pos = locate(x);
  const std::size_t at = where == Placement::after ? pos + 1 : pos;
  items_.insert(items_.begin() + static_cast<std::ptrdiff_t>(at), std::make_move_iterator(other.items_.begin()),
                std::make_move_iterator(other.items_.end()));
  other.items_.clear();
  return *this;
}

NaiveList& NaiveList::append(NaiveList& other) {
  check_partner(other);
  items_.insert(items_.end(), std::make_move_iterator(other.items_.begin()),
                std::make_move_iterator(other.items_.end()));
  other.items_.clear();
  return *this;
}

NaiveList& NaiveList::prepend(NaiveList& other) {
  check_partner(other);
  items_.insert(items_.begin(), std::make_move_iterator(other.items_.begin()),
                std::make_move_iterator(other.items_.end()));
  other.items_.clear();
  return *this;
}

NaiveList NaiveList::erase(Token x, Token y) {
  const auto [a, b] = ordered(x, y);
  NaiveList out(family_, channels_);
  const auto first = items_.begin() + static_cast<std::ptrdiff_t>(a);
  const auto last = items_.begin() + static_cast<std::ptrdiff_t>(b + 1);
  out.items_.assign(std::make_move_iterator(first), std::make_move_iterator(last));
  items_.erase(first, last);
  return out;
}

NaiveList& NaiveList::reverse(Token x, Token y) {
  const auto [a, b] = ordered(x, y);
  std::reverse(items_.begin() + static_cast<std::ptrdiff_t>(a), items_.begin() + static_cast<std::ptrdiff_t>(b + 1));
  return *this;
}

Token NaiveList::range_extreme(Token x, Token y, CostChannel ch, Extreme mode) const {
  check_channel(ch);
  const auto [a, b] = ordered(x, y);
  std::size_t best = a;
  for (std::size_t i = a + 1; i <= b; ++i) {
    const CostValue c = cost(i, ch);
    // later positions win ties
    if (mode == Extreme::min ? c <= cost(best, ch) : c >= cost(best, ch)) best = i;
  }
  return items_[best].id;
}

NaiveList& NaiveList::range_add(Token x, Token y, CostChannel ch, CostValue delta) {
  check_user_channel(ch);
  const auto [a, b] = ordered(x, y);
  for (std::size_t i = a; i <= b; ++i) {
    CostValue out = 0;
    if (__builtin_add_overflow(items_[i].costs[ch.index], delta, &out)) throw std::overflow_error("overflow");
  }
  for (std::size_t i = a; i <= b; ++i) items_[i].costs[ch.index] += delta;
  return *this;
}

NaiveList& NaiveList::range_negate(Token x, Token y, CostChannel ch) {
  check_user_channel(ch);
  const auto [a, b] = ordered(x, y);
  for (std::size_t i = a; i <= b; ++i) {
    if (items_[i].costs[ch.index] == kMin) throw std::overflow_error("overflow");
  }
  for (std::size_t i = a; i <= b; ++i) items_[i].costs[ch.index] = -items_[i].costs[ch.index];
  return *this;
}

std::size_t NaiveList::find_rank(Token x) const { return locate(x) + 1; }

Token NaiveList::find_element(std::size_t i) const {
  if (i < 1 || i > items_.size()) throw std::out_of_range("no such position");
  return items_[i - 1].id;
}

std::optional<Token> NaiveList::search_sorted(CostChannel ch, CostValue target) const {
  check_channel(ch);
  std::optional<std::size_t> below;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const CostValue c = cost(i, ch);
    if (c == target) return items_[i].id;
    if (c < target && (!below || c > cost(*below, ch))) below = i;
  }
  if (below) return items_[*below].id;
  return std::nullopt;
}

std::vector<CostValue> NaiveList::iterate(CostChannel ch) const {
  check_channel(ch);
  std::vector<CostValue> out;
  for (std::size_t i = 0; i < items_.size(); ++i) out.push_back(cost(i, ch));
  return out;
}

std::vector<Token> NaiveList::elements() const {
  std::vector<Token> out;
  for (const Item& item : items_) out.push_back(item.id);
  return out;
}

// ---- NaiveForest ----

NaiveForest::NaiveForest(std::size_t channels) : channels_(channels) {
  if (channels == 0) throw std::invalid_argument("no channels");
}

std::size_t NaiveForest::check(lct::VertexId v) const {
  if (v.value >= parent_.size()) throw std::out_of_range("invalid vertex id");
  return v.value;
}

void NaiveForest::check_channel(CostChannel ch) const {
  if (ch.index >= channels_) throw std::out_of_range("invalid channel");
}

lct::VertexId NaiveForest::make_vertex() {
  parent_.emplace_back();
  cost_.emplace_back(channels_, 0);
  return lct::VertexId{static_cast<std::uint32_t>(parent_.size() - 1)};
}

std::vector<std::size_t> NaiveForest::root_path(lct::VertexId v) const {
  std::vector<std::size_t> path{check(v)};
  while (parent_[path.back()]) path.push_back(*parent_[path.back()]);
  return path;
}

std::optional<lct::VertexId> NaiveForest::dparent(lct::VertexId v) const {
  const auto p = parent_[check(v)];
  if (!p) return std::nullopt;
  return lct::VertexId{static_cast<std::uint32_t>(*p)};
}

lct::VertexId NaiveForest::droot(lct::VertexId v) const {
  return lct::VertexId{static_cast<std::uint32_t>(root_path(v).back())};
}

CostValue NaiveForest::dcost(lct::VertexId v, CostChannel ch) const {
  check_channel(ch);
  const std::size_t x = check(v);
  if (!parent_[x]) throw std::invalid_argument("root");
  return cost_[x][ch.index];
}

lct::VertexId NaiveForest::dmincost(lct::VertexId v, CostChannel ch, Extreme mode) const {
  check_channel(ch);
  const std::vector<std::size_t> path = root_path(v);
  if (path.size() < 2) throw std::invalid_argument("root");
  std::size_t best = path[0];
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const CostValue c = cost_[path[i]][ch.index];
    const CostValue b = cost_[best][ch.index];
    if (mode == Extreme::min ? c <= b : c >= b) best = path[i];
  }
  return lct::VertexId{static_cast<std::uint32_t>(best)};
}

void NaiveForest::dupdate(lct::VertexId v, CostChannel ch, CostValue delta) {
  check_channel(ch);
  std::vector<std::size_t> path = root_path(v);
  path.pop_back();
  for (std::size_t x : path) {
    CostValue out = 0;
    if (__builtin_add_overflow(cost_[x][ch.index], delta, &out)) throw std::overflow_error("overflow");
  }
  for (std::size_t x : path) cost_[x][ch.index] += delta;
}

void NaiveForest::dminuscost(lct::VertexId v, CostChannel ch) {
  check_channel(ch);
  std::vector<std::size_t> path = root_path(v);
  path.pop_back();
  for (std::size_t x : path) {
    if (cost_[x][ch.index] == kMin) throw std::overflow_error("overflow");
  }
  for (std::size_t x : path) cost_[x][ch.index] = -cost_[x][ch.index];
}

void NaiveForest::dlink(lct::VertexId v, lct::VertexId w, std::span<const CostValue> costs) {
  const std::size_t x = check(v);
  check(w);
  if (costs.size() != channels_) throw std::invalid_argument("cost arity");
  if (parent_[x]) throw std::invalid_argument("v is not a root");
  if (droot(w) == v) throw std::invalid_argument("same tree");
  devert(w);
  parent_[w.value] = x;
  cost_[w.value].assign(costs.begin(), costs.end());
}

std::vector<CostValue> NaiveForest::dcut(lct::VertexId v) {
  const std::size_t x = check(v);
  if (!parent_[x]) throw std::invalid_argument("root");
  parent_[x].reset();
  return cost_[x];
}

void NaiveForest::devert(lct::VertexId v) {
  const std::vector<std::size_t> path = root_path(v);
  std::vector<std::vector<CostValue>> costs;
  for (std::size_t x : path) costs.push_back(cost_[x]);
  for (std::size_t i = 1; i < path.size(); ++i) {
    parent_[path[i]] = path[i - 1];
    cost_[path[i]] = costs[i - 1];
  }
  parent_[path[0]].reset();
}

lct::VertexId NaiveForest::dsearchcost(lct::VertexId v, CostChannel ch, CostValue target) const {
  check_channel(ch);
  const std::vector<std::size_t> path = root_path(v);
  if (path.size() < 2) throw std::invalid_argument("root");
  std::optional<std::size_t> below;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const CostValue c = cost_[path[i]][ch.index];
    if (c == target) return lct::VertexId{static_cast<std::uint32_t>(path[i])};
    if (c < target && (!below || c > cost_[*below][ch.index])) below = path[i];
  }
  return lct::VertexId{static_cast<std::uint32_t>(below ? *below : path.back())};
}

}  // namespace loglist::oracle
