#include "loglist/log_list.hpp"

#include <atomic>
#include <stdexcept>

namespace loglist {

namespace detail {

namespace {
std::atomic<std::uint32_t> next_space_id{1};
}

// Forest shared by sibling lists, plus the element landmark tables: each
// element maps to the arc carrying it and each live arc back to its element.
struct Space {
  explicit Space(std::size_t weight_channels)
      : forest(2 + weight_channels), id(next_space_id.fetch_add(1, std::memory_order_relaxed)) {}

  lct::VertexId take_spare() {
    if (spare.empty()) return forest.make_vertex();
    const lct::VertexId v = spare.back();
    spare.pop_back();
    return v;
  }

  void bind(std::uint32_t elem, lct::ArcId arc) {
    elem_arc[elem] = arc;
    if (arc_elem.size() <= arc.value) arc_elem.resize(forest.arc_capacity());
    arc_elem[arc.value] = elem;
  }

  lct::Forest forest;
  std::uint32_t id;
  std::vector<lct::ArcId> elem_arc;
  std::vector<std::uint32_t> arc_elem;
  // Singleton trees left over from splices, reused as fresh tail+ vertices.
  std::vector<lct::VertexId> spare;
  testing::Fault fault = testing::Fault::none;
};

}  // namespace detail

namespace {

std::vector<std::vector<CostValue>> zero_weights(std::size_t channels, std::size_t n) {
  return std::vector<std::vector<CostValue>>(channels, std::vector<CostValue>(n, 0));
}

void fill(detail::Space& space, std::span<const CostValue> values,
          const std::vector<std::vector<CostValue>>& weights, lct::VertexId& head, lct::VertexId& tail,
          lct::VertexId& tailplus, ElemId& first, ElemId& last) {
  const std::size_t n = values.size();
  const std::size_t channels = space.forest.channels();
  if (weights.size() + 2 != channels) throw std::invalid_argument("weight channel count mismatch");
  for (const auto& w : weights) {
    if (w.size() != n) throw std::invalid_argument("weight sequence length differs from value count");
  }
  if (n == 0) return;
  std::vector<CostValue> costs(n * channels);
  for (std::size_t i = 0; i < n; ++i) {
    costs[i * channels] = values[i];
    costs[i * channels + 1] = static_cast<CostValue>(i + 1);
    for (std::size_t k = 0; k < weights.size(); ++k) costs[i * channels + 2 + k] = weights[k][i];
  }
  const lct::Forest::Path path = space.forest.make_path(costs);
  const auto base = static_cast<std::uint32_t>(space.elem_arc.size());
  space.elem_arc.resize(space.elem_arc.size() + n);
  for (std::size_t i = 0; i < n; ++i) space.bind(base + static_cast<std::uint32_t>(i), path.arcs[i]);
  head = path.vertices.front();
  tail = path.vertices[n - 1];
  tailplus = path.vertices.back();
  first = ElemId{base, space.id};
  last = ElemId{base + static_cast<std::uint32_t>(n - 1), space.id};
}

}  // namespace

LogList::LogList(std::shared_ptr<detail::Space> space) : space_(std::move(space)) {}

LogList::LogList(LogList&& other) noexcept
    : space_(other.space_),
      size_(other.size_),
      head_(other.head_),
      tail_(other.tail_),
      tailplus_(other.tailplus_),
      first_(other.first_),
      last_(other.last_) {
  other.reset();
}

LogList& LogList::operator=(LogList&& other) noexcept {
  if (this != &other) {
    space_ = other.space_;
    size_ = other.size_;
    head_ = other.head_;
    tail_ = other.tail_;
    tailplus_ = other.tailplus_;
    first_ = other.first_;
    last_ = other.last_;
    other.reset();
  }
  return *this;
}

LogList::~LogList() = default;

LogList LogList::build(std::span<const CostValue> values, std::size_t weight_channels) {
  return build(values, zero_weights(weight_channels, values.size()));
}

LogList LogList::build(std::span<const CostValue> values, const std::vector<std::vector<CostValue>>& weights) {
  LogList list(std::make_shared<detail::Space>(weights.size()));
  fill(*list.space_, values, weights, list.head_, list.tail_, list.tailplus_, list.first_, list.last_);
  list.size_ = values.size();
  return list;
}

LogList LogList::make_sibling(std::span<const CostValue> values,
                              const std::vector<std::vector<CostValue>>& weights) const {
  LogList list(space_);
  const auto& w = weights.empty() ? zero_weights(weight_channels(), values.size()) : weights;
  fill(*space_, values, w, list.head_, list.tail_, list.tailplus_, list.first_, list.last_);
  list.size_ = values.size();
  return list;
}

std::size_t LogList::weight_channels() const { return space_->forest.channels() - 2; }

void LogList::reset() {
  size_ = 0;
  head_ = tail_ = tailplus_ = lct::VertexId{};
  first_ = last_ = ElemId{};
}

void LogList::standardize() {
  if (size_ > 0) space_->forest.devert(tailplus_);
}

lct::ArcId LogList::arc_of(ElemId x) const { return space_->elem_arc[x.value]; }

ElemId LogList::elem_of(lct::ArcId a) const { return ElemId{space_->arc_elem[a.value], space_->id}; }

void LogList::require_member(ElemId x) {
  if (x.space != space_->id || x.value >= space_->elem_arc.size()) {
    throw std::invalid_argument("element handle is foreign to this list");
  }
  if (size_ == 0) throw std::invalid_argument("element does not belong to this list");
  const lct::ArcId arc = arc_of(x);
  if (space_->forest.droot(space_->forest.arc_endpoints(arc).first) != tailplus_) {
    throw std::invalid_argument("element does not belong to this list");
  }
}

std::pair<std::size_t, std::size_t> LogList::require_ordered(ElemId x, ElemId y) {
  const std::size_t rx = find_rank(x);
  const std::size_t ry = find_rank(y);
  if (ry < rx) throw std::invalid_argument("range endpoints out of order");
  return {rx, ry};
}

void LogList::require_user_channel(CostChannel ch) const {
  if (ch == Channel::index()) throw std::invalid_argument("the index channel is managed by the list");
  if (ch.index >= space_->forest.channels()) throw std::out_of_range("invalid cost channel");
}

void LogList::require_splice_partner(const LogList& other) const {
  if (&other == this) throw std::invalid_argument("cannot splice a list into itself");
  if (other.space_ != space_) throw std::invalid_argument("lists do not share a forest");
}

LogList::Oriented LogList::oriented(ElemId x) {
  const lct::ArcId arc = arc_of(x);
  const lct::VertexId source = space_->forest.arc_source(arc);
  const auto [a, b] = space_->forest.arc_endpoints(arc);
  return {source, source == a ? b : a};
}

std::vector<CostValue> LogList::cut_element(ElemId x) {
  return space_->forest.dcut(space_->forest.arc_source(arc_of(x)));
}

void LogList::link_element(ElemId x, lct::VertexId a, lct::VertexId b, std::span<const CostValue> costs) {
  space_->forest.devert(a);
  space_->bind(x.value, space_->forest.dlink(a, b, costs));
}

void LogList::path_update(lct::VertexId from, lct::VertexId to, CostChannel ch, CostValue delta) {
  if (from == to || delta == 0) return;
  space_->forest.devert(to);
  space_->forest.dupdate(from, ch, delta);
}

std::optional<ElemId> LogList::endpoint(Side side) const {
  if (size_ == 0) return std::nullopt;
  return side == Side::first ? first_ : last_;
}

CostValue LogList::get_value(ElemId x, CostChannel ch) {
  require_member(x);
  return space_->forest.arc_cost(arc_of(x), ch);
}

ElemId LogList::neighbor(ElemId x, Dir dir) {
  require_member(x);
  lct::Forest& forest = space_->forest;
  if (dir == Dir::succ) {
    if (x == last_) throw std::out_of_range("succ of the last element");
    return elem_of(*forest.parent_arc(oriented(x).target));
  }
  if (x == first_) throw std::out_of_range("prec of the first element");
  const lct::VertexId source = oriented(x).source;
  forest.devert(head_);
  const lct::ArcId arc = *forest.parent_arc(source);
  standardize();
  return elem_of(arc);
}

void LogList::adopt(LogList& other) {
  size_ = other.size_;
  head_ = other.head_;
  tail_ = other.tail_;
  tailplus_ = other.tailplus_;
  first_ = other.first_;
  last_ = other.last_;
  other.reset();
}

LogList& LogList::insert(LogList& other, ElemId x, Placement where) {
  require_splice_partner(other);
  require_member(x);
  if (other.empty()) return *this;
  if (where == Placement::before) {
    if (x == first_) return prepend(other);
    x = neighbor(x, Dir::prec);
  }
  const auto n0 = space_->forest.arc_cost(arc_of(x), Channel::index());
  const auto n1 = static_cast<CostValue>(other.size_);
  const auto [source, succ_vertex] = oriented(x);

  const std::vector<CostValue> x_costs = cut_element(x);
  const std::vector<CostValue> other_last_costs = cut_element(other.last_);
  space_->spare.push_back(other.tailplus_);
  link_element(x, source, other.head_, x_costs);
  link_element(other.last_, other.tail_, succ_vertex, other_last_costs);

  path_update(other.head_, succ_vertex, Channel::index(), n0);
  path_update(succ_vertex, tailplus_, Channel::index(), n1);
  if (x == last_) {
    last_ = other.last_;
    tail_ = other.tail_;
  }
  size_ += other.size_;
  other.reset();
  standardize();
  return *this;
}

LogList& LogList::prepend(LogList& other) {
  require_splice_partner(other);
  if (other.empty()) return *this;
  if (empty()) {
    adopt(other);
    return *this;
  }
  const std::vector<CostValue> costs = cut_element(other.last_);
  space_->spare.push_back(other.tailplus_);
  link_element(other.last_, other.tail_, head_, costs);
  path_update(head_, tailplus_, Channel::index(), static_cast<CostValue>(other.size_));
  head_ = other.head_;
  first_ = other.first_;
  size_ += other.size_;
  other.reset();
  standardize();
  return *this;
}

LogList& LogList::append(LogList& other) {
  require_splice_partner(other);
  if (other.empty()) return *this;
  if (empty()) {
    adopt(other);
    return *this;
  }
  return insert(other, last_, Placement::after);
}

LogList LogList::erase(ElemId x, ElemId y) {
  const auto [rx, ry] = require_ordered(x, y);
  const auto count = static_cast<CostValue>(ry - rx + 1);
  const auto before = static_cast<CostValue>(rx - 1);
  const std::optional<ElemId> prev = x != first_ ? std::optional(neighbor(x, Dir::prec)) : std::nullopt;
  const std::optional<ElemId> next = y != last_ ? std::optional(neighbor(y, Dir::succ)) : std::nullopt;
  const lct::VertexId x_source = oriented(x).source;
  const auto [y_source, y_target] = oriented(y);
  const lct::VertexId prev_source = prev ? oriented(*prev).source : lct::VertexId{};

  path_update(x_source, y_target, Channel::index(), -before);
  const std::vector<CostValue> y_costs = cut_element(y);
  if (prev) {
    const std::vector<CostValue> prev_costs = cut_element(*prev);
    link_element(*prev, prev_source, y_target, prev_costs);
  }
  LogList out(space_);
  const lct::VertexId out_tailplus = space_->take_spare();
  link_element(y, y_source, out_tailplus, y_costs);
  out.size_ = static_cast<std::size_t>(count);
  out.head_ = x_source;
  out.tail_ = y_source;
  out.tailplus_ = out_tailplus;
  out.first_ = x;
  out.last_ = y;
  out.standardize();

  size_ -= out.size_;
  if (size_ == 0) {
    space_->spare.push_back(tailplus_);
    reset();
    return out;
  }
  if (space_->fault != testing::Fault::skip_erase_index_fix) {
    path_update(y_target, tailplus_, Channel::index(), -count);
  }
  if (!prev) {
    head_ = y_target;
    first_ = *next;
  }
  if (!next) {
    tail_ = prev_source;
    last_ = *prev;
  }
  standardize();
  return out;
}

LogList& LogList::reverse(ElemId x, ElemId y) {
  const auto [rx, ry] = require_ordered(x, y);
  if (x == y) return *this;
  const std::optional<ElemId> prev = x != first_ ? std::optional(neighbor(x, Dir::prec)) : std::nullopt;
  const std::optional<ElemId> next = y != last_ ? std::optional(neighbor(y, Dir::succ)) : std::nullopt;
  const lct::VertexId x_source = oriented(x).source;
  const lct::VertexId y_target = oriented(y).target;
  const lct::VertexId prev_source = prev ? oriented(*prev).source : lct::VertexId{};
  const lct::VertexId next_target = next ? oriented(*next).target : lct::VertexId{};

  // Reattach the block x..y with its ends swapped; arcs inside keep their costs.
  std::vector<CostValue> prev_costs;
  std::vector<CostValue> next_costs;
  if (prev) prev_costs = cut_element(*prev);
  if (next) next_costs = cut_element(*next);
  if (prev) link_element(*prev, prev_source, y_target, prev_costs);
  if (next) link_element(*next, x_source, next_target, next_costs);

  // Block indices rx..ry now read ry..rx; map i to rx + ry - i.
  lct::Forest& forest = space_->forest;
  forest.devert(x_source);
  forest.dminuscost(y_target, Channel::index());
  forest.dupdate(y_target, Channel::index(), static_cast<CostValue>(rx + ry));

  if (!prev) {
    head_ = y_target;
    first_ = y;
  }
  if (next && *next == last_) tail_ = x_source;
  if (!next) {
    tailplus_ = x_source;
    const auto [a, b] = forest.arc_endpoints(arc_of(x));
    tail_ = a == x_source ? b : a;
    last_ = x;
  }
  standardize();
  return *this;
}

ElemId LogList::range_extreme(ElemId x, ElemId y, CostChannel ch, Extreme mode) {
  if (ch.index >= space_->forest.channels()) throw std::out_of_range("invalid cost channel");
  require_ordered(x, y);
  const lct::VertexId x_source = oriented(x).source;
  const lct::VertexId y_target = oriented(y).target;
  lct::Forest& forest = space_->forest;
  // Rooted at t(succ(y)), the root path of t(x) carries exactly x..y and the
  // closest-to-root tie is the last occurrence.
  forest.devert(y_target);
  const lct::VertexId w = forest.dmincost(x_source, ch, mode);
  const lct::ArcId arc = *forest.parent_arc(w);
  standardize();
  return elem_of(arc);
}

LogList& LogList::range_add(ElemId x, ElemId y, CostChannel ch, CostValue delta) {
  require_user_channel(ch);
  require_ordered(x, y);
  const lct::VertexId x_source = oriented(x).source;
  const lct::VertexId y_target = oriented(y).target;
  space_->forest.devert(y_target);
  try {
    space_->forest.dupdate(x_source, ch, delta);
  } catch (...) {
    standardize();
    throw;
  }
  standardize();
  return *this;
}

LogList& LogList::range_negate(ElemId x, ElemId y, CostChannel ch) {
  require_user_channel(ch);
  require_ordered(x, y);
  const lct::VertexId x_source = oriented(x).source;
  const lct::VertexId y_target = oriented(y).target;
  space_->forest.devert(y_target);
  try {
    space_->forest.dminuscost(x_source, ch);
  } catch (...) {
    standardize();
    throw;
  }
  standardize();
  return *this;
}

std::size_t LogList::find_rank(ElemId x) {
  require_member(x);
  return static_cast<std::size_t>(space_->forest.arc_cost(arc_of(x), Channel::index()));
}

ElemId LogList::find_element(std::size_t i) {
  if (i < 1 || i > size_) throw std::out_of_range("position out of range");
  const lct::VertexId w = space_->forest.dsearchcost(head_, Channel::index(), static_cast<CostValue>(i));
  const std::optional<lct::ArcId> arc = space_->forest.parent_arc(w);
  if (!arc) throw std::logic_error("index channel out of step with positions");
  return elem_of(*arc);
}

std::optional<ElemId> LogList::search_sorted(CostChannel ch, CostValue target) {
  if (ch.index >= space_->forest.channels()) throw std::out_of_range("invalid cost channel");
  if (size_ == 0) return std::nullopt;
  const lct::VertexId w = space_->forest.dsearchcost(head_, ch, target);
  if (w == tailplus_) return std::nullopt;
  return elem_of(*space_->forest.parent_arc(w));
}

std::vector<CostValue> LogList::iterate(CostChannel ch) {
  if (ch.index >= space_->forest.channels()) throw std::out_of_range("invalid cost channel");
  if (size_ == 0) return {};
  return space_->forest.path_costs(head_, ch);
}

std::vector<ElemId> LogList::elements() {
  if (size_ == 0) return {};
  std::vector<ElemId> out;
  out.reserve(size_);
  for (lct::ArcId a : space_->forest.path_arcs(head_)) out.push_back(elem_of(a));
  return out;
}

namespace testing {

void inject_fault(LogList& list, Fault fault) { list.space_->fault = fault; }

}  // namespace testing

}  // namespace loglist
