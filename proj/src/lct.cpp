#include "loglist/lct.hpp"

#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

namespace loglist::lct {

namespace {

constexpr CostValue kMax = std::numeric_limits<CostValue>::max();
constexpr CostValue kMin = std::numeric_limits<CostValue>::min();

// Tags may wrap transiently; resolved costs are range-checked before any update.
CostValue wrap_add(CostValue a, CostValue b) {
  return static_cast<CostValue>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}

CostValue wrap_neg(CostValue a) { return static_cast<CostValue>(std::uint64_t{0} - static_cast<std::uint64_t>(a)); }

}  // namespace

Forest::Forest(std::size_t channels) : channels_(channels) {
  if (channels == 0) throw std::invalid_argument("forest needs at least one cost channel");
}

std::int32_t Forest::new_node(bool is_arc) {
  if (is_arc && !free_arcs_.empty()) {
    const std::int32_t x = free_arcs_.back();
    free_arcs_.pop_back();
    node(x) = Node{};
    node(x).is_arc = true;
    for (std::size_t ch = 0; ch < channels_; ++ch) slot(x, CostChannel{static_cast<std::uint32_t>(ch)}) = Slot{};
    ++arc_count_;
    return x;
  }
  if (node_count_ >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw std::length_error("forest arena capacity exhausted");
  }
  cells_.resize(cells_.size() + stride());
  const auto x = static_cast<std::int32_t>(node_count_++);
  for (std::size_t ch = 0; ch < channels_; ++ch) std::construct_at(&cells_[static_cast<std::size_t>(x) * stride() + 1 + ch].slot);
  node(x).is_arc = is_arc;
  if (is_arc) {
    ++arc_count_;
  } else {
    ++vertex_count_;
  }
  return x;
}

std::int32_t Forest::vertex_node(VertexId v) const {
  if (v.value >= node_count_ || node(v.value).is_arc) throw std::out_of_range("invalid vertex id");
  return static_cast<std::int32_t>(v.value);
}

std::int32_t Forest::arc_node(ArcId a) const {
  if (a.value >= node_count_ || !node(a.value).is_arc || !node(a.value).live) {
    throw std::out_of_range("invalid arc id");
  }
  return static_cast<std::int32_t>(a.value);
}

void Forest::check_channel(CostChannel ch) const {
  if (ch.index >= channels_) throw std::out_of_range("invalid cost channel");
}

bool Forest::is_splay_root(std::int32_t x) const {
  const std::int32_t p = node(x).parent;
  return p == kNone || (node(p).left != x && node(p).right != x);
}

void Forest::apply_flip(std::int32_t x) {
  if (x == kNone) return;
  Node& n = node(x);
  std::swap(n.left, n.right);
  n.flip = !n.flip;
}

void Forest::apply_tag(std::int32_t x, std::size_t ch, bool neg, CostValue add) {
  if (x == kNone) return;
  Slot& s = slot(x, ch);
  if (neg) {
    s.cost = wrap_neg(s.cost);
    const CostValue old_min = s.min;
    s.min = wrap_neg(s.max);
    s.max = wrap_neg(old_min);
    s.add = wrap_neg(s.add);
    s.neg = !s.neg;
  }
  if (add != 0) {
    s.cost = wrap_add(s.cost, add);
    s.min = wrap_add(s.min, add);
    s.max = wrap_add(s.max, add);
    s.add = wrap_add(s.add, add);
  }
}

void Forest::push(std::int32_t x) {
  Node& n = node(x);
  if (n.flip) {
    apply_flip(n.left);
    apply_flip(n.right);
    n.flip = false;
  }
  Slot* s = &slot(x, 0);
  for (std::size_t ch = 0; ch < channels_; ++ch) {
    if (!s[ch].neg && s[ch].add == 0) continue;
    apply_tag(n.left, ch, s[ch].neg, s[ch].add);
    apply_tag(n.right, ch, s[ch].neg, s[ch].add);
    s[ch].neg = false;
    s[ch].add = 0;
  }
}

void Forest::pull(std::int32_t x) {
  Node& n = node(x);
  const std::int32_t l = (n.left != kNone && node(n.left).arcs > 0) ? n.left : kNone;
  const std::int32_t r = (n.right != kNone && node(n.right).arcs > 0) ? n.right : kNone;
  n.arcs = (n.is_arc ? 1 : 0) + (l != kNone ? node(l).arcs : 0) + (r != kNone ? node(r).arcs : 0);
  Slot* s = &slot(x, 0);
  const Slot* ls = l != kNone ? &slot(l, 0) : nullptr;
  const Slot* rs = r != kNone ? &slot(r, 0) : nullptr;
  for (std::size_t ch = 0; ch < channels_; ++ch) {
    CostValue lo = kMax;
    CostValue hi = kMin;
    if (n.is_arc) lo = hi = s[ch].cost;
    if (ls) {
      lo = std::min(lo, ls[ch].min);
      hi = std::max(hi, ls[ch].max);
    }
    if (rs) {
      lo = std::min(lo, rs[ch].min);
      hi = std::max(hi, rs[ch].max);
    }
    if (n.arcs == 0) lo = hi = 0;
    s[ch].min = lo;
    s[ch].max = hi;
  }
}

void Forest::rotate(std::int32_t x) {
  const std::int32_t p = node(x).parent;
  const std::int32_t g = node(p).parent;
  if (!is_splay_root(p)) {
    if (node(g).left == p) {
      node(g).left = x;
    } else {
      node(g).right = x;
    }
  }
  node(x).parent = g;
  if (node(p).left == x) {
    node(p).left = node(x).right;
    if (node(x).right != kNone) node(node(x).right).parent = p;
    node(x).right = p;
  } else {
    node(p).right = node(x).left;
    if (node(x).left != kNone) node(node(x).left).parent = p;
    node(x).left = p;
  }
  node(p).parent = x;
  pull(p);
}

void Forest::splay(std::int32_t x) {
  scratch_.clear();
  std::int32_t y = x;
  scratch_.push_back(y);
  while (!is_splay_root(y)) {
    y = node(y).parent;
    scratch_.push_back(y);
  }
  for (auto it = scratch_.rbegin(); it != scratch_.rend(); ++it) push(*it);

  while (!is_splay_root(x)) {
    const std::int32_t p = node(x).parent;
    if (!is_splay_root(p)) {
      const std::int32_t g = node(p).parent;
      const bool zig_zig = (node(g).left == p) == (node(p).left == x);
      rotate(zig_zig ? p : x);
    }
    rotate(x);
  }
  pull(x);
}

void Forest::access(std::int32_t x) {
  std::int32_t last = kNone;
  for (std::int32_t y = x; y != kNone; y = node(y).parent) {
    splay(y);
    node(y).right = last;
    pull(y);
    last = y;
  }
  splay(x);
}

std::int32_t Forest::splay_prev(std::int32_t x) {
  push(x);
  std::int32_t y = node(x).left;
  if (y == kNone) return kNone;
  push(y);
  while (node(y).right != kNone) {
    y = node(y).right;
    push(y);
  }
  splay(y);
  return y;
}

std::int32_t Forest::splay_next(std::int32_t x) {
  push(x);
  std::int32_t y = node(x).right;
  if (y == kNone) return kNone;
  push(y);
  while (node(y).left != kNone) {
    y = node(y).left;
    push(y);
  }
  splay(y);
  return y;
}

std::int32_t Forest::find_parent_arc(std::int32_t v) {
  access(v);
  return splay_prev(v);
}

std::int32_t Forest::build_balanced(std::span<const std::int32_t> order) {
  if (order.empty()) return kNone;
  const std::size_t mid = order.size() / 2;
  const std::int32_t x = order[mid];
  const std::int32_t l = build_balanced(order.first(mid));
  const std::int32_t r = build_balanced(order.subspan(mid + 1));
  node(x).left = l;
  node(x).right = r;
  if (l != kNone) node(l).parent = x;
  if (r != kNone) node(r).parent = x;
  pull(x);
  return x;
}

VertexId Forest::make_vertex() {
  const std::int32_t x = new_node(false);
  pull(x);
  return VertexId{static_cast<std::uint32_t>(x)};
}

Forest::Path Forest::make_path(std::span<const CostValue> costs) {
  if (costs.size() % channels_ != 0) throw std::invalid_argument("make_path: cost count is not a multiple of channels");
  const std::size_t k = costs.size() / channels_;
  Path path;
  path.vertices.reserve(k + 1);
  path.arcs.reserve(k);
  for (std::size_t i = 0; i <= k; ++i) path.vertices.push_back(VertexId{static_cast<std::uint32_t>(new_node(false))});
  for (std::size_t i = 0; i < k; ++i) {
    const std::int32_t e = new_node(true);
    node(e).end_a = static_cast<std::int32_t>(path.vertices[i].value);
    node(e).end_b = static_cast<std::int32_t>(path.vertices[i + 1].value);
    for (std::size_t ch = 0; ch < channels_; ++ch) {
      slot(e, CostChannel{static_cast<std::uint32_t>(ch)}).cost = costs[i * channels_ + ch];
    }
    path.arcs.push_back(ArcId{static_cast<std::uint32_t>(e)});
  }
  // In-order runs from the root (shallow) to t_0 (deep).
  std::vector<std::int32_t> order;
  order.reserve(2 * k + 1);
  for (std::size_t i = k + 1; i-- > 0;) {
    order.push_back(static_cast<std::int32_t>(path.vertices[i].value));
    if (i > 0) order.push_back(static_cast<std::int32_t>(path.arcs[i - 1].value));
  }
  const std::int32_t root = build_balanced(order);
  node(root).parent = kNone;
  return path;
}

std::optional<VertexId> Forest::dparent(VertexId v) {
  const std::int32_t e = find_parent_arc(vertex_node(v));
  if (e == kNone) return std::nullopt;
  return VertexId{static_cast<std::uint32_t>(splay_prev(e))};
}

std::optional<ArcId> Forest::parent_arc(VertexId v) {
  const std::int32_t e = find_parent_arc(vertex_node(v));
  if (e == kNone) return std::nullopt;
  return ArcId{static_cast<std::uint32_t>(e)};
}

VertexId Forest::droot(VertexId v) {
  const std::int32_t x = vertex_node(v);
  access(x);
  std::int32_t y = x;
  push(y);
  while (node(y).left != kNone) {
    y = node(y).left;
    push(y);
  }
  splay(y);
  return VertexId{static_cast<std::uint32_t>(y)};
}

CostValue Forest::dcost(VertexId v, CostChannel ch) {
  check_channel(ch);
  const std::int32_t e = find_parent_arc(vertex_node(v));
  if (e == kNone) throw std::invalid_argument("dcost: vertex is a root");
  return slot(e, ch).cost;
}

VertexId Forest::dmincost(VertexId v, CostChannel ch, Extreme mode) {
  check_channel(ch);
  const std::int32_t x = vertex_node(v);
  access(x);
  if (node(x).left == kNone) throw std::invalid_argument("dmincost: vertex is a root");
  const bool want_min = mode == Extreme::min;
  const CostValue target = want_min ? slot(x, ch).min : slot(x, ch).max;
  const auto extreme = [&](std::int32_t y) { return want_min ? slot(y, ch).min : slot(y, ch).max; };

  // Leftmost in-order arc is the one closest to the root.
  std::int32_t y = x;
  for (;;) {
    push(y);
    const std::int32_t l = node(y).left;
    if (l != kNone && node(l).arcs > 0 && extreme(l) == target) {
      y = l;
    } else if (node(y).is_arc && slot(y, ch).cost == target) {
      break;
    } else {
      y = node(y).right;
    }
  }
  splay(y);
  return VertexId{static_cast<std::uint32_t>(splay_next(y))};
}

void Forest::dupdate(VertexId v, CostChannel ch, CostValue delta) {
  check_channel(ch);
  const std::int32_t x = vertex_node(v);
  access(x);
  if (node(x).arcs == 0 || delta == 0) return;
  const Slot& s = slot(x, ch);
  if ((delta > 0 && s.max > kMax - delta) || (delta < 0 && s.min < kMin - delta)) {
    throw std::overflow_error("dupdate: cost overflow");
  }
  apply_tag(x, ch.index, false, delta);
}

void Forest::dminuscost(VertexId v, CostChannel ch) {
  check_channel(ch);
  const std::int32_t x = vertex_node(v);
  access(x);
  if (node(x).arcs == 0) return;
  if (slot(x, ch).min == kMin) throw std::overflow_error("dminuscost: cost overflow");
  apply_tag(x, ch.index, true, 0);
}

ArcId Forest::dlink(VertexId v, VertexId w, std::span<const CostValue> costs) {
  const std::int32_t xv = vertex_node(v);
  const std::int32_t xw = vertex_node(w);
  if (costs.size() != channels_) throw std::invalid_argument("dlink: one cost per channel required");
  if (droot(v) != v) throw std::invalid_argument("dlink: v is not a root");
  if (droot(w) == v) throw std::invalid_argument("dlink: v and w are in the same tree");
  devert(w);
  const std::int32_t e = new_node(true);
  node(e).end_a = xw;
  node(e).end_b = xv;
  for (std::size_t ch = 0; ch < channels_; ++ch) slot(e, CostChannel{static_cast<std::uint32_t>(ch)}).cost = costs[ch];
  pull(e);
  node(xw).parent = e;
  node(e).parent = xv;
  return ArcId{static_cast<std::uint32_t>(e)};
}

std::vector<CostValue> Forest::dcut(VertexId v) {
  const std::int32_t x = vertex_node(v);
  access(x);
  const std::int32_t upper = node(x).left;
  if (upper == kNone) throw std::invalid_argument("dcut: vertex is a root");
  node(x).left = kNone;
  node(upper).parent = kNone;
  pull(x);

  std::int32_t e = upper;
  push(e);
  while (node(e).right != kNone) {
    e = node(e).right;
    push(e);
  }
  splay(e);
  const std::int32_t rest = node(e).left;
  if (rest != kNone) {
    node(rest).parent = kNone;
    node(e).left = kNone;
  }

  std::vector<CostValue> costs(channels_);
  for (std::size_t ch = 0; ch < channels_; ++ch) costs[ch] = slot(e, CostChannel{static_cast<std::uint32_t>(ch)}).cost;
  node(e) = Node{};
  node(e).is_arc = true;
  node(e).live = false;
  free_arcs_.push_back(e);
  --arc_count_;
  return costs;
}

void Forest::devert(VertexId v) {
  const std::int32_t x = vertex_node(v);
  access(x);
  apply_flip(x);
}

VertexId Forest::dsearchcost(VertexId v, CostChannel ch, CostValue target) {
  check_channel(ch);
  const std::int32_t x = vertex_node(v);
  access(x);
  if (node(x).left == kNone) throw std::invalid_argument("dsearchcost: vertex is a root");
  if (slot(x, ch).min > target) return droot(v);

  // Closest-to-root arc with cost <= target; under increasing costs this is
  // the exact hit or the largest cost below target.
  std::int32_t y = x;
  for (;;) {
    push(y);
    const std::int32_t l = node(y).left;
    if (l != kNone && node(l).arcs > 0 && slot(l, ch).min <= target) {
      y = l;
    } else if (node(y).is_arc && slot(y, ch).cost <= target) {
      break;
    } else {
      y = node(y).right;
    }
  }
  splay(y);
  return VertexId{static_cast<std::uint32_t>(splay_next(y))};
}

std::pair<VertexId, VertexId> Forest::arc_endpoints(ArcId arc) const {
  const Node& n = node(arc_node(arc));
  return {VertexId{static_cast<std::uint32_t>(n.end_a)}, VertexId{static_cast<std::uint32_t>(n.end_b)}};
}

VertexId Forest::arc_source(ArcId arc) {
  const std::int32_t e = arc_node(arc);
  const std::int32_t a = node(e).end_a;
  return VertexId{static_cast<std::uint32_t>(find_parent_arc(a) == e ? a : node(e).end_b)};
}

CostValue Forest::arc_cost(ArcId arc, CostChannel ch) {
  check_channel(ch);
  const std::int32_t e = arc_node(arc);
  splay(e);
  return slot(e, ch).cost;
}

bool Forest::is_live_arc(ArcId arc) const {
  return arc.value < node_count_ && node(arc.value).is_arc && node(arc.value).live;
}

std::vector<ArcId> Forest::path_arcs(VertexId v) {
  const std::int32_t x = vertex_node(v);
  access(x);
  std::vector<ArcId> out;
  out.reserve(static_cast<std::size_t>(node(x).arcs));
  std::vector<std::int32_t> stack;
  std::int32_t y = x;
  while (y != kNone || !stack.empty()) {
    while (y != kNone) {
      push(y);
      stack.push_back(y);
      y = node(y).left;
    }
    y = stack.back();
    stack.pop_back();
    if (node(y).is_arc) out.push_back(ArcId{static_cast<std::uint32_t>(y)});
    y = node(y).right;
  }
  return {out.rbegin(), out.rend()};
}

std::vector<CostValue> Forest::path_costs(VertexId v, CostChannel ch) {
  check_channel(ch);
  const std::vector<ArcId> arcs = path_arcs(v);
  // path_arcs pushed every tag on the path, so stored costs are resolved.
  std::vector<CostValue> out;
  out.reserve(arcs.size());
  for (ArcId a : arcs) out.push_back(slot(static_cast<std::int32_t>(a.value), ch).cost);
  return out;
}

}  // namespace loglist::lct
