#include "loglist/rearrange.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace loglist::rearrange {

namespace {

CostValue distance(CostValue a, CostValue b) { return a > b ? a - b : b - a; }

void require(bool ok, const char* what) {
  if (!ok) throw std::out_of_range(what);
}

std::vector<CostValue> with_sentinel(const Permutation& p) {
  validate(p);
  if (p.is_signed) throw std::invalid_argument("sorting needs an unsigned permutation");
  std::vector<CostValue> values = p.values;
  values.push_back(static_cast<CostValue>(p.size() + 1));
  return values;
}

LogList build_list(const Permutation& p) { return LogList::build(with_sentinel(p)); }

}  // namespace

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.values[i] = static_cast<CostValue>(i + 1);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != static_cast<CostValue>(i + 1)) return false;
  }
  return true;
}

void validate(const Permutation& p) {
  const std::size_t n = p.size();
  std::vector<bool> seen(n + 1, false);
  for (CostValue v : p.values) {
    if (v < 0 && !p.is_signed) throw std::invalid_argument("negative entry in an unsigned permutation");
    const CostValue a = v < 0 ? -v : v;
    if (a < 1 || static_cast<std::size_t>(a) > n) {
      throw std::invalid_argument("entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(a)]) throw std::invalid_argument("repeated entry " + std::to_string(a));
    seen[static_cast<std::size_t>(a)] = true;
  }
}

std::size_t RearrangeOp::arity() const {
  switch (kind) {
    case OpKind::tr:
      return 3;
    case OpKind::rv:
    case OpKind::rv_signed:
    case OpKind::preftr:
      return 2;
    case OpKind::prefrv:
      return 1;
    case OpKind::bi:
      return 4;
  }
  return 0;
}

void validate(const RearrangeOp& op, std::size_t n, bool is_signed) {
  const auto& x = op.idx;
  switch (op.kind) {
    case OpKind::tr:
      require(1 <= x[0] && x[0] < x[1] && x[1] < x[2] && x[2] <= n + 1, "tr needs 1 <= i < j < k <= n+1");
      break;
    case OpKind::preftr:
      require(1 < x[0] && x[0] < x[1] && x[1] <= n + 1, "preftr needs 1 < j < k <= n+1");
      break;
    case OpKind::rv:
    case OpKind::rv_signed:
      require(1 <= x[0] && x[0] <= x[1] && x[1] <= n, "rv needs 1 <= i <= j <= n");
      break;
    case OpKind::prefrv:
      require(1 <= x[0] && x[0] <= n, "prefrv needs 1 <= j <= n");
      break;
    case OpKind::bi:
      require(1 <= x[0] && x[0] < x[1] && x[1] <= x[2] && x[2] < x[3] && x[3] <= n + 1,
              "bi needs 1 <= i < j <= k < l <= n+1");
      break;
  }
  if (op.kind == OpKind::rv_signed && !is_signed) {
    throw std::invalid_argument("signed reversal on an unsigned permutation");
  }
  if ((op.kind == OpKind::rv || op.kind == OpKind::prefrv) && is_signed) {
    throw std::invalid_argument("unsigned reversal on a signed permutation");
  }
}

void apply_op(LogList& list, const RearrangeOp& op) {
  const auto& x = op.idx;
  switch (op.kind) {
    case OpKind::tr:
    case OpKind::preftr: {
      const std::size_t i = op.kind == OpKind::tr ? x[0] : 1;
      const std::size_t j = op.kind == OpKind::tr ? x[1] : x[0];
      const std::size_t k = op.kind == OpKind::tr ? x[2] : x[1];
      const ElemId from = list.find_element(i);
      const ElemId to = list.find_element(j - 1);
      const ElemId after = list.find_element(k - 1);
      LogList block = list.erase(from, to);
      list.insert(block, after);
      break;
    }
    case OpKind::rv:
    case OpKind::prefrv: {
      const std::size_t i = op.kind == OpKind::rv ? x[0] : 1;
      const std::size_t j = op.kind == OpKind::rv ? x[1] : x[0];
      list.reverse(list.find_element(i), list.find_element(j));
      break;
    }
    case OpKind::rv_signed: {
      const ElemId from = list.find_element(x[0]);
      const ElemId to = list.find_element(x[1]);
      list.reverse(from, to);
      list.range_negate(to, from, Channel::value());
      break;
    }
    case OpKind::bi: {
      const auto [i, j, k, l] = x;
      const ElemId a1 = list.find_element(i);
      const ElemId a2 = list.find_element(j - 1);
      const ElemId b1 = list.find_element(k);
      const ElemId b2 = list.find_element(l - 1);
      const std::optional<ElemId> before = i > 1 ? std::optional(list.find_element(i - 1)) : std::nullopt;
      const std::optional<ElemId> middle = j < k ? std::optional(list.find_element(k - 1)) : std::nullopt;
      LogList lb = list.erase(b1, b2);
      LogList la = list.erase(a1, a2);
      if (before) {
        list.insert(lb, *before);
      } else {
        list.prepend(lb);
      }
      list.insert(la, middle ? *middle : b2);
      break;
    }
  }
}

Permutation apply_op(const Permutation& p, const RearrangeOp& op) {
  validate(p);
  validate(op, p.size(), p.is_signed);
  LogList list = LogList::build(p.values);
  apply_op(list, op);
  return Permutation{list.iterate(), p.is_signed};
}

void StripIndex::pair(std::uint32_t a, std::uint32_t b) {
  partner_.at(a) = b;
  partner_.at(b) = a;
}

void StripIndex::merge(std::uint32_t u, std::uint32_t w) {
  const std::uint32_t first = partner(u);
  const std::uint32_t last = partner(w);
  partner_[u] = 0;
  partner_[w] = 0;
  pair(first, last);
}

void StripIndex::split(std::uint32_t f, std::uint32_t u, std::uint32_t w, std::uint32_t l) {
  pair(f, u);
  pair(w, l);
}

StripIndex strip_scan(std::span<const CostValue> seq) {
  CostValue top = 0;
  for (CostValue v : seq) {
    if (v < 1) throw std::invalid_argument("strip scan needs positive values");
    top = std::max(top, v);
  }
  StripIndex strips(static_cast<std::size_t>(top));
  std::size_t start = 0;
  for (std::size_t i = 1; i <= seq.size(); ++i) {
    if (i == seq.size() || distance(seq[i], seq[i - 1]) != 1) {
      strips.pair(static_cast<std::uint32_t>(seq[start]), static_cast<std::uint32_t>(seq[i - 1]));
      start = i;
    }
  }
  return strips;
}

StripMarkers strip_markers(std::span<const CostValue> seq) {
  const StripIndex strips = strip_scan(seq);
  StripMarkers m;
  m.b.assign(strips.max_value() + 1, 0);
  m.e.assign(strips.max_value() + 1, 0);
  std::size_t start = 0;
  for (std::size_t i = 1; i <= seq.size(); ++i) {
    if (i == seq.size() || distance(seq[i], seq[i - 1]) != 1) {
      const auto first = static_cast<std::uint32_t>(seq[start]);
      const auto last = static_cast<std::uint32_t>(seq[i - 1]);
      m.b[last] = first;
      m.e[first] = last;
      start = i;
    }
  }
  return m;
}

SortState::SortState(const Permutation& p) : n_(p.size() + 1), list_(build_list(p)), handle_(n_ + 1) {
  const std::vector<ElemId> elems = list_.elements();
  const std::vector<CostValue> values = list_.iterate();
  for (std::size_t i = 0; i < n_; ++i) handle_[static_cast<std::size_t>(values[i])] = elems[i];
  strips_ = strip_scan(values);
}

CostValue SortState::at(std::size_t i) { return list_.get_value(list_.find_element(i)); }

// Positions 0 and n+1 stand for the values 0 and n+1 outside the list.
std::size_t SortState::pos(CostValue v) {
  if (v < 1) return 0;
  if (static_cast<std::size_t>(v) > n_) return n_ + 1;
  return list_.find_rank(handle_[static_cast<std::size_t>(v)]);
}

bool SortState::sorted() {
  const CostValue p1 = list_.get_value(*list_.endpoint(Side::first));
  return p1 == 1 && strips_.partner(1) == n_;
}

RearrangeOp SortState::next_op() {
  const CostValue p1 = list_.get_value(*list_.endpoint(Side::first));
  const CostValue pi = strips_.partner(static_cast<std::uint32_t>(p1));
  const std::size_t i = pos(pi);
  if (p1 == 1) return RearrangeOp::preftr(i + 1, n_);

  // A guard touching a position outside 1..n+1 is false.
  const auto gap = [&](std::size_t q) { return in_range(q - 1) && in_range(q) && distance(at(q - 1), at(q)) != 1; };
  const auto open = [&](std::size_t q) { return in_range(q) && at(q) != 1 && gap(q); };
  const auto two_sided = [&](std::size_t c) -> std::optional<RearrangeOp> {
    const CostValue pc = at(c);
    const std::size_t lc = pos(pc - 1) + 1;
    const std::size_t rc = pos(pc + 1) + 1;
    if (open(lc)) {
      if (lc < c) return RearrangeOp::preftr(lc, c);
    } else if (open(rc)) {
      if (rc < c) return RearrangeOp::preftr(rc, c);
    }
    return std::nullopt;
  };

  const std::size_t a = pos(p1 - 1) + 1;
  const std::size_t b = pos(p1 + 1) + 1;
  std::optional<RearrangeOp> op;
  if (gap(a)) {
    op = two_sided(a);
  } else if (gap(b)) {
    op = two_sided(b);
  }
  if (op) return *op;

  if (p1 <= pi) {
    const std::size_t x = pos(p1 - 1);
    if (in_range(x + 1) && at(x + 1) == p1 - 2) return RearrangeOp::prefrv(x - 1);
    return RearrangeOp::preftr(i + 1, x + 1);
  }
  const std::size_t y = pos(p1 + 1);
  if (in_range(y - 1) && at(y - 1) == p1 + 2) return RearrangeOp::preftr(i + 1, y + 1);
  return RearrangeOp::prefrv(y - 1);
}

void SortState::split_at(std::size_t i) {
  const auto u = static_cast<std::uint32_t>(at(i - 1));
  const auto w = static_cast<std::uint32_t>(at(i));
  std::uint32_t f = 0;
  std::uint32_t l = 0;
  if (strips_.is_endpoint(u)) {
    f = u;
    l = strips_.partner(u);
  } else if (strips_.is_endpoint(w)) {
    l = w;
    f = strips_.partner(w);
  } else {
    std::size_t q = i - 1;
    while (q > 1 && distance(at(q - 1), at(q)) == 1) --q;
    f = static_cast<std::uint32_t>(at(q));
    l = strips_.partner(f);
  }
  strips_.split(f, u, w, l);
}

void SortState::merge_if_adjacent(CostValue u, CostValue w) {
  if (distance(u, w) == 1) strips_.merge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(w));
}

void SortState::apply(const RearrangeOp& op) {
  validate(op, n_, false);
  const CostValue p1 = list_.get_value(*list_.endpoint(Side::first));
  if (op.kind == OpKind::preftr) {
    const auto [j, k, unused1, unused2] = op.idx;
    if (k > n_) throw std::out_of_range("the sentinel stays last");
    const CostValue u1 = at(j - 1);
    const CostValue w1 = at(j);
    const CostValue u2 = at(k - 1);
    const std::optional<CostValue> w2 = k <= n_ ? std::optional(at(k)) : std::nullopt;
    if (distance(u1, w1) == 1) split_at(j);
    if (w2 && distance(u2, *w2) == 1) split_at(k);
    apply_op(list_, op);
    merge_if_adjacent(u2, p1);
    if (w2) merge_if_adjacent(u1, *w2);
  } else if (op.kind == OpKind::prefrv) {
    const std::size_t j = op.idx[0];
    if (j >= n_) throw std::out_of_range("the sentinel stays last");
    const CostValue u = at(j);
    const CostValue w = at(j + 1);
    if (distance(u, w) == 1) split_at(j + 1);
    apply_op(list_, op);
    merge_if_adjacent(p1, w);
  } else {
    throw std::invalid_argument("the sorter only applies prefix moves");
  }
}

void SortState::audit() {
  const std::vector<CostValue> values = list_.iterate();
  if (!(strip_scan(values) == strips_)) throw std::logic_error("strip index out of date");
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (list_.find_rank(handle_[static_cast<std::size_t>(values[q])]) != q + 1) {
      throw std::logic_error("value handle out of date");
    }
  }
}

SortTrace sort_prefix_rt(const Permutation& p, const SortOptions& options) {
  SortState state(p);
  SortTrace trace;
  const std::size_t limit = 8 * state.size() + 8;
  while (!state.sorted()) {
    if (trace.ops.size() > limit) throw std::logic_error("sorter made no progress");
    const RearrangeOp op = state.next_op();
    state.apply(op);
    trace.ops.push_back(op);
    if (options.audit) state.audit();
  }
  return trace;
}

LogList ptree_join(LogList a, LogList b) {
  a.append(b);
  return a;
}

std::pair<LogList, LogList> ptree_split(LogList a, std::size_t i) {
  if (i > a.length()) throw std::out_of_range("split position beyond the block");
  if (i == a.length()) {
    LogList rest = a.make_sibling({});
    return {std::move(a), std::move(rest)};
  }
  if (i == 0) {
    LogList prefix = a.make_sibling({});
    return {std::move(prefix), std::move(a)};
  }
  LogList rest = a.erase(a.find_element(i + 1), *a.endpoint(Side::last));
  return {std::move(a), std::move(rest)};
}

ElemId ptree_block_max(LogList& a, ElemId x, ElemId y) {
  return a.range_extreme(x, y, Channel::value(), Extreme::max);
}

}  // namespace loglist::rearrange
