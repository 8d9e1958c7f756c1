#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "loglist/oracle.hpp"
#include "loglist/random.hpp"

namespace loglist::oracle {

namespace {

using Raw = std::array<std::uint64_t, 6>;

struct RawOp {
  std::uint32_t kind = 0;
  Raw r{};
};

template <class F>
std::string outcome(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument&) {
    return "!invalid_argument";
  } catch (const std::out_of_range&) {
    return "!out_of_range";
  } catch (const std::overflow_error&) {
    return "!overflow_error";
  } catch (const std::length_error&) {
    return "!length_error";
  } catch (const std::exception& e) {
    return std::string("!other:") + e.what();
  }
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
  return out.str();
}

std::string str(CostValue v) { return std::to_string(v); }

// Shrinks a failing sequence by dropping chunks while it keeps failing.
std::vector<RawOp> shrink(std::vector<RawOp> ops, const std::function<bool(const std::vector<RawOp>&)>& fails) {
  std::size_t budget = 4000;
  for (std::size_t chunk = std::max<std::size_t>(ops.size() / 2, 1); chunk >= 1; chunk /= 2) {
    bool progress = true;
    while (progress && budget > 0) {
      progress = false;
      for (std::size_t at = 0; at < ops.size() && budget > 0;) {
        std::vector<RawOp> trial = ops;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(at),
                    trial.begin() + static_cast<std::ptrdiff_t>(std::min(at + chunk, trial.size())));
        --budget;
        if (fails(trial)) {
          ops = std::move(trial);
          progress = true;
        } else {
          at += chunk;
        }
      }
    }
    if (chunk == 1) break;
  }
  return ops;
}

// ---- log-list cases ----

constexpr std::uint32_t kListOps = 16;
constexpr std::size_t kPool = 4;

struct ListPair {
  LogList fast;
  NaiveList slow;
};

class ListCase {
 public:
  ListCase(const LogListFuzzOptions& o, std::vector<std::string>* log)
      : o_(o),
        channels_(2 + o.weight_channels),
        log_(log),
        foreign_{LogList::build(std::vector<CostValue>{1, 2, 3}, o.weight_channels),
                 NaiveList::build(std::vector<CostValue>{1, 2, 3}, o.weight_channels)} {
    bind(foreign_);
    pool_.push_back({LogList::build(std::vector<CostValue>{}, o.weight_channels),
                     NaiveList::build(std::vector<CostValue>{}, o.weight_channels)});
    testing::inject_fault(pool_[0].fast, o.fault);
  }

  // Empty string when both sides agree.
  std::string step(const RawOp& op) {
    std::string what;
    std::string fast;
    std::string slow;
    run(op, what, fast, slow);
    if (log_) log_->push_back(what + " -> " + slow);
    if (fast != slow) return what + ": loglist " + fast + ", oracle " + slow;
    return audit(what);
  }

 private:
  void bind(ListPair& p) {
    const std::vector<ElemId> f = p.fast.elements();
    const std::vector<Token> s = p.slow.elements();
    for (std::size_t i = 0; i < f.size() && i < s.size(); ++i) {
      to_elem_[s[i]] = f[i];
      to_token_[{f[i].space, f[i].value}] = s[i];
    }
  }

  std::string name(Token t) const { return "#" + std::to_string(t & 0xffffffffu); }
  std::string name(ElemId e) const {
    const auto it = to_token_.find({e.space, e.value});
    return it == to_token_.end() ? "#?" : name(it->second);
  }
  template <class T>
  std::string name(const std::optional<T>& t) const {
    return t ? name(*t) : std::string("none");
  }

  std::vector<CostValue> random_values(std::size_t n, std::uint64_t r, bool increasing) {
    std::mt19937_64 rng(r);
    std::vector<CostValue> v(n);
    const CostValue spread = 1 + static_cast<CostValue>(draw_below(rng, 50));
    CostValue acc = draw_between(rng, -100, 100);
    for (auto& x : v) {
      if (increasing) {
        acc += 1 + draw_between(rng, 0, 5);
        x = acc;
      } else {
        x = draw_between(rng, -spread, spread);
      }
    }
    return v;
  }

  std::vector<std::vector<CostValue>> random_weights(std::size_t n, std::uint64_t r, bool first_increasing) {
    std::vector<std::vector<CostValue>> w;
    for (std::size_t k = 0; k < o_.weight_channels; ++k) w.push_back(random_values(n, mix_seed(r, k), first_increasing && k == 0));
    return w;
  }

  void add_list(ListPair p, std::uint64_t r) {
    bind(p);
    if (pool_.size() < kPool) {
      pool_.push_back(std::move(p));
    } else {
      pool_[r % kPool] = std::move(p);
    }
  }

  // Handle drawn mostly from list `li`, sometimes from elsewhere.
  std::pair<ElemId, Token> pick(std::size_t li, std::uint64_t r) {
    const std::uint64_t mode = r % 100;
    const NaiveList* src = &pool_[li].slow;
    if (mode < 3 || src->empty()) {
      src = &foreign_.slow;
    } else if (mode < 8) {
      src = &pool_[(r >> 8) % pool_.size()].slow;
      if (src->empty()) src = &foreign_.slow;
    }
    const std::vector<Token> all = src->elements();
    const Token t = all[(r >> 16) % all.size()];
    return {to_elem_.at(t), t};
  }

  // Two handles of list li, usually ordered.
  std::pair<std::pair<ElemId, Token>, std::pair<ElemId, Token>> pick_range(std::size_t li, std::uint64_t r1,
                                                                         std::uint64_t r2) {
    auto x = pick(li, r1);
    auto y = pick(li, r2);
    const NaiveList& s = pool_[li].slow;
    if (r2 % 10 != 0) {
      try {
        if (s.find_rank(y.second) < s.find_rank(x.second)) std::swap(x, y);
      } catch (const std::invalid_argument&) {
      }
    }
    return {x, y};
  }

  CostChannel channel(std::uint64_t r, bool allow_bad) const {
    const std::uint64_t span = channels_ + (allow_bad ? 1 : 0);
    return CostChannel{static_cast<std::uint32_t>(r % span)};
  }

  CostValue delta(std::uint64_t r) const {
    std::mt19937_64 rng(r);
    if (r % 20 == 0) return draw_between(rng, CostValue{1} << 61, CostValue{1} << 62) * (r % 40 == 0 ? -1 : 1);
    return draw_between(rng, -20, 20);
  }

  void run(const RawOp& op, std::string& what, std::string& fast, std::string& slow) {
    const Raw& r = op.r;
    const std::size_t li = r[0] % pool_.size();
    ListPair& L = pool_[li];
    const std::string ln = "L" + std::to_string(li);
    switch (op.kind) {
      case 0:
      case 1: {  // new sibling list; kind 1 makes weight 0 (or the values) strictly increasing
        const bool sorted = op.kind == 1;
        const std::size_t n = r[1] % (o_.max_len + 1);
        const bool by_value = sorted && o_.weight_channels == 0;
        std::vector<CostValue> values = random_values(n, r[2], by_value);
        std::vector<std::vector<CostValue>> weights = random_weights(n, r[3], sorted);
        ListPair p{pool_[0].fast.make_sibling(values, weights), pool_[0].slow.make_sibling(values, weights)};
        what = "build" + join(values);
        bind(p);
        if (sorted) {
          const CostChannel ch = by_value ? Channel::value() : Channel::weight(0);
          const std::vector<CostValue> keys = p.slow.iterate(ch);
          const CostValue lo = keys.empty() ? 0 : keys.front() - 3;
          const CostValue hi = keys.empty() ? 0 : keys.back() + 3;
          std::mt19937_64 rng(r[4]);
          for (int q = 0; q < 8; ++q) {
            const CostValue target = draw_between(rng, lo, hi);
            what += " search(" + str(target) + ")";
            fast += outcome([&] { return name(p.fast.search_sorted(ch, target)); }) + ";";
            slow += outcome([&] { return name(p.slow.search_sorted(ch, target)); }) + ";";
          }
        }
        add_list(std::move(p), r[5]);
        break;
      }
      case 2: {
        const Side side = r[1] % 2 ? Side::first : Side::last;
        what = ln + (side == Side::first ? ".first" : ".last");
        fast = name(L.fast.endpoint(side));
        slow = name(L.slow.endpoint(side));
        break;
      }
      case 3: {
        const auto x = pick(li, r[1]);
        const CostChannel ch = channel(r[2], true);
        what = ln + ".get_value(" + name(x.second) + ", ch" + std::to_string(ch.index) + ")";
        fast = outcome([&] { return str(L.fast.get_value(x.first, ch)); });
        slow = outcome([&] { return str(L.slow.get_value(x.second, ch)); });
        break;
      }
      case 4: {
        const auto x = pick(li, r[1]);
        const Dir dir = r[2] % 2 ? Dir::succ : Dir::prec;
        what = ln + (dir == Dir::succ ? ".succ(" : ".prec(") + name(x.second) + ")";
        fast = outcome([&] { return name(L.fast.neighbor(x.first, dir)); });
        slow = outcome([&] { return name(L.slow.neighbor(x.second, dir)); });
        break;
      }
      case 5:
      case 6: {
        const std::uint64_t who = r[1] % 100;
        ListPair* other = &pool_[r[2] % pool_.size()];
        if (who < 3) other = &foreign_;
        if (who >= 3 && other == &L && who > 6) other = &pool_[(li + 1) % pool_.size()];
        const std::string on = other == &foreign_ ? "F" : "L" + std::to_string(other - pool_.data());
        if (other != &L && other != &foreign_ && L.slow.length() + other->slow.length() > o_.max_len) {
          what = ln + ".splice(" + on + ") skipped";
          fast = slow = "skip";
          break;
        }
        if (op.kind == 5) {
          const auto x = pick(li, r[3]);
          const Placement where = r[4] % 2 ? Placement::after : Placement::before;
          what = ln + ".insert(" + on + ", " + name(x.second) + (where == Placement::after ? ", after)" : ", before)");
          fast = outcome([&] { L.fast.insert(other->fast, x.first, where); return std::string("ok"); });
          slow = outcome([&] { L.slow.insert(other->slow, x.second, where); return std::string("ok"); });
        } else {
          const bool front = r[3] % 2;
          what = ln + (front ? ".prepend(" : ".append(") + on + ")";
          fast = outcome([&] { front ? L.fast.prepend(other->fast) : L.fast.append(other->fast); return std::string("ok"); });
          slow = outcome([&] { front ? L.slow.prepend(other->slow) : L.slow.append(other->slow); return std::string("ok"); });
        }
        break;
      }
      case 7: {
        const auto [x, y] = pick_range(li, r[1], r[2]);
        what = ln + ".erase(" + name(x.second) + ", " + name(y.second) + ")";
        std::optional<LogList> f;
        std::optional<NaiveList> s;
        fast = outcome([&] { f.emplace(L.fast.erase(x.first, y.first)); return std::string("ok"); });
        slow = outcome([&] { s.emplace(L.slow.erase(x.second, y.second)); return std::string("ok"); });
        if (f && s) add_list(ListPair{std::move(*f), std::move(*s)}, r[3]);
        break;
      }
      case 8: {
        const auto [x, y] = pick_range(li, r[1], r[2]);
        what = ln + ".reverse(" + name(x.second) + ", " + name(y.second) + ")";
        fast = outcome([&] { L.fast.reverse(x.first, y.first); return std::string("ok"); });
        slow = outcome([&] { L.slow.reverse(x.second, y.second); return std::string("ok"); });
        break;
      }
      case 9: {
        const auto [x, y] = pick_range(li, r[1], r[2]);
        const CostChannel ch = channel(r[3], true);
        const Extreme mode = r[4] % 2 ? Extreme::min : Extreme::max;
        what = ln + (mode == Extreme::min ? ".find_min(" : ".find_max(") + name(x.second) + ", " + name(y.second) +
               ", ch" + std::to_string(ch.index) + ")";
        fast = outcome([&] { return name(L.fast.range_extreme(x.first, y.first, ch, mode)); });
        slow = outcome([&] { return name(L.slow.range_extreme(x.second, y.second, ch, mode)); });
        break;
      }
      case 10: {
        const auto [x, y] = pick_range(li, r[1], r[2]);
        const CostChannel ch = channel(r[3], true);
        const CostValue a = delta(r[4]);
        what = ln + ".add(" + name(x.second) + ", " + name(y.second) + ", ch" + std::to_string(ch.index) + ", " +
               str(a) + ")";
        fast = outcome([&] { L.fast.range_add(x.first, y.first, ch, a); return std::string("ok"); });
        slow = outcome([&] { L.slow.range_add(x.second, y.second, ch, a); return std::string("ok"); });
        break;
      }
      case 11: {
        const auto [x, y] = pick_range(li, r[1], r[2]);
        const CostChannel ch = channel(r[3], true);
        what = ln + ".negate(" + name(x.second) + ", " + name(y.second) + ", ch" + std::to_string(ch.index) + ")";
        fast = outcome([&] { L.fast.range_negate(x.first, y.first, ch); return std::string("ok"); });
        slow = outcome([&] { L.slow.range_negate(x.second, y.second, ch); return std::string("ok"); });
        break;
      }
      case 12: {
        const auto x = pick(li, r[1]);
        what = ln + ".find_rank(" + name(x.second) + ")";
        fast = outcome([&] { return std::to_string(L.fast.find_rank(x.first)); });
        slow = outcome([&] { return std::to_string(L.slow.find_rank(x.second)); });
        break;
      }
      case 13: {
        const std::size_t i = r[1] % (L.slow.length() + 2);
        what = ln + ".find_element(" + std::to_string(i) + ")";
        fast = outcome([&] { return name(L.fast.find_element(i)); });
        slow = outcome([&] { return name(L.slow.find_element(i)); });
        break;
      }
      case 14: {
        // search_sorted only on channels that are strictly increasing right now
        const CostChannel ch = channel(r[1], false);
        const std::vector<CostValue> keys = L.slow.iterate(ch);
        if (std::adjacent_find(keys.begin(), keys.end(), std::greater_equal<>()) != keys.end()) {
          what = ln + ".search(ch" + std::to_string(ch.index) + ") skipped";
          fast = slow = "skip";
          break;
        }
        std::mt19937_64 rng(r[2]);
        const CostValue target =
            keys.empty() ? draw_between(rng, -3, 3) : draw_between(rng, keys.front() - 2, keys.back() + 2);
        what = ln + ".search(ch" + std::to_string(ch.index) + ", " + str(target) + ")";
        fast = outcome([&] { return name(L.fast.search_sorted(ch, target)); });
        slow = outcome([&] { return name(L.slow.search_sorted(ch, target)); });
        break;
      }
      default: {
        const CostChannel ch = channel(r[1], true);
        what = ln + ".iterate(ch" + std::to_string(ch.index) + ")";
        fast = outcome([&] { return join(L.fast.iterate(ch)); });
        slow = outcome([&] { return join(L.slow.iterate(ch)); });
        break;
      }
    }
  }

  std::string audit(const std::string& after) {
    for (std::size_t li = 0; li < pool_.size(); ++li) {
      ListPair& p = pool_[li];
      const std::string where = "after " + after + ", L" + std::to_string(li);
      if (p.fast.length() != p.slow.length()) return where + ": length differs";
      std::vector<CostValue> ranks(p.slow.length());
      for (std::size_t q = 0; q < ranks.size(); ++q) ranks[q] = static_cast<CostValue>(q + 1);
      if (p.fast.iterate(Channel::index()) != ranks) return where + ": index audit failed";
      for (std::uint32_t ch = 0; ch < channels_; ++ch) {
        if (p.fast.iterate(CostChannel{ch}) != p.slow.iterate(CostChannel{ch})) {
          return where + ": channel " + std::to_string(ch) + " differs: loglist " +
                 join(p.fast.iterate(CostChannel{ch})) + ", oracle " + join(p.slow.iterate(CostChannel{ch}));
        }
      }
      const std::vector<ElemId> f = p.fast.elements();
      const std::vector<Token> s = p.slow.elements();
      for (std::size_t q = 0; q < s.size(); ++q) {
        if (name(f[q]) != name(s[q])) return where + ": handle order differs";
      }
      if (name(p.fast.endpoint(Side::first)) != name(p.slow.endpoint(Side::first)) ||
          name(p.fast.endpoint(Side::last)) != name(p.slow.endpoint(Side::last))) {
        return where + ": endpoints differ";
      }
    }
    return {};
  }

  const LogListFuzzOptions& o_;
  std::size_t channels_;
  std::vector<std::string>* log_;
  ListPair foreign_;
  std::vector<ListPair> pool_;
  std::map<Token, ElemId> to_elem_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Token> to_token_;
};

std::vector<RawOp> list_ops(std::mt19937_64& rng, std::size_t count) {
  std::vector<RawOp> ops(count);
  for (std::size_t q = 0; q < count; ++q) {
    ops[q].kind = q == 0 ? 0 : static_cast<std::uint32_t>(draw_below(rng, kListOps));
    for (auto& x : ops[q].r) x = rng();
  }
  return ops;
}

// Returns the first divergence, or empty.
std::string replay_list(const LogListFuzzOptions& o, const std::vector<RawOp>& ops, std::vector<std::string>* log,
                        std::size_t* executed) {
  ListCase c(o, log);
  for (const RawOp& op : ops) {
    std::string bad;
    try {
      bad = c.step(op);
    } catch (const std::exception& e) {
      bad = std::string("harness exception: ") + e.what();
    }
    if (executed) ++*executed;
    if (!bad.empty()) return bad;
  }
  return {};
}

// ---- forest cases ----

constexpr std::uint32_t kForestOps = 14;

class ForestCase {
 public:
  ForestCase(const LctFuzzOptions& o, std::vector<std::string>* log)
      : o_(o), fast_(o.channels), slow_(o.channels), log_(log) {}

  std::string step(const RawOp& op) {
    std::string what;
    std::string fast;
    std::string slow;
    run(op, what, fast, slow);
    if (log_) log_->push_back(what + " -> " + slow);
    if (fast != slow) return what + ": forest " + fast + ", oracle " + slow;
    return audit(what);
  }

 private:
  std::string name(lct::VertexId fast_id) const {
    const auto it = back_.find(fast_id.value);
    return it == back_.end() ? "v?" : "v" + std::to_string(it->second);
  }
  std::string name_slow(lct::VertexId v) const { return "v" + std::to_string(v.value); }
  std::string name(const std::optional<lct::VertexId>& v) const { return v ? name(*v) : "none"; }
  std::string name_slow(const std::optional<lct::VertexId>& v) const { return v ? name_slow(*v) : "none"; }

  void add_vertex(lct::VertexId f) {
    const lct::VertexId s = slow_.make_vertex();
    back_[f.value] = s.value;
    ids_.push_back(f);
  }

  std::vector<CostValue> costs(std::uint64_t r) const {
    std::mt19937_64 rng(r);
    std::vector<CostValue> c(o_.channels);
    for (auto& x : c) x = draw_between(rng, -30, 30);
    return c;
  }

  CostChannel channel(std::uint64_t r) const {
    return CostChannel{static_cast<std::uint32_t>(r % (o_.channels + (r % 16 == 0 ? 1 : 0)))};
  }

  void run(const RawOp& op, std::string& what, std::string& fast, std::string& slow) {
    const Raw& r = op.r;
    const std::size_t n = ids_.size();
    if (n == 0 && op.kind > 1) {
      what = "skip";
      fast = slow = "skip";
      return;
    }
    const std::size_t vi = n ? r[0] % n : 0;
    const lct::VertexId sv{static_cast<std::uint32_t>(vi)};
    const lct::VertexId fv = n ? ids_[vi] : lct::VertexId{};
    const std::string vn = "v" + std::to_string(vi);
    switch (op.kind) {
      case 0: {
        if (n >= o_.max_vertices) {
          what = fast = slow = "full";
          return;
        }
        add_vertex(fast_.make_vertex());
        what = "make_vertex";
        fast = slow = "ok";
        break;
      }
      case 1: {  // a fresh path whose channel-1 costs rise toward the root
        const std::size_t k = 1 + r[1] % 6;
        if (n + k + 1 > o_.max_vertices) {
          what = fast = slow = "full";
          return;
        }
        std::mt19937_64 rng(r[2]);
        std::vector<CostValue> flat;
        CostValue acc = draw_between(rng, -20, 20);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t ch = 0; ch < o_.channels; ++ch) {
            if (ch == 1) {
              acc += 1 + draw_between(rng, 0, 4);
              flat.push_back(acc);
            } else {
              flat.push_back(draw_between(rng, -30, 30));
            }
          }
        }
        const lct::Forest::Path path = fast_.make_path(flat);
        const std::size_t base = ids_.size();
        for (lct::VertexId v : path.vertices) add_vertex(v);
        for (std::size_t i = 0; i < k; ++i) {
          slow_.dlink(lct::VertexId{static_cast<std::uint32_t>(base + i + 1)}, lct::VertexId{static_cast<std::uint32_t>(base + i)},
                      std::span<const CostValue>(flat).subspan(i * o_.channels, o_.channels));
        }
        what = "make_path" + join(flat);
        fast = slow = "ok";
        break;
      }
      case 2:
      case 3: {
        const std::size_t wi = r[1] % n;
        std::size_t ti = vi;
        if (op.kind == 2 && r[2] % 10 != 0) ti = slow_.droot(sv).value;  // mostly a legal root
        if (op.kind == 3) ti = slow_.droot(lct::VertexId{static_cast<std::uint32_t>(wi)}).value;  // same tree
        const std::vector<CostValue> c = costs(r[3]);
        what = "dlink(v" + std::to_string(ti) + ", v" + std::to_string(wi) + ", " + join(c) + ")";
        fast = outcome([&] { fast_.dlink(ids_[ti], ids_[wi], c); return std::string("ok"); });
        slow = outcome([&] { slow_.dlink(lct::VertexId{static_cast<std::uint32_t>(ti)}, lct::VertexId{static_cast<std::uint32_t>(wi)}, c); return std::string("ok"); });
        break;
      }
      case 4:
        what = "dcut(" + vn + ")";
        fast = outcome([&] { return join(fast_.dcut(fv)); });
        slow = outcome([&] { return join(slow_.dcut(sv)); });
        break;
      case 5:
        what = "devert(" + vn + ")";
        fast = outcome([&] { fast_.devert(fv); return std::string("ok"); });
        slow = outcome([&] { slow_.devert(sv); return std::string("ok"); });
        break;
      case 6:
        what = "dparent(" + vn + ")";
        fast = outcome([&] { return name(fast_.dparent(fv)); });
        slow = outcome([&] { return name_slow(slow_.dparent(sv)); });
        break;
      case 7:
        what = "droot(" + vn + ")";
        fast = outcome([&] { return name(fast_.droot(fv)); });
        slow = outcome([&] { return name_slow(slow_.droot(sv)); });
        break;
      case 8: {
        const CostChannel ch = channel(r[1]);
        what = "dcost(" + vn + ", ch" + std::to_string(ch.index) + ")";
        fast = outcome([&] { return str(fast_.dcost(fv, ch)); });
        slow = outcome([&] { return str(slow_.dcost(sv, ch)); });
        break;
      }
      case 9: {
        const CostChannel ch = channel(r[1]);
        const Extreme mode = r[2] % 2 ? Extreme::min : Extreme::max;
        what = std::string(mode == Extreme::min ? "dmincost(" : "dmaxcost(") + vn + ", ch" + std::to_string(ch.index) + ")";
        fast = outcome([&] { return name(fast_.dmincost(fv, ch, mode)); });
        slow = outcome([&] { return name_slow(slow_.dmincost(sv, ch, mode)); });
        break;
      }
      case 10: {
        const CostChannel ch = channel(r[1]);
        std::mt19937_64 rng(r[2]);
        CostValue a = draw_between(rng, -10, 10);
        if (r[3] % 25 == 0) a = draw_between(rng, CostValue{1} << 61, CostValue{1} << 62) * (r[3] % 2 ? -1 : 1);
        what = "dupdate(" + vn + ", ch" + std::to_string(ch.index) + ", " + str(a) + ")";
        fast = outcome([&] { fast_.dupdate(fv, ch, a); return std::string("ok"); });
        slow = outcome([&] { slow_.dupdate(sv, ch, a); return std::string("ok"); });
        break;
      }
      case 11: {
        const CostChannel ch = channel(r[1]);
        what = "dminuscost(" + vn + ", ch" + std::to_string(ch.index) + ")";
        fast = outcome([&] { fast_.dminuscost(fv, ch); return std::string("ok"); });
        slow = outcome([&] { slow_.dminuscost(sv, ch); return std::string("ok"); });
        break;
      }
      case 12: {
        const CostChannel ch{static_cast<std::uint32_t>(r[1] % o_.channels)};
        const std::vector<std::size_t> path = slow_.root_path(sv);
        std::vector<CostValue> keys;
        for (std::size_t q = 0; q + 1 < path.size(); ++q) {
          keys.push_back(slow_.dcost(lct::VertexId{static_cast<std::uint32_t>(path[q])}, ch));
        }
        if (keys.empty() || std::adjacent_find(keys.begin(), keys.end(), std::greater_equal<>()) != keys.end()) {
          what = fast = slow = "skip";
          return;
        }
        std::mt19937_64 rng(r[2]);
        const CostValue target = draw_between(rng, keys.front() - 2, keys.back() + 2);
        what = "dsearchcost(" + vn + ", ch" + std::to_string(ch.index) + ", " + str(target) + ")";
        fast = outcome([&] { return name(fast_.dsearchcost(fv, ch, target)); });
        slow = outcome([&] { return name_slow(slow_.dsearchcost(sv, ch, target)); });
        break;
      }
      default: {
        const lct::VertexId bogus{static_cast<std::uint32_t>(1u << 30)};
        what = "dparent(bogus)";
        fast = outcome([&] { return name(fast_.dparent(bogus)); });
        slow = outcome([&] { return name_slow(slow_.dparent(bogus)); });
        break;
      }
    }
  }

  std::string audit(const std::string& after) {
    if (fast_.vertex_count() != slow_.vertex_count()) return "after " + after + ": vertex count differs";
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      const lct::VertexId sv{static_cast<std::uint32_t>(i)};
      const std::string p = name(fast_.dparent(ids_[i]));
      if (p != name_slow(slow_.dparent(sv))) return "after " + after + ": parent of v" + std::to_string(i) + " differs";
      if (p == "none") continue;
      for (std::uint32_t ch = 0; ch < o_.channels; ++ch) {
        if (fast_.dcost(ids_[i], CostChannel{ch}) != slow_.dcost(sv, CostChannel{ch})) {
          return "after " + after + ": cost of v" + std::to_string(i) + " differs";
        }
      }
    }
    return {};
  }

  const LctFuzzOptions& o_;
  lct::Forest fast_;
  NaiveForest slow_;
  std::vector<std::string>* log_;
  std::vector<lct::VertexId> ids_;
  std::map<std::uint32_t, std::size_t> back_;
};

std::vector<RawOp> forest_ops(std::mt19937_64& rng, std::size_t count) {
  std::vector<RawOp> ops(count);
  for (auto& op : ops) {
    op.kind = static_cast<std::uint32_t>(draw_below(rng, kForestOps));
    for (auto& x : op.r) x = rng();
  }
  return ops;
}

std::string replay_forest(const LctFuzzOptions& o, const std::vector<RawOp>& ops, std::vector<std::string>* log,
                          std::size_t* executed) {
  ForestCase c(o, log);
  for (const RawOp& op : ops) {
    std::string bad;
    try {
      bad = c.step(op);
    } catch (const std::exception& e) {
      bad = std::string("harness exception: ") + e.what();
    }
    if (executed) ++*executed;
    if (!bad.empty()) return bad;
  }
  return {};
}

template <class Options, class Gen, class Replay>
FuzzReport drive(const Options& o, std::size_t ops_per_case, Gen gen, Replay replay) {
  FuzzReport report;
  for (std::size_t c = 0; c < o.cases; ++c) {
    const std::uint64_t case_seed = mix_seed(o.seed, c);
    std::mt19937_64 rng(case_seed);
    const std::vector<RawOp> ops = gen(rng, ops_per_case);
    ++report.cases;
    const std::string bad = replay(o, ops, nullptr, &report.operations);
    if (bad.empty()) continue;
    ++report.divergences;
    if (report.divergences > 1) continue;
    report.failing_seed = case_seed;
    report.first_divergence = bad;
    const std::vector<RawOp> small =
        shrink(ops, [&](const std::vector<RawOp>& trial) { return !replay(o, trial, nullptr, nullptr).empty(); });
    report.minimized.clear();
    const std::string last = replay(o, small, &report.minimized, nullptr);
    report.minimized.push_back("divergence: " + last);
  }
  return report;
}

}  // namespace

FuzzReport fuzz_log_list(const LogListFuzzOptions& options) {
  return drive(options, options.ops_per_case, list_ops, replay_list);
}

FuzzReport fuzz_lct(const LctFuzzOptions& options) {
  return drive(options, options.ops_per_case, forest_ops, replay_forest);
}

FuzzReport fuzz_ptree(const PtreeFuzzOptions& o) {
  FuzzReport report;
  for (std::size_t sc = 0; sc < o.scenarios; ++sc) {
    const std::uint64_t seed = mix_seed(o.seed, sc);
    std::mt19937_64 rng(seed);
    ++report.cases;
    const std::size_t total = 1 + draw_below(rng, o.max_total);
    const std::vector<CostValue> perm = random_permutation(total, rng);

    std::vector<LogList> blocks;
    std::vector<std::vector<CostValue>> naive;
    blocks.push_back(LogList::build(perm));
    naive.push_back(perm);
    std::string bad;
    std::vector<std::string> log;
    try {
      for (std::size_t s = 0; s < o.steps && bad.empty(); ++s) {
        ++report.operations;
        const std::size_t b = draw_below(rng, blocks.size());
        const std::uint64_t kind = draw_below(rng, 3);
        if (kind == 0) {
          const std::size_t i = draw_below(rng, naive[b].size() + 1);
          log.push_back("split(B" + std::to_string(b) + ", " + std::to_string(i) + ")");
          auto [left, right] = rearrange::ptree_split(std::move(blocks[b]), i);
          blocks[b] = std::move(left);
          blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(b + 1), std::move(right));
          std::vector<CostValue> tail(naive[b].begin() + static_cast<std::ptrdiff_t>(i), naive[b].end());
          naive[b].resize(i);
          naive.insert(naive.begin() + static_cast<std::ptrdiff_t>(b + 1), std::move(tail));
        } else if (kind == 1 && blocks.size() > 1) {
          const std::size_t c = b + 1 < blocks.size() ? b + 1 : b - 1;
          const std::size_t lo = std::min(b, c);
          log.push_back("join(B" + std::to_string(lo) + ", B" + std::to_string(lo + 1) + ")");
          blocks[lo] = rearrange::ptree_join(std::move(blocks[lo]), std::move(blocks[lo + 1]));
          blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(lo + 1));
          naive[lo].insert(naive[lo].end(), naive[lo + 1].begin(), naive[lo + 1].end());
          naive.erase(naive.begin() + static_cast<std::ptrdiff_t>(lo + 1));
        } else if (!naive[b].empty()) {
          std::size_t x = draw_below(rng, naive[b].size());
          std::size_t y = draw_below(rng, naive[b].size());
          if (y < x) std::swap(x, y);
          log.push_back("block_max(B" + std::to_string(b) + ", " + std::to_string(x + 1) + ", " + std::to_string(y + 1) + ")");
          const ElemId m = rearrange::ptree_block_max(blocks[b], blocks[b].find_element(x + 1), blocks[b].find_element(y + 1));
          const auto best = std::max_element(naive[b].begin() + static_cast<std::ptrdiff_t>(x),
                                             naive[b].begin() + static_cast<std::ptrdiff_t>(y + 1));
          if (blocks[b].get_value(m) != *best ||
              blocks[b].find_rank(m) != static_cast<std::size_t>(best - naive[b].begin()) + 1) {
            bad = log.back() + ": loglist " + str(blocks[b].get_value(m)) + ", oracle " + str(*best);
          }
        }
        for (std::size_t q = 0; q < blocks.size() && bad.empty(); ++q) {
          if (blocks[q].iterate() != naive[q]) bad = "after " + log.back() + ": block B" + std::to_string(q) + " differs";
        }
      }
    } catch (const std::exception& e) {
      bad = std::string("exception: ") + e.what();
    }
    if (!bad.empty() && ++report.divergences == 1) {
      report.failing_seed = seed;
      report.first_divergence = bad;
      report.minimized = log;
    }
  }
  return report;
}

}  // namespace loglist::oracle
