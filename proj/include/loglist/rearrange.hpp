#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "loglist/log_list.hpp"

namespace loglist::rearrange {

/// Unsigned permutations hold 1..n; signed ones hold ±1..±n.
struct Permutation {
  std::vector<CostValue> values;
  bool is_signed = false;

  std::size_t size() const { return values.size(); }
  static Permutation identity(std::size_t n);
  bool is_identity() const;
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Throws std::invalid_argument unless |values| is a bijection onto 1..n and
/// an unsigned permutation carries no negative entries.
void validate(const Permutation& p);

enum class OpKind { tr, rv, rv_signed, preftr, prefrv, bi };

/// Indices are 1-based positions at the time the operation applies:
///   tr(i, j, k)       1 <= i < j < k <= n+1, block p_i..p_{j-1} moves between p_{k-1} and p_k
///   rv(i, j)          1 <= i <= j <= n
///   rv_signed(i, j)   rv plus sign change of the block
///   preftr(j, k)      tr(1, j, k)
///   prefrv(j)         rv(1, j)
///   bi(i, j, k, l)    1 <= i < j <= k < l <= n+1, swaps p_i..p_{j-1} with p_k..p_{l-1}
struct RearrangeOp {
  OpKind kind = OpKind::tr;
  std::array<std::size_t, 4> idx{};

  static RearrangeOp tr(std::size_t i, std::size_t j, std::size_t k) { return {OpKind::tr, {i, j, k, 0}}; }
  static RearrangeOp rv(std::size_t i, std::size_t j) { return {OpKind::rv, {i, j, 0, 0}}; }
  static RearrangeOp rv_signed(std::size_t i, std::size_t j) { return {OpKind::rv_signed, {i, j, 0, 0}}; }
  static RearrangeOp preftr(std::size_t j, std::size_t k) { return {OpKind::preftr, {j, k, 0, 0}}; }
  static RearrangeOp prefrv(std::size_t j) { return {OpKind::prefrv, {j, 0, 0, 0}}; }
  static RearrangeOp bi(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return {OpKind::bi, {i, j, k, l}};
  }

  /// Number of meaningful entries in idx.
  std::size_t arity() const;
  friend bool operator==(const RearrangeOp&, const RearrangeOp&) = default;
};

/// std::out_of_range on index bounds, std::invalid_argument on a signedness mismatch
/// (rv and prefrv need an unsigned permutation, rv_signed a signed one).
void validate(const RearrangeOp& op, std::size_t n, bool is_signed);

struct SortTrace {
  std::vector<RearrangeOp> ops;
  std::size_t d() const { return ops.size(); }
  friend bool operator==(const SortTrace&, const SortTrace&) = default;
};

/// Applies op through log-list delete/insert/reverse/negate.
Permutation apply_op(const Permutation& p, const RearrangeOp& op);

/// Applies op to a list holding a permutation (unchecked signedness).
void apply_op(LogList& list, const RearrangeOp& op);

/// Strip endpoints, indexed by value: a strip's first and last elements point
/// at each other (a singleton at itself), interior elements hold 0.
class StripIndex {
 public:
  StripIndex() = default;
  explicit StripIndex(std::size_t max_value) : partner_(max_value + 1, 0) {}

  std::uint32_t partner(std::uint32_t v) const { return partner_.at(v); }
  bool is_endpoint(std::uint32_t v) const { return partner(v) != 0; }
  std::size_t max_value() const { return partner_.empty() ? 0 : partner_.size() - 1; }

  /// Joins the strip ending at u with the strip starting at w.
  void merge(std::uint32_t u, std::uint32_t w);
  /// Cuts the strip f..l between adjacent u and w.
  void split(std::uint32_t f, std::uint32_t u, std::uint32_t w, std::uint32_t l);
  void pair(std::uint32_t a, std::uint32_t b);

  friend bool operator==(const StripIndex&, const StripIndex&) = default;

 private:
  std::vector<std::uint32_t> partner_;
};

/// One pass over seq, which must hold distinct values in 1..max. No sentinel is added.
StripIndex strip_scan(std::span<const CostValue> seq);

/// b[v] is set when v ends its strip and names the strip's first element;
/// e[v] is set when v starts its strip and names its last. 0 = unset.
struct StripMarkers {
  std::vector<std::uint32_t> b;
  std::vector<std::uint32_t> e;
};
StripMarkers strip_markers(std::span<const CostValue> seq);

/// Sorting by prefix reversals and prefix transpositions on a log-list.
/// The sentinel n+1 is appended; every emitted index is valid on the input too.
class SortState {
 public:
  explicit SortState(const Permutation& p);

  bool sorted();
  /// The move the sorter makes next. Requires !sorted().
  RearrangeOp next_op();
  /// Applies a prefix move and keeps the strip index current.
  void apply(const RearrangeOp& op);

  std::size_t size() const { return n_; }
  const StripIndex& strips() const { return strips_; }
  /// Current contents including the sentinel.
  std::vector<CostValue> contents() { return list_.iterate(); }
  /// Rescans the list and compares strips and handles; throws std::logic_error on mismatch.
  void audit();

 private:
  CostValue at(std::size_t i);
  std::size_t pos(CostValue v);
  bool in_range(std::size_t i) const { return i >= 1 && i <= n_; }
  // Splits the strip running across positions i-1 and i.
  void split_at(std::size_t i);
  void merge_if_adjacent(CostValue u, CostValue w);

  std::size_t n_;  // with the sentinel
  LogList list_;
  std::vector<ElemId> handle_;  // by value
  StripIndex strips_;
};

struct SortOptions {
  bool audit = false;
};

/// Throws std::invalid_argument on signed or malformed input.
SortTrace sort_prefix_rt(const Permutation& p, const SortOptions& options = {});

// Permutation-tree style block interface over log-lists.
/// Concatenation; both lists must share a forest.
LogList ptree_join(LogList a, LogList b);
/// Prefix of length i and the rest, 0 <= i <= |a|.
std::pair<LogList, LogList> ptree_split(LogList a, std::size_t i);
ElemId ptree_block_max(LogList& a, ElemId x, ElemId y);

}  // namespace loglist::rearrange
