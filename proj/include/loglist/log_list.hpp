#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "loglist/lct.hpp"

namespace loglist {

/// Stable handle of a list element. Survives insert, delete and reverse; after
/// a delete the handle belongs to the extracted sublist.
struct ElemId {
  std::uint32_t value = 0;
  std::uint32_t space = 0;
  friend auto operator<=>(const ElemId&, const ElemId&) = default;
};

/// Channel 0 holds element values, channel 1 the library-managed positions,
/// channels 2.. the optional weights.
struct Channel {
  static constexpr CostChannel value() { return CostChannel{0}; }
  static constexpr CostChannel index() { return CostChannel{1}; }
  static constexpr CostChannel weight(std::uint32_t k) { return CostChannel{2 + k}; }
};

enum class Side { first, last };
enum class Dir { succ, prec };
enum class Placement { after, before };

namespace detail {
struct Space;
}

class LogList;

namespace testing {

/// Deliberate defects used to check that the differential fuzzer notices them.
enum class Fault { none, skip_erase_index_fix };

void inject_fault(LogList& list, Fault fault);

}  // namespace testing

/// A list with O(log n) amortized sublist insert/delete/reverse, range
/// min/max/add/negate, rank and select.
///
/// The list x_1..x_n lives in a link-cut forest as the path t_1 - ... - t_{n+1};
/// arc (t_i, t_{i+1}) carries the value x_i, the position i, and the weights of
/// x_i. Between operations the path is rooted at t_{n+1} ("standard form").
///
/// Lists built from one another (make_sibling, erase) share a forest and can
/// be spliced into each other. A LogList is move-only.
class LogList {
 public:
  static LogList build(std::span<const CostValue> values, std::size_t weight_channels = 0);
  /// `weights[k][i]` is weight k of element i.
  static LogList build(std::span<const CostValue> values, const std::vector<std::vector<CostValue>>& weights);

  /// A new list sharing this list's forest, so the two can be spliced.
  LogList make_sibling(std::span<const CostValue> values, const std::vector<std::vector<CostValue>>& weights = {}) const;

  LogList(LogList&&) noexcept;
  LogList& operator=(LogList&&) noexcept;
  LogList(const LogList&) = delete;
  LogList& operator=(const LogList&) = delete;
  ~LogList();

  std::size_t length() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::size_t weight_channels() const;
  bool shares_space_with(const LogList& other) const { return space_ == other.space_; }

  /// O(1).
  std::optional<ElemId> endpoint(Side side) const;

  CostValue get_value(ElemId x, CostChannel ch = Channel::value());
  ElemId neighbor(ElemId x, Dir dir);

  /// Splices all of `other` next to x; `other` is left empty.
  LogList& insert(LogList& other, ElemId x, Placement where = Placement::after);
  /// Splices all of `other` at the end of this list, which may be empty.
  LogList& append(LogList& other);
  /// Splices all of `other` in front of this list, which may be empty.
  LogList& prepend(LogList& other);

  /// Extracts the sublist x..y as a standalone list.
  LogList erase(ElemId x, ElemId y);
  LogList& reverse(ElemId x, ElemId y);

  /// Extreme element of x..y; among ties the one with the largest position.
  ElemId range_extreme(ElemId x, ElemId y, CostChannel ch, Extreme mode);
  LogList& range_add(ElemId x, ElemId y, CostChannel ch, CostValue delta);
  LogList& range_negate(ElemId x, ElemId y, CostChannel ch);

  /// 1-based position of x.
  std::size_t find_rank(ElemId x);
  /// Element at 1-based position i.
  ElemId find_element(std::size_t i);

  /// Expects strictly increasing values on `ch`. Returns the element holding
  /// `target`, else the one with the largest value below it, else none.
  std::optional<ElemId> search_sorted(CostChannel ch, CostValue target);

  /// In-order traversal in O(n).
  std::vector<CostValue> iterate(CostChannel ch = Channel::value());
  std::vector<ElemId> elements();

 private:
  explicit LogList(std::shared_ptr<detail::Space> space);
  friend void testing::inject_fault(LogList& list, testing::Fault fault);

  struct Oriented {
    lct::VertexId source;
    lct::VertexId target;
  };

  void standardize();
  void require_member(ElemId x);
  std::pair<std::size_t, std::size_t> require_ordered(ElemId x, ElemId y);
  void require_user_channel(CostChannel ch) const;
  void require_splice_partner(const LogList& other) const;
  lct::ArcId arc_of(ElemId x) const;
  ElemId elem_of(lct::ArcId a) const;
  Oriented oriented(ElemId x);
  std::vector<CostValue> cut_element(ElemId x);
  void link_element(ElemId x, lct::VertexId a, lct::VertexId b, std::span<const CostValue> costs);
  void path_update(lct::VertexId from, lct::VertexId to, CostChannel ch, CostValue delta);
  void adopt(LogList& other);
  void reset();

  std::shared_ptr<detail::Space> space_;
  std::size_t size_ = 0;
  lct::VertexId head_{};
  lct::VertexId tail_{};
  lct::VertexId tailplus_{};
  ElemId first_{};
  ElemId last_{};
};

}  // namespace loglist
