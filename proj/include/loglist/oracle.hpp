#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loglist/lct.hpp"
#include "loglist/log_list.hpp"
#include "loglist/rearrange.hpp"

// Plain array implementations used as ground truth. Everything here is O(n)
// per operation on purpose.
namespace loglist::oracle {

using Token = std::uint64_t;

/// Array-backed mirror of LogList. Tokens play the role of ElemId: they are
/// handed out in creation order within one family of siblings and survive
/// every splice. Errors follow the LogList taxonomy.
class NaiveList {
 public:
  static NaiveList build(std::span<const CostValue> values, std::size_t weight_channels = 0);
  static NaiveList build(std::span<const CostValue> values, const std::vector<std::vector<CostValue>>& weights);
  NaiveList make_sibling(std::span<const CostValue> values, const std::vector<std::vector<CostValue>>& weights = {}) const;

  std::size_t length() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t weight_channels() const { return channels_ - 2; }

  std::optional<Token> endpoint(Side side) const;
  CostValue get_value(Token x, CostChannel ch = Channel::value()) const;
  Token neighbor(Token x, Dir dir) const;

  NaiveList& insert(NaiveList& other, Token x, Placement where = Placement::after);
  NaiveList& append(NaiveList& other);
  NaiveList& prepend(NaiveList& other);
  NaiveList erase(Token x, Token y);
  NaiveList& reverse(Token x, Token y);

  Token range_extreme(Token x, Token y, CostChannel ch, Extreme mode) const;
  NaiveList& range_add(Token x, Token y, CostChannel ch, CostValue delta);
  NaiveList& range_negate(Token x, Token y, CostChannel ch);

  std::size_t find_rank(Token x) const;
  Token find_element(std::size_t i) const;
  std::optional<Token> search_sorted(CostChannel ch, CostValue target) const;

  std::vector<CostValue> iterate(CostChannel ch = Channel::value()) const;
  std::vector<Token> elements() const;

 private:
  struct Family {
    Token next = 0;
  };
  struct Item {
    Token id;
    std::vector<CostValue> costs;  // by channel; the index slot is unused
  };

  NaiveList(std::shared_ptr<Family> family, std::size_t channels) : family_(std::move(family)), channels_(channels) {}
  void fill(std::span<const CostValue> values, const std::vector<std::vector<CostValue>>& weights);
  std::size_t locate(Token x) const;
  CostValue cost(std::size_t pos, CostChannel ch) const;
  void check_channel(CostChannel ch) const;
  void check_user_channel(CostChannel ch) const;
  void check_partner(const NaiveList& other) const;
  std::pair<std::size_t, std::size_t> ordered(Token x, Token y) const;

  std::shared_ptr<Family> family_;
  std::size_t channels_;
  std::vector<Item> items_;
};

/// Parent array plus per-vertex arc costs. Vertex ids are dense from 0.
class NaiveForest {
 public:
  explicit NaiveForest(std::size_t channels);

  std::size_t vertex_count() const { return parent_.size(); }
  lct::VertexId make_vertex();
  std::optional<lct::VertexId> dparent(lct::VertexId v) const;
  lct::VertexId droot(lct::VertexId v) const;
  CostValue dcost(lct::VertexId v, CostChannel ch) const;
  lct::VertexId dmincost(lct::VertexId v, CostChannel ch, Extreme mode) const;
  void dupdate(lct::VertexId v, CostChannel ch, CostValue delta);
  void dminuscost(lct::VertexId v, CostChannel ch);
  void dlink(lct::VertexId v, lct::VertexId w, std::span<const CostValue> costs);
  std::vector<CostValue> dcut(lct::VertexId v);
  void devert(lct::VertexId v);
  lct::VertexId dsearchcost(lct::VertexId v, CostChannel ch, CostValue target) const;

  /// v, parent(v), ..., root.
  std::vector<std::size_t> root_path(lct::VertexId v) const;

 private:
  std::size_t check(lct::VertexId v) const;
  void check_channel(CostChannel ch) const;

  std::size_t channels_;
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::vector<CostValue>> cost_;  // cost_[v] describes the arc (v, parent(v))
};

/// The published array version of the prefix reversal/transposition sorter, O(n^2).
rearrange::SortTrace sort_prefix_rt_naive(const rearrange::Permutation& p);

/// Direct substitution into the rearrangement formulas.
rearrange::Permutation apply_op_formula(const rearrange::Permutation& p, const rearrange::RearrangeOp& op);

struct FuzzReport {
  std::size_t cases = 0;
  std::size_t operations = 0;
  std::size_t divergences = 0;
  std::uint64_t failing_seed = 0;
  std::string first_divergence;
  /// Replay log of a shrunk failing case, one call per line.
  std::vector<std::string> minimized;

  bool ok() const { return divergences == 0; }
};

struct LogListFuzzOptions {
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  std::size_t ops_per_case = 100;
  std::size_t max_len = 128;
  std::size_t weight_channels = 2;
  testing::Fault fault = testing::Fault::none;
};

/// Random operation sequences replayed on LogList and NaiveList, with full
/// value, index and handle audits after every call.
FuzzReport fuzz_log_list(const LogListFuzzOptions& options);

struct LctFuzzOptions {
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  std::size_t ops_per_case = 200;
  std::size_t max_vertices = 64;
  std::size_t channels = 2;
};

FuzzReport fuzz_lct(const LctFuzzOptions& options);

struct PtreeFuzzOptions {
  std::uint64_t seed = 0;
  std::size_t scenarios = 1000;
  std::size_t max_total = 1000;
  std::size_t steps = 20;
};

/// Block join/split/max scenarios against plain vectors.
FuzzReport fuzz_ptree(const PtreeFuzzOptions& options);

}  // namespace loglist::oracle
