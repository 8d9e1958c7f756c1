#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace loglist {

using CostValue = std::int64_t;

/// Index of one independent per-arc cost function. Fixed at forest construction.
struct CostChannel {
  std::uint32_t index = 0;
  friend auto operator<=>(const CostChannel&, const CostChannel&) = default;
};

enum class Extreme { min, max };

}  // namespace loglist

namespace loglist::lct {

struct VertexId {
  std::uint32_t value = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// Handle of a live arc. Arc handles are recycled after dcut, vertex handles never are.
struct ArcId {
  std::uint32_t value = 0;
  friend auto operator<=>(const ArcId&, const ArcId&) = default;
};

/// A forest of rooted trees whose arcs carry several integer cost channels.
///
/// Each preferred path is kept in a splay tree whose in-order sequence spells
/// the path from its shallow end to its deep end, vertices and arcs alternating.
/// Arc nodes hold the costs; every node keeps per-channel subtree min/max and
/// pending add/negate tags, and a pending orientation flip.
///
/// Pushing tags composes them as flip, then negate, then add: a node tagged
/// (neg, add) maps every cost c in its subtrees to (neg ? -c : c) + add.
///
/// Operations that only read still restructure the splay trees, so a forest
/// needs exclusive access even for queries.
class Forest {
 public:
  explicit Forest(std::size_t channels);

  std::size_t channels() const { return channels_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t arc_count() const { return arc_count_; }
  /// Upper bound (exclusive) of every ArcId::value handed out so far.
  std::size_t arc_capacity() const { return node_count_; }

  VertexId make_vertex();

  /// Builds a fresh path t_0 -> t_1 -> ... -> t_k rooted at t_k in O(k).
  /// `costs` holds k * channels() values, arc i (t_i -> t_{i+1}) first.
  struct Path {
    std::vector<VertexId> vertices;  // deepest first, root last
    std::vector<ArcId> arcs;         // arcs[i] joins vertices[i] and vertices[i + 1]
  };
  Path make_path(std::span<const CostValue> costs);

  std::optional<VertexId> dparent(VertexId v);
  std::optional<ArcId> parent_arc(VertexId v);
  VertexId droot(VertexId v);
  CostValue dcost(VertexId v, CostChannel ch);

  /// Vertex w on the path v -> root whose arc (w, parent(w)) has the extreme
  /// cost; among ties the one closest to the root.
  VertexId dmincost(VertexId v, CostChannel ch, Extreme mode = Extreme::min);

  /// Adds `delta` to every arc cost on the path v -> root. No-op when v is a root.
  void dupdate(VertexId v, CostChannel ch, CostValue delta);

  /// Negates every arc cost on the path v -> root. No-op when v is a root.
  void dminuscost(VertexId v, CostChannel ch);

  /// Requires v to be the root of its tree and w to lie in another tree.
  /// w's tree is re-rooted at w and hung below v by the new arc (w, v).
  ArcId dlink(VertexId v, VertexId w, std::span<const CostValue> costs);

  /// Removes the arc (v, parent(v)) and returns its costs, one per channel.
  std::vector<CostValue> dcut(VertexId v);

  /// Makes v the root of its tree, reversing every arc on the old root path.
  void devert(VertexId v);

  /// Expects costs on `ch` to strictly increase from v towards the root.
  /// Returns the vertex whose arc costs exactly `target`, else the one whose
  /// arc carries the largest cost below `target`, else droot(v).
  /// Precondition violations give an unspecified vertex of the path.
  VertexId dsearchcost(VertexId v, CostChannel ch, CostValue target);

  // Arc-level access, independent of the current orientation.
  std::pair<VertexId, VertexId> arc_endpoints(ArcId arc) const;
  /// Endpoint of `arc` that is currently the child.
  VertexId arc_source(ArcId arc);
  CostValue arc_cost(ArcId arc, CostChannel ch);
  bool is_live_arc(ArcId arc) const;

  /// Arcs on the path v -> root, v's arc first, in O(path length).
  std::vector<ArcId> path_arcs(VertexId v);
  /// Costs on the path v -> root, v's arc first, in O(path length).
  std::vector<CostValue> path_costs(VertexId v, CostChannel ch);

 private:
  static constexpr std::int32_t kNone = -1;

  struct Node {
    std::int32_t left = kNone;
    std::int32_t right = kNone;
    std::int32_t parent = kNone;  // splay parent, or path-parent at a splay root
    std::int32_t arcs = 0;        // arc nodes in the splay subtree
    std::int32_t end_a = kNone;   // arc endpoints; kNone on vertex nodes
    std::int32_t end_b = kNone;
    bool is_arc = false;
    bool live = true;
    bool flip = false;
  };

  struct Slot {
    CostValue cost = 0;
    CostValue min = 0;
    CostValue max = 0;
    CostValue add = 0;
    bool neg = false;
  };

  // One header cell per node followed by its channel slots, so a node and
  // its aggregates share cache lines.
  union Cell {
    Node node;
    Slot slot;
    Cell() : node() {}
  };

  std::size_t stride() const { return channels_ + 1; }
  Node& node(std::int32_t x) { return cells_[static_cast<std::size_t>(x) * stride()].node; }
  const Node& node(std::int32_t x) const { return cells_[static_cast<std::size_t>(x) * stride()].node; }
  Slot& slot(std::int32_t x, std::size_t ch) { return cells_[static_cast<std::size_t>(x) * stride() + 1 + ch].slot; }
  const Slot& slot(std::int32_t x, std::size_t ch) const {
    return cells_[static_cast<std::size_t>(x) * stride() + 1 + ch].slot;
  }
  Slot& slot(std::int32_t x, CostChannel ch) { return slot(x, std::size_t{ch.index}); }
  const Slot& slot(std::int32_t x, CostChannel ch) const { return slot(x, std::size_t{ch.index}); }

  std::int32_t new_node(bool is_arc);
  std::int32_t vertex_node(VertexId v) const;
  std::int32_t arc_node(ArcId a) const;
  void check_channel(CostChannel ch) const;

  bool is_splay_root(std::int32_t x) const;
  void apply_flip(std::int32_t x);
  void apply_tag(std::int32_t x, std::size_t ch, bool neg, CostValue add);
  void push(std::int32_t x);
  void pull(std::int32_t x);
  void rotate(std::int32_t x);
  void splay(std::int32_t x);
  void access(std::int32_t x);
  std::int32_t build_balanced(std::span<const std::int32_t> order);

  // Splays the predecessor/successor of x inside x's splay tree and returns it.
  std::int32_t splay_prev(std::int32_t x);
  std::int32_t splay_next(std::int32_t x);
  // Parent arc node of vertex v, kNone when v is a root. Leaves it splayed.
  std::int32_t find_parent_arc(std::int32_t v);

  std::size_t channels_;
  std::vector<Cell> cells_;
  std::size_t node_count_ = 0;
  std::vector<std::int32_t> free_arcs_;
  std::vector<std::int32_t> scratch_;
  std::size_t vertex_count_ = 0;
  std::size_t arc_count_ = 0;
};

}  // namespace loglist::lct
