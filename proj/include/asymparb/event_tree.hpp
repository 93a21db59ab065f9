#pragma once

#include <optional>
#include <string>
#include <vector>

namespace asymparb {

/// One node of a finite event tree. Ids are dense in [0, node_count).
struct TreeNode {
  int id = 0;
  std::optional<int> parent;  // empty for the root
  int time = 0;               // leaves sit at time == horizon
  std::vector<int> children;  // derived, ascending id order
};

/// A structural problem found while validating a tree or market.
struct Violation {
  std::optional<int> node;
  std::string field;
  std::string message;
};

std::string to_string(const Violation& v);

/// Discrete filtration carrier: a rooted tree whose depth-t slice is the
/// time-t partition. Construction only derives structure (children lists,
/// leaf ordering); shape rules are reported by validate() so that malformed
/// inputs can be diagnosed instead of rejected blindly.
class EventTree {
 public:
  static constexpr int kMaxNodes = 1 << 16;

  EventTree(int horizon, std::vector<TreeNode> nodes);

  int horizon() const { return horizon_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(int id) const { return nodes_[id]; }
  int root() const { return root_; }
  bool is_leaf(int id) const { return nodes_[id].children.empty(); }
  const std::vector<int>& children(int id) const { return nodes_[id].children; }

  /// Leaves in depth-first order; this ordering defines the leaf ordinals
  /// used by probability vectors, claims and subset bitmasks.
  const std::vector<int>& leaves() const { return leaves_; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  int leaf_node(int ordinal) const { return leaves_[ordinal]; }
  /// -1 when the node is not a leaf.
  int leaf_ordinal(int id) const { return leaf_ordinal_[id]; }

  /// Half-open ordinal range of the leaves below a node (the node itself if
  /// it is a leaf). Meaningful on trees that pass validate().
  std::pair<int, int> leaf_range(int id) const { return leaf_range_[id]; }

  /// Node ids ordered root-first by time (stable within a slice).
  const std::vector<int>& by_time() const { return by_time_; }

  std::vector<Violation> validate() const;

 private:
  int horizon_ = 0;
  std::vector<TreeNode> nodes_;
  int root_ = -1;
  std::vector<int> leaves_;
  std::vector<int> leaf_ordinal_;
  std::vector<std::pair<int, int>> leaf_range_;
  std::vector<int> by_time_;
};

}  // namespace asymparb
