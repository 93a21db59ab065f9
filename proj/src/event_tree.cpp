#include "asymparb/event_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace asymparb {

std::string to_string(const Violation& v) {
  std::string s = v.field;
  if (v.node) s += " (node " + std::to_string(*v.node) + ")";
  s += ": " + v.message;
  return s;
}

EventTree::EventTree(int horizon, std::vector<TreeNode> nodes)
    : horizon_(horizon), nodes_(std::move(nodes)) {
  const int n = static_cast<int>(nodes_.size());
  if (n == 0) throw std::invalid_argument("EventTree: empty node list");
  if (n > kMaxNodes) throw std::invalid_argument("EventTree: node cap exceeded");

  std::sort(nodes_.begin(), nodes_.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.id < b.id; });
  for (int i = 0; i < n; ++i) {
    if (nodes_[i].id != i)
      throw std::invalid_argument("EventTree: node ids must be dense from 0");
    nodes_[i].children.clear();
  }
  for (const TreeNode& nd : nodes_) {
    if (nd.parent) {
      if (*nd.parent < 0 || *nd.parent >= n || *nd.parent == nd.id)
        throw std::invalid_argument("EventTree: parent id out of range");
      nodes_[*nd.parent].children.push_back(nd.id);
    } else if (root_ < 0) {
      root_ = nd.id;
    }
  }
  if (root_ < 0) throw std::invalid_argument("EventTree: no root node");

  leaf_ordinal_.assign(n, -1);
  leaf_range_.assign(n, {0, 0});

  // Depth-first traversal from the root fixes leaf ordinals and the
  // node-by-time order used by the LP builders.
  std::vector<int> stack{root_};
  std::vector<int> dfs;
  std::vector<char> seen(n, 0);
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;  // guards against malformed parent cycles
    seen[id] = 1;
    dfs.push_back(id);
    const auto& ch = nodes_[id].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  for (int id : dfs) {
    if (nodes_[id].children.empty()) {
      leaf_ordinal_[id] = static_cast<int>(leaves_.size());
      leaves_.push_back(id);
    }
  }
  // leaf range by reverse depth-first order (children are finished first)
  for (auto it = dfs.rbegin(); it != dfs.rend(); ++it) {
    int id = *it;
    if (nodes_[id].children.empty()) {
      leaf_range_[id] = {leaf_ordinal_[id], leaf_ordinal_[id] + 1};
    } else {
      int lo = node_count(), hi = 0;
      for (int c : nodes_[id].children) {
        lo = std::min(lo, leaf_range_[c].first);
        hi = std::max(hi, leaf_range_[c].second);
      }
      leaf_range_[id] = {lo, hi};
    }
  }

  by_time_.resize(n);
  for (int i = 0; i < n; ++i) by_time_[i] = i;
  std::stable_sort(by_time_.begin(), by_time_.end(),
                   [this](int a, int b) { return nodes_[a].time < nodes_[b].time; });
}

std::vector<Violation> EventTree::validate() const {
  std::vector<Violation> out;
  if (horizon_ < 1)
    out.push_back({std::nullopt, "horizon", "must be >= 1"});
  int roots = 0;
  for (const TreeNode& nd : nodes_) {
    if (!nd.parent) {
      ++roots;
      if (nd.time != 0)
        out.push_back({nd.id, "time", "root must sit at time 0"});
    } else {
      int pt = nodes_[*nd.parent].time;
      if (nd.time != pt + 1)
        out.push_back({nd.id, "time",
                       "child time " + std::to_string(nd.time) +
                           " != parent time + 1 (" + std::to_string(pt + 1) + ")"});
    }
    if (nd.time < 0 || nd.time > horizon_)
      out.push_back({nd.id, "time", "outside [0, horizon]"});
    if (nd.children.empty() && nd.time != horizon_)
      out.push_back({nd.id, "children",
                     "non-terminal node at time " + std::to_string(nd.time) +
                         " has no children"});
    if (!nd.children.empty() && nd.time == horizon_)
      out.push_back({nd.id, "children", "node at the horizon has children"});
  }
  if (roots != 1)
    out.push_back({std::nullopt, "root",
                   "expected exactly one root, found " + std::to_string(roots)});
  // reachability: every node must descend from the root
  std::vector<char> reach(nodes_.size(), 0);
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (reach[id]) continue;
    reach[id] = 1;
    for (int c : nodes_[id].children) stack.push_back(c);
  }
  for (const TreeNode& nd : nodes_)
    if (!reach[nd.id])
      out.push_back({nd.id, "parent", "node unreachable from the root"});
  return out;
}

}  // namespace asymparb
