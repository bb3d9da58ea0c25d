#include "idq/path_access.hpp"

#include <string>

namespace idq {

PathAccess::PathAccess(std::span<const NodeId> parent, Pos initial_label) : nodes_(parent.size()) {
    for (std::size_t v = 0; v < parent.size(); ++v) {
        nodes_[v].parent = parent[v];
        nodes_[v].top = static_cast<NodeId>(v);
        nodes_[v].label = initial_label;
    }
}

bool PathAccess::is_splay_root(NodeId x) const {
    NodeId p = nodes_[x].parent;
    return p == kNoNode || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
}

void PathAccess::assign(NodeId x, Pos label) {
    nodes_[x].label = label;
    nodes_[x].pending = true;
}

void PathAccess::push(NodeId x) {
    Node& node = nodes_[x];
    if (!node.pending) return;
    for (NodeId c : node.child) {
        if (c != kNoNode) assign(c, node.label);
    }
    node.pending = false;
}

void PathAccess::pull(NodeId x) {
    NodeId left = nodes_[x].child[0];
    nodes_[x].top = left != kNoNode ? nodes_[left].top : x;
}

void PathAccess::rotate(NodeId x) {
    NodeId y = nodes_[x].parent;
    NodeId z = nodes_[y].parent;
    int dir = nodes_[y].child[1] == x ? 1 : 0;
    if (!is_splay_root(y)) {
        nodes_[z].child[nodes_[z].child[1] == y ? 1 : 0] = x;
    }
    nodes_[x].parent = z;
    NodeId b = nodes_[x].child[1 - dir];
    nodes_[y].child[dir] = b;
    if (b != kNoNode) nodes_[b].parent = y;
    nodes_[x].child[1 - dir] = y;
    nodes_[y].parent = x;
    pull(y);
    pull(x);
}

void PathAccess::splay(NodeId x) {
    scratch_.clear();
    for (NodeId y = x;; y = nodes_[y].parent) {
        scratch_.push_back(y);
        if (is_splay_root(y)) break;
    }
    for (auto it = scratch_.rbegin(); it != scratch_.rend(); ++it) push(*it);

    while (!is_splay_root(x)) {
        NodeId y = nodes_[x].parent;
        if (!is_splay_root(y)) {
            NodeId z = nodes_[y].parent;
            bool zig_zig = (nodes_[y].child[0] == x) == (nodes_[z].child[0] == y);
            rotate(zig_zig ? y : x);
        }
        rotate(x);
    }
}

void PathAccess::access(NodeId v, Pos new_label, std::vector<PathSegment>& out) {
    if (v < 0 || static_cast<std::size_t>(v) >= nodes_.size()) {
        throw LookupError("path access: unknown node " + std::to_string(v));
    }
    out.clear();
    NodeId below = kNoNode;
    for (NodeId u = v; u != kNoNode; u = nodes_[u].parent) {
        splay(u);
        // u's splay tree is one preferred path; the part from its top down to
        // u lies on v's root path and carries a single label
        NodeId left = nodes_[u].child[0];
        NodeId top = left != kNoNode ? nodes_[left].top : u;
        Pos label = nodes_[u].label;
        if (!out.empty() && out.back().label == label) {
            out.back().top = top;
        } else {
            out.push_back(PathSegment{u, top, label});
        }
        nodes_[u].child[1] = below;
        pull(u);
        below = u;
    }
    splay(v);
    assign(v, new_label);
    total_segments_ += out.size();
}

}  // namespace idq
