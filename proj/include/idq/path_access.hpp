#ifndef IDQ_PATH_ACCESS_HPP_
#define IDQ_PATH_ACCESS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "idq/common.hpp"

namespace idq {

// A maximal run of equally labelled nodes on a root path, from `deepest` up
// to `top`, together with the label it carried before the access.
struct PathSegment {
    NodeId deepest;
    NodeId top;
    Pos label;
};

/*
 * Labels on a static rooted tree, updated only by access(v, label), which
 * reports the root path of v as constant-label runs and then relabels the
 * whole path.
 *
 * Realised as a link-cut tree without link/cut: every preferred path (one
 * splay tree) carries one label, so the runs fall out of the access walk.
 * Over m accesses the number of reported runs is O((m + size) log size).
 */
class PathAccess {
public:
    // parent[root] must be kNoNode
    PathAccess(std::span<const NodeId> parent, Pos initial_label);

    // Appends the runs of v's root path, bottom-up, to out (which is cleared
    // first) and sets every label on the path to new_label.
    // Throws LookupError for an unknown node.
    void access(NodeId v, Pos new_label, std::vector<PathSegment>& out);

    std::uint64_t total_segments() const { return total_segments_; }
    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        NodeId child[2] = {kNoNode, kNoNode};
        NodeId parent = kNoNode;  // splay parent, or path-parent at a splay root
        NodeId top = kNoNode;     // shallowest node of the splay subtree
        Pos label = 0;
        bool pending = false;
    };

    bool is_splay_root(NodeId x) const;
    void assign(NodeId x, Pos label);
    void push(NodeId x);
    void pull(NodeId x);
    void rotate(NodeId x);
    void splay(NodeId x);

    std::vector<Node> nodes_;
    std::vector<NodeId> scratch_;
    std::uint64_t total_segments_ = 0;
};

}  // namespace idq

#endif  // IDQ_PATH_ACCESS_HPP_
