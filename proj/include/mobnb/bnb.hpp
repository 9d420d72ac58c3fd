#pragma once

// Multi-criteria branch-and-bound over the integer variables, with NSGA-II
// as the bounding solver at the root, at internal nodes and at leaves.

#include <cstdint>
#include <optional>
#include <vector>

#include "mobnb/core.hpp"
#include "mobnb/nsga2.hpp"
#include "mobnb/problems.hpp"

namespace mobnb {

enum class NodeStatus { open, leaf, fathomed, infeasible, solved };

struct Node {
  std::size_t id = 0;
  std::size_t level = 0;  // integer variables fixed so far, in variable order
  IntegerBox box;
  NodeStatus status = NodeStatus::open;
  ParetoArchive local_archive;
  ObjectiveVector local_ideal;

  [[nodiscard]] bool is_leaf() const { return box.is_point(); }
};

enum class NodeSelection {
  depth_first,
  best_first,  // reserved; rejected by validate()
};

struct BnbConfig {
  Nsga2Config root;
  Nsga2Config node;
  Nsga2Config leaf;
  /// Nodes bounded after the root. Unset: every node of the full tree.
  std::optional<std::size_t> max_nodes;
  NodeSelection node_selection = NodeSelection::depth_first;
  std::uint64_t seed = 0;
  /// When false every bounded node is retained (exhaustive search).
  bool fathoming = true;

  void validate() const;
};

struct Nsga2Call {
  std::size_t node_id = 0;
  std::size_t population_size = 0;
  std::size_t generations = 0;
  std::uint64_t evaluations = 0;
};

struct BnbStats {
  std::size_t nodes_created = 0;  // root included
  std::size_t nodes_fathomed = 0;  // infeasible nodes included
  std::size_t nodes_infeasible = 0;
  std::size_t nodes_branched = 0;  // every child generated
  std::size_t leaves_solved = 0;  // leaves merged into the incumbent
  std::size_t nodes_unprocessed = 0;  // still open when the loop stopped
  std::size_t nodes_processed = 0;  // loop iterations, compared against max_nodes
  std::size_t max_nodes = 0;
  std::uint64_t evaluations = 0;
  bool truncated = false;
  std::vector<Nsga2Call> calls;
};

struct BnbResult {
  ParetoArchive archive;
  ParetoArchive root_archive;
  BnbStats stats;
};

/// Children of `node` fixing the integer at index `node.level` to each value
/// of its current range. Throws UsageError on a leaf.
[[nodiscard]] std::vector<Node> branch(const Node& node, const ProblemSpec& problem);

/// Which NSGA-II instance bounds a node.
enum class BoundLevel { root, node, leaf };

/// Runs NSGA-II inside the node's integer box and records the local archive
/// and ideal point. The status becomes infeasible when nothing feasible was
/// found, leaf for fixed-integer nodes, open otherwise.
[[nodiscard]] Node bound(Node node, const ProblemSpec& problem, const BnbConfig& cfg, BoundLevel level,
                         Nsga2Call* call = nullptr);

/// False (fathom) iff an incumbent member dominates the node's ideal point.
[[nodiscard]] bool should_retain(const ObjectiveVector& node_ideal, const ParetoArchive& incumbent);

/// Default node budget for a problem, see BnbConfig::max_nodes.
[[nodiscard]] std::size_t default_max_nodes(const ProblemSpec& problem);

[[nodiscard]] BnbResult solve(const ProblemSpec& problem, const BnbConfig& cfg);

[[nodiscard]] Node make_root(const ProblemSpec& problem);

}  // namespace mobnb
