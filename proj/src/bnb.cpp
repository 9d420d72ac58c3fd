#include "mobnb/bnb.hpp"

#include <algorithm>
#include <limits>

namespace mobnb {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct OpenEntry {
  Node node;
  std::vector<Node> children;  // generated on first selection
  std::size_t next_child = 0;
  bool expanded = false;
};

}  // namespace

void BnbConfig::validate() const {
  root.validate();
  node.validate();
  leaf.validate();
  if (max_nodes && *max_nodes < 1) throw UsageError("max_nodes must be at least 1");
  if (node_selection != NodeSelection::depth_first) {
    throw UsageError("only depth-first node selection is implemented");
  }
}

Node make_root(const ProblemSpec& problem) {
  Node root;
  root.box = problem.integer_box();
  root.status = root.is_leaf() ? NodeStatus::leaf : NodeStatus::open;
  return root;
}

std::vector<Node> branch(const Node& node, const ProblemSpec& problem) {
  if (node.is_leaf()) throw UsageError("branch: node has every integer fixed");
  if (node.box.size() != problem.integer_domains().size()) throw UsageError("branch: node box dimension mismatch");
  // Skip variables whose range is already a single value.
  std::size_t j = node.level;
  while (j < node.box.size() && node.box.lower[j] == node.box.upper[j]) ++j;
  if (j == node.box.size()) throw UsageError("branch: no free integer at or after the node's level");

  std::vector<Node> children;
  for (int value = node.box.lower[j]; value <= node.box.upper[j]; ++value) {
    Node child;
    child.level = j + 1;
    child.box = node.box;
    child.box.lower[j] = value;
    child.box.upper[j] = value;
    child.status = child.is_leaf() ? NodeStatus::leaf : NodeStatus::open;
    children.push_back(std::move(child));
  }
  return children;
}

Node bound(Node node, const ProblemSpec& problem, const BnbConfig& cfg, BoundLevel level, Nsga2Call* call) {
  Nsga2Config solver = level == BoundLevel::root ? cfg.root : level == BoundLevel::leaf ? cfg.leaf : cfg.node;
  solver.seed = splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(node.id) + 1));
  auto result = run_nsga2(problem, node.box, solver);
  if (call) {
    *call = {node.id, solver.population_size, result.generations, result.archive.evaluation_count};
  }
  node.local_archive = std::move(result.archive);
  if (node.local_archive.empty() || node.local_archive.infeasible) {
    node.status = NodeStatus::infeasible;
    node.local_ideal.clear();
    return node;
  }
  node.local_ideal = ideal_point(node.local_archive.members);
  node.status = node.is_leaf() ? NodeStatus::leaf : NodeStatus::open;
  return node;
}

bool should_retain(const ObjectiveVector& node_ideal, const ParetoArchive& incumbent) {
  return std::none_of(incumbent.members.begin(), incumbent.members.end(),
                      [&](const Solution& s) { return dominates(s.objectives, node_ideal); });
}

std::size_t default_max_nodes(const ProblemSpec& problem) {
  // Nodes below the root of the full tree: sum of the prefix products of
  // the integer ranges, saturating.
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  const IntegerBox box = problem.integer_box();
  std::uint64_t level = 1;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto width = static_cast<std::uint64_t>(box.upper[i] - box.lower[i] + 1);
    level = level > cap / width ? cap : level * width;
    total = total > cap - level ? cap : total + level;
  }
  return static_cast<std::size_t>(std::clamp<std::uint64_t>(total, 1, std::numeric_limits<std::size_t>::max()));
}

BnbResult solve(const ProblemSpec& problem, const BnbConfig& cfg) {
  cfg.validate();
  BnbResult out;
  BnbStats& stats = out.stats;
  stats.max_nodes = cfg.max_nodes.value_or(default_max_nodes(problem));
  std::size_t next_id = 0;

  auto record = [&](const Nsga2Call& call) {
    stats.evaluations += call.evaluations;
    stats.calls.push_back(call);
  };

  Node root = make_root(problem);
  root.id = next_id++;
  Nsga2Call call;
  root = bound(std::move(root), problem, cfg, BoundLevel::root, &call);
  record(call);
  ++stats.nodes_created;

  ParetoArchive incumbent;
  if (root.status != NodeStatus::infeasible) {
    incumbent = archive_merge(std::move(incumbent), root.local_archive.members);
  }
  out.root_archive = root.local_archive;

  if (root.is_leaf()) {
    if (root.status == NodeStatus::infeasible) {
      ++stats.nodes_fathomed;
      ++stats.nodes_infeasible;
    } else {
      ++stats.leaves_solved;
    }
    incumbent.evaluation_count = stats.evaluations;
    out.archive = std::move(incumbent);
    return out;
  }

  // The root is branched even when its own solve found nothing feasible.
  std::vector<OpenEntry> open;
  open.push_back({std::move(root), {}, 0, false});

  while (!open.empty() && stats.nodes_processed < stats.max_nodes) {
    OpenEntry& entry = open.back();  // depth-first
    if (!entry.expanded) {
      entry.children = branch(entry.node, problem);
      entry.expanded = true;
    }
    Node child = std::move(entry.children[entry.next_child++]);
    if (entry.next_child == entry.children.size()) {
      open.pop_back();
      ++stats.nodes_branched;
    }

    child.id = next_id++;
    const BoundLevel level = child.is_leaf() ? BoundLevel::leaf : BoundLevel::node;
    child = bound(std::move(child), problem, cfg, level, &call);
    record(call);
    ++stats.nodes_created;
    ++stats.nodes_processed;

    if (child.status == NodeStatus::infeasible) {
      ++stats.nodes_fathomed;
      ++stats.nodes_infeasible;
      continue;
    }
    if (cfg.fathoming && !should_retain(child.local_ideal, incumbent)) {
      ++stats.nodes_fathomed;
      continue;
    }
    incumbent = archive_merge(std::move(incumbent), child.local_archive.members);
    if (child.is_leaf()) {
      // Leaves never enter the open list.
      ++stats.leaves_solved;
      continue;
    }
    child.local_archive = {};
    open.push_back({std::move(child), {}, 0, false});
  }

  stats.nodes_unprocessed = open.size();
  stats.truncated = !open.empty();
  incumbent.evaluation_count = stats.evaluations;
  out.archive = std::move(incumbent);
  return out;
}

}  // namespace mobnb
