#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rcl/hypothesis.hpp"
#include "rcl/types.hpp"

namespace rcl {

/// How edges of a consistency graph are decided.
///   PairwiseLabels: edge (i,j) iff no point carries different labels in
///                   S_i vs S_j (direct conflicts only).
///   OracleChecked:  edge (i,j) iff the class has a member consistent with
///                   S_i union S_j.
/// OracleChecked edges are always a subset of PairwiseLabels edges.
enum class EdgeBasis { PairwiseLabels, OracleChecked };

using Dataset = std::vector<LabeledExample>;

/// Undirected graph over users; an absent edge marks a conflict.
class ConsistencyGraph {
 public:
  ConsistencyGraph(std::size_t n, EdgeBasis basis);

  std::size_t num_vertices() const { return n_; }
  EdgeBasis basis() const { return basis_; }

  void add_edge(std::size_t i, std::size_t j);
  bool has_edge(std::size_t i, std::size_t j) const;
  std::size_t degree(std::size_t i) const;
  std::size_t num_edges() const;

  /// One "i j" pair per line, 0-indexed, i < j, lexicographic order.
  std::string to_edge_list() const;

 private:
  std::size_t n_;
  EdgeBasis basis_;
  std::vector<std::uint8_t> adj_;  // row-major n x n
};

ConsistencyGraph build_consistency_graph(const std::vector<Dataset>& datasets,
                                         const HypothesisClass& cls,
                                         EdgeBasis basis);

/// Largest user subset whose joint dataset the consistency oracle accepts,
/// of size at least min_size; ties break lexicographically (the first such
/// subset in decreasing-size, lexicographic-within-size order). Every result
/// is re-verified against the oracle before being returned.
///
/// Exhaustive in the subset lattice; throws SearchCapError when the number of
/// users exceeds `cap`.
std::optional<std::vector<std::size_t>> max_consistent_group_exhaustive(
    const std::vector<Dataset>& datasets, const HypothesisClass& cls,
    std::size_t min_size, std::size_t cap = 25);

/// Highest-degree-first greedy clique extension. The result is always a
/// clique of `graph` with no optimality claim; it exists to compare against
/// the exhaustive search.
std::vector<std::size_t> greedy_consistent_group(const ConsistencyGraph& graph);

}  // namespace rcl
