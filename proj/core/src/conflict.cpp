#include "rcl/conflict.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace rcl {

ConsistencyGraph::ConsistencyGraph(std::size_t n, EdgeBasis basis)
    : n_(n), basis_(basis), adj_(n * n, 0) {}

void ConsistencyGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw ParameterError("vertex out of range");
  if (i == j) throw ParameterError("self-loops are not allowed");
  adj_[i * n_ + j] = 1;
  adj_[j * n_ + i] = 1;
}

bool ConsistencyGraph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw ParameterError("vertex out of range");
  return adj_[i * n_ + j] != 0;
}

std::size_t ConsistencyGraph::degree(std::size_t i) const {
  if (i >= n_) throw ParameterError("vertex out of range");
  std::size_t deg = 0;
  for (std::size_t j = 0; j < n_; ++j) deg += adj_[i * n_ + j];
  return deg;
}

std::size_t ConsistencyGraph::num_edges() const {
  std::size_t twice = 0;
  for (auto v : adj_) twice += v;
  return twice / 2;
}

std::string ConsistencyGraph::to_edge_list() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (has_edge(i, j)) out << i << ' ' << j << '\n';
    }
  }
  return out.str();
}

namespace {

/// True when some point carries different labels across the two datasets
/// (or within one of them).
bool label_conflict(const Dataset& a, const Dataset& b) {
  std::map<std::uint32_t, bool> seen;
  for (const Dataset* ds : {&a, &b}) {
    for (const auto& ex : *ds) {
      auto [it, inserted] = seen.try_emplace(ex.point.index, ex.label);
      if (!inserted && it->second != ex.label) return true;
    }
  }
  return false;
}

bool jointly_consistent(const Dataset& a, const Dataset& b,
                        const HypothesisClass& cls) {
  Dataset pool;
  pool.reserve(a.size() + b.size());
  pool.insert(pool.end(), a.begin(), a.end());
  pool.insert(pool.end(), b.begin(), b.end());
  return cls.consistent(pool).has_value();
}

}  // namespace

ConsistencyGraph build_consistency_graph(const std::vector<Dataset>& datasets,
                                         const HypothesisClass& cls,
                                         EdgeBasis basis) {
  for (const auto& ds : datasets) {
    for (const auto& ex : ds) {
      if (ex.point.index >= cls.domain_size()) {
        throw DomainError("dataset point outside class domain");
      }
    }
  }
  ConsistencyGraph graph(datasets.size(), basis);
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    for (std::size_t j = i + 1; j < datasets.size(); ++j) {
      const bool edge = basis == EdgeBasis::PairwiseLabels
                            ? !label_conflict(datasets[i], datasets[j])
                            : jointly_consistent(datasets[i], datasets[j], cls);
      if (edge) graph.add_edge(i, j);
    }
  }
  return graph;
}

std::optional<std::vector<std::size_t>> max_consistent_group_exhaustive(
    const std::vector<Dataset>& datasets, const HypothesisClass& cls,
    std::size_t min_size, std::size_t cap) {
  const std::size_t n = datasets.size();
  if (n > cap) {
    throw SearchCapError("exhaustive group search over " + std::to_string(n) +
                         " users exceeds the cap of " + std::to_string(cap));
  }
  if (min_size > n) return std::nullopt;

  // Pairwise conflicts rule out every superset cheaply; joint consistency is
  // then decided by the oracle.
  std::vector<std::uint8_t> pair_ok(n * n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ok = jointly_consistent(datasets[i], datasets[j], cls);
      pair_ok[i * n + j] = pair_ok[j * n + i] = ok ? 1 : 0;
    }
  }

  std::vector<std::size_t> picks;
  Dataset pool;
  // Decreasing size, lexicographic within a size: the first hit is the
  // deterministic winner.
  for (std::size_t k = n; k >= std::max<std::size_t>(min_size, 1); --k) {
    picks.assign(k, 0);
    std::iota(picks.begin(), picks.end(), 0);
    while (true) {
      bool pairs_fine = true;
      for (std::size_t a = 0; a < k && pairs_fine; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
          if (!pair_ok[picks[a] * n + picks[b]]) {
            pairs_fine = false;
            break;
          }
        }
      }
      if (pairs_fine) {
        pool.clear();
        for (std::size_t p : picks) {
          pool.insert(pool.end(), datasets[p].begin(), datasets[p].end());
        }
        if (cls.consistent(pool).has_value()) return picks;
      }
      std::size_t i = k;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (picks[i] != i + n - k) {
          ++picks[i];
          for (std::size_t j = i + 1; j < k; ++j) picks[j] = picks[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    if (k == 1) break;  // avoid size_t underflow when min_size is 0
  }
  return std::nullopt;
}

std::vector<std::size_t> greedy_consistent_group(
    const ConsistencyGraph& graph) {
  const std::size_t n = graph.num_vertices();
  if (n == 0) return {};
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return graph.degree(a) > graph.degree(b);
                   });
  std::vector<std::size_t> clique;
  for (std::size_t v : order) {
    const bool compatible =
        std::all_of(clique.begin(), clique.end(),
                    [&](std::size_t u) { return graph.has_edge(u, v); });
    if (compatible) clique.push_back(v);
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

}  // namespace rcl
