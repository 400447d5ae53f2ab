#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace detgp {

// Compressed sparse row matrix. Only what the diffusion needs.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> row_ptr;  // size rows + 1
  std::vector<int> col_idx;
  std::vector<double> values;

  std::int64_t nnz() const { return static_cast<std::int64_t>(col_idx.size()); }

  // this * dense, row-parallel; each output row is a fixed-order dot sum.
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& dense) const;

  CsrMatrix transpose_copy() const;
};

// Undirected graph over string node ids. Immutable after construction:
// add_node / update_edge return a modified copy, so snapshots can be shared
// freely across threads. Insertion order of ids defines dense indices.
class Graph {
 public:
  Graph() = default;

  // Dedups duplicate edges silently; rejects self-loops and unknown ids.
  static Graph from_edges(std::vector<std::string> node_ids,
                          const std::vector<std::pair<std::string, std::string>>& edges);

  int num_nodes() const { return static_cast<int>(ids_.size()); }
  std::size_t num_edges() const { return num_edges_; }
  const std::vector<std::string>& node_ids() const { return ids_; }
  const std::string& id_of(int index) const { return ids_.at(index); }
  std::optional<int> index_of(const std::string& id) const;
  int require_index(const std::string& id) const;  // throws InvalidArgument

  std::span<const int> neighbors(int n) const;  // sorted, no self, no dups
  int degree(int n) const { return static_cast<int>(adj_[n].size()); }
  bool has_edge(int a, int b) const;

  Graph add_node(const std::string& id, const std::vector<std::string>& neighbor_ids) const;
  Graph update_edge(const std::string& a, const std::string& b, bool present) const;

  // Bulk path used by dynamic insertion: appends all new nodes first, then
  // applies edges that may reference both old and new ids. Equivalent to a
  // sequence of add_node / update_edge calls.
  Graph extend(const std::vector<std::string>& new_ids,
               const std::vector<std::pair<std::string, std::string>>& new_edges) const;

 private:
  void insert_node_unchecked(const std::string& id);
  void connect_indices(int a, int b);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> adj_;
  std::size_t num_edges_ = 0;
};

// Row-stochastic random-walk matrix P plus its exact transpose.
// Rows of isolated nodes are all-zero.
struct TransitionMatrix {
  CsrMatrix forward;
  CsrMatrix transposed;

  int num_nodes() const { return forward.rows; }
};

TransitionMatrix build_transition(const Graph& graph);

}  // namespace detgp
