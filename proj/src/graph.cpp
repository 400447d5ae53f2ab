#include "detgp/graph.hpp"

#include <algorithm>

#include "detgp/error.hpp"
#include "detgp/parallel.hpp"

namespace detgp {

Eigen::MatrixXd CsrMatrix::multiply(const Eigen::MatrixXd& dense) const {
  if (dense.rows() != cols) {
    throw DimensionError("CsrMatrix::multiply: got " + std::to_string(dense.rows()) +
                         " rows, expected " + std::to_string(cols));
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, dense.cols());
  parallel_for(0, rows, [&](int r) {
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      out.row(r) += values[k] * dense.row(col_idx[k]);
    }
  });
  return out;
}

CsrMatrix CsrMatrix::transpose_copy() const {
  CsrMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.row_ptr.assign(cols + 1, 0);
  t.col_idx.resize(col_idx.size());
  t.values.resize(values.size());
  for (int c : col_idx) ++t.row_ptr[c + 1];
  for (int r = 0; r < cols; ++r) t.row_ptr[r + 1] += t.row_ptr[r];
  std::vector<std::int64_t> cursor(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (int r = 0; r < rows; ++r) {
    for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const std::int64_t pos = cursor[col_idx[k]]++;
      t.col_idx[pos] = r;
      t.values[pos] = values[k];
    }
  }
  return t;
}

Graph Graph::from_edges(std::vector<std::string> node_ids,
                        const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph g;
  g.ids_.reserve(node_ids.size());
  for (auto& id : node_ids) g.insert_node_unchecked(id);
  g.adj_.resize(g.ids_.size());
  for (const auto& [a, b] : edges) {
    if (a == b) throw InvalidArgument("self-loop on node '" + a + "' is not allowed");
    g.connect_indices(g.require_index(a), g.require_index(b));
  }
  return g;
}

void Graph::insert_node_unchecked(const std::string& id) {
  auto [it, inserted] = index_.emplace(id, static_cast<int>(ids_.size()));
  if (!inserted) throw InvalidArgument("duplicate node id '" + id + "'");
  ids_.push_back(id);
}

void Graph::connect_indices(int a, int b) {
  auto& na = adj_[a];
  auto pos = std::lower_bound(na.begin(), na.end(), b);
  if (pos != na.end() && *pos == b) return;  // dedup
  na.insert(pos, b);
  auto& nb = adj_[b];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  ++num_edges_;
}

std::optional<int> Graph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Graph::require_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InvalidArgument("unknown node id '" + id + "'");
  return it->second;
}

std::span<const int> Graph::neighbors(int n) const {
  const auto& v = adj_.at(n);
  return {v.data(), v.size()};
}

bool Graph::has_edge(int a, int b) const {
  const auto& na = adj_.at(a);
  return std::binary_search(na.begin(), na.end(), b);
}

Graph Graph::add_node(const std::string& id, const std::vector<std::string>& neighbor_ids) const {
  Graph g = *this;
  g.insert_node_unchecked(id);
  g.adj_.emplace_back();
  const int self = g.num_nodes() - 1;
  for (const auto& nb : neighbor_ids) {
    const int other = g.require_index(nb);
    if (other == self) throw InvalidArgument("self-loop on node '" + id + "' is not allowed");
    g.connect_indices(self, other);
  }
  return g;
}

Graph Graph::update_edge(const std::string& a, const std::string& b, bool present) const {
  if (a == b) throw InvalidArgument("self-loop on node '" + a + "' is not allowed");
  Graph g = *this;
  const int ia = g.require_index(a);
  const int ib = g.require_index(b);
  if (present) {
    g.connect_indices(ia, ib);
  } else if (g.has_edge(ia, ib)) {
    auto erase_from = [](std::vector<int>& v, int x) {
      v.erase(std::lower_bound(v.begin(), v.end(), x));
    };
    erase_from(g.adj_[ia], ib);
    erase_from(g.adj_[ib], ia);
    --g.num_edges_;
  }
  return g;
}

Graph Graph::extend(const std::vector<std::string>& new_ids,
                    const std::vector<std::pair<std::string, std::string>>& new_edges) const {
  Graph g = *this;
  for (const auto& id : new_ids) {
    g.insert_node_unchecked(id);
    g.adj_.emplace_back();
  }
  for (const auto& [a, b] : new_edges) {
    if (a == b) throw InvalidArgument("self-loop on node '" + a + "' is not allowed");
    g.connect_indices(g.require_index(a), g.require_index(b));
  }
  return g;
}

TransitionMatrix build_transition(const Graph& graph) {
  const int n = graph.num_nodes();
  CsrMatrix p;
  p.rows = n;
  p.cols = n;
  p.row_ptr.assign(n + 1, 0);
  for (int r = 0; r < n; ++r) p.row_ptr[r + 1] = p.row_ptr[r] + graph.degree(r);
  p.col_idx.reserve(p.row_ptr[n]);
  p.values.reserve(p.row_ptr[n]);
  for (int r = 0; r < n; ++r) {
    const double w = graph.degree(r) > 0 ? 1.0 / graph.degree(r) : 0.0;
    for (int c : graph.neighbors(r)) {
      p.col_idx.push_back(c);
      p.values.push_back(w);
    }
  }
  TransitionMatrix t;
  t.transposed = p.transpose_copy();
  t.forward = std::move(p);
  return t;
}

}  // namespace detgp
