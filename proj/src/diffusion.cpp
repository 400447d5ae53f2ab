#include "detgp/diffusion.hpp"

#include "detgp/error.hpp"

namespace detgp {

Eigen::VectorXd hop_weights_alpha(const HopWeights& hw) {
  const Eigen::VectorXd shifted = hw.logits.array() - hw.logits.maxCoeff();
  Eigen::VectorXd alpha = shifted.array().exp();
  return alpha / alpha.sum();
}

namespace {

void check_diffuse_dims(const TransitionMatrix& P, const Eigen::VectorXd& alpha,
                        const Eigen::MatrixXd& V) {
  if (V.rows() != P.num_nodes()) {
    throw DimensionError("diffuse: V has " + std::to_string(V.rows()) + " rows, graph has " +
                         std::to_string(P.num_nodes()) + " nodes");
  }
  if (alpha.size() < 1) throw DimensionError("diffuse: alpha is empty");
}

}  // namespace

Eigen::MatrixXd diffuse_transposed(const TransitionMatrix& P, const Eigen::VectorXd& alpha,
                                   const Eigen::MatrixXd& V,
                                   std::vector<Eigen::MatrixXd>* hop_terms) {
  check_diffuse_dims(P, alpha, V);
  const int max_hop = static_cast<int>(alpha.size()) - 1;
  if (hop_terms) {
    hop_terms->clear();
    hop_terms->push_back(V);
  }
  Eigen::MatrixXd out = alpha[0] * V;
  Eigen::MatrixXd walk = V;
  for (int j = 1; j <= max_hop; ++j) {
    walk = P.transposed.multiply(walk);
    if (hop_terms) hop_terms->push_back(walk);
    out += alpha[j] * walk;
  }
  return out;
}

Eigen::MatrixXd diffuse_forward(const TransitionMatrix& P, const Eigen::VectorXd& alpha,
                                const Eigen::MatrixXd& V) {
  check_diffuse_dims(P, alpha, V);
  const int max_hop = static_cast<int>(alpha.size()) - 1;
  Eigen::MatrixXd out = alpha[0] * V;
  Eigen::MatrixXd walk = V;
  for (int j = 1; j <= max_hop; ++j) {
    walk = P.forward.multiply(walk);
    out += alpha[j] * walk;
  }
  return out;
}

Eigen::MatrixXd materialize_pstar(const TransitionMatrix& P, const Eigen::VectorXd& alpha) {
  const int n = P.num_nodes();
  if (n > kMaterializeGuard) {
    throw InvalidArgument("materialize_pstar: N = " + std::to_string(n) + " exceeds guard " +
                          std::to_string(kMaterializeGuard));
  }
  Eigen::MatrixXd dense_p = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (std::int64_t k = P.forward.row_ptr[r]; k < P.forward.row_ptr[r + 1]; ++k) {
      dense_p(r, P.forward.col_idx[k]) = P.forward.values[k];
    }
  }
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd out = alpha[0] * power;
  for (int j = 1; j < alpha.size(); ++j) {
    power = power * dense_p;
    out += alpha[j] * power;
  }
  return out;
}

}  // namespace detgp
