#pragma once

#include <Eigen/Dense>
#include <vector>

#include "detgp/graph.hpp"

namespace detgp {

// Learnable logits over hop depths 0..J. softmax(logits) gives the simplex
// weights alpha that mix powers of the transition matrix.
struct HopWeights {
  Eigen::VectorXd logits;

  static HopWeights uniform(int max_hops) {
    return HopWeights{Eigen::VectorXd::Zero(max_hops + 1)};
  }
  int max_hops() const { return static_cast<int>(logits.size()) - 1; }
};

// Shift-invariant softmax of the logits; sums to 1.
Eigen::VectorXd hop_weights_alpha(const HopWeights& hw);

// sum_j alpha_j (P^T)^j V via repeated sparse transposed matvecs.
// Never materializes a power of P. If hop_terms is given it receives the
// J+1 intermediates (P^T)^j V needed for the backward pass.
Eigen::MatrixXd diffuse_transposed(const TransitionMatrix& P, const Eigen::VectorXd& alpha,
                                   const Eigen::MatrixXd& V,
                                   std::vector<Eigen::MatrixXd>* hop_terms = nullptr);

// Adjoint companion: sum_j alpha_j P^j V with the forward matrix. This is
// the transpose of the map diffuse_transposed applies.
Eigen::MatrixXd diffuse_forward(const TransitionMatrix& P, const Eigen::VectorXd& alpha,
                                const Eigen::MatrixXd& V);

// Dense sum_j alpha_j P^j. Test and diagnostic oracle only; guarded.
Eigen::MatrixXd materialize_pstar(const TransitionMatrix& P, const Eigen::VectorXd& alpha);

inline constexpr int kMaterializeGuard = 4096;

}  // namespace detgp
