#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <vector>

#include "detgp/diffusion.hpp"
#include "detgp/graph.hpp"

namespace detgp {

// M learnable pseudo-textual points Z with pseudo-structural embeddings U.
// C is the polynomial-kernel bias, sigma the diagonal jitter on K_ZZ.
struct InducingPointSet {
  Eigen::MatrixXd Z;  // M x d_text
  Eigen::MatrixXd U;  // M x d_struct
  double C = 1.0;
  double sigma = 1e-3;

  int count() const { return static_cast<int>(Z.rows()); }
  int text_dim() const { return static_cast<int>(Z.cols()); }
  int struct_dim() const { return static_cast<int>(U.cols()); }
};

// First-degree polynomial kernel x'y + C.
double kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double C);

// [K]_{nm} = x_n' z_m + C. Call with (Z, Z) for K_ZZ, (X, X) for K_XX.
Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z, double C);

// Everything the backward pass needs from a structural_mean forward call.
struct StructuralMeanCache {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Z;
  Eigen::VectorXd alpha;
  TransitionMatrix P;                     // adjoint diffusion walks the forward matrix
  Eigen::MatrixXd Kxz;                    // N x M
  Eigen::LLT<Eigen::MatrixXd> factor;     // of K_ZZ + sigma I
  Eigen::MatrixXd B;                      // (K_ZZ + sigma I)^{-1} U
  std::vector<Eigen::MatrixXd> hop_terms; // (P^T)^j Kxz B for j = 0..J
};

// Posterior-mean structural embedding
//   S = sum_j alpha_j (P^T)^j  K_XZ (K_ZZ + sigma I)^{-1} U.
// The solve goes through a Cholesky factorization; a non-PD system throws
// FactorizationError naming the smallest pivot.
Eigen::MatrixXd structural_mean(const Eigen::MatrixXd& X, const TransitionMatrix& P,
                                const Eigen::VectorXd& alpha, const InducingPointSet& ind,
                                StructuralMeanCache* cache = nullptr);

struct StructuralMeanGrads {
  Eigen::MatrixXd dX;       // N x d_text
  Eigen::MatrixXd dZ;       // M x d_text
  Eigen::MatrixXd dU;       // M x d_struct
  Eigen::VectorXd dlogits;  // J + 1
};

// Exact reverse-mode gradients through the diffusion, the kernel products,
// the jittered solve, and the softmax over hop logits. Transition entries
// are constants.
StructuralMeanGrads structural_mean_backward(const Eigen::MatrixXd& grad_S,
                                             const StructuralMeanCache& cache);

// --- Diagnostics. None of these sit on the training path. ---

// Dense P*' K_XX P*  (guard N <= 4096).
Eigen::MatrixXd prior_covariance(const Eigen::MatrixXd& X, const TransitionMatrix& P,
                                 const Eigen::VectorXd& alpha, double C);

// Literal four-term expansion of one prior-covariance entry using dense
// transition powers (guard N <= 256). Independent route used to cross-check
// prior_covariance.
double covariance_expand(int n, int n_prime, const Eigen::MatrixXd& X, const TransitionMatrix& P,
                         const Eigen::VectorXd& alpha, double C);

// cov(s_n, u_m): the local kernel term plus hop-smoothed kernels. Equals
// entry (n, m) of diffuse_transposed(P, alpha, K_XZ).
double node_inducing_covariance(int n, int m, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                const TransitionMatrix& P, const Eigen::VectorXd& alpha, double C);

// P*' K_XX P* - P*' K_XZ (K_ZZ + sigma I)^{-1} K_ZX P*  (guard N <= 2048).
Eigen::MatrixXd posterior_covariance(const Eigen::MatrixXd& X, const TransitionMatrix& P,
                                     const Eigen::VectorXd& alpha, const InducingPointSet& ind);

inline constexpr int kCovarianceExpandGuard = 256;
inline constexpr int kPosteriorCovarianceGuard = 2048;

}  // namespace detgp
