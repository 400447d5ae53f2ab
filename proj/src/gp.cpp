#include "detgp/gp.hpp"

#include <Eigen/Eigenvalues>

#include "detgp/error.hpp"

namespace detgp {

double kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double C) {
  if (x.size() != y.size()) {
    throw DimensionError("kernel: arguments have sizes " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
  return x.dot(y) + C;
}

Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z, double C) {
  if (X.cols() != Z.cols()) {
    throw DimensionError("cross_kernel: feature dims " + std::to_string(X.cols()) + " vs " +
                         std::to_string(Z.cols()));
  }
  return (X * Z.transpose()).array() + C;
}

namespace {

// Factor K_ZZ + sigma I, or throw with the smallest pivot for the message.
Eigen::LLT<Eigen::MatrixXd> factor_inducing_gram(const Eigen::MatrixXd& Z, double C, double sigma) {
  const int m = static_cast<int>(Z.rows());
  Eigen::MatrixXd A = cross_kernel(Z, Z, C);
  A.diagonal().array() += sigma;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    const double smallest =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A, Eigen::EigenvaluesOnly)
            .eigenvalues()
            .minCoeff();
    throw FactorizationError("inducing gram matrix (M = " + std::to_string(m) +
                             ") is not positive definite; smallest pivot " +
                             std::to_string(smallest));
  }
  return llt;
}

}  // namespace

Eigen::MatrixXd structural_mean(const Eigen::MatrixXd& X, const TransitionMatrix& P,
                                const Eigen::VectorXd& alpha, const InducingPointSet& ind,
                                StructuralMeanCache* cache) {
  if (X.cols() != ind.Z.cols()) {
    throw DimensionError("structural_mean: text dims " + std::to_string(X.cols()) + " vs " +
                         std::to_string(ind.Z.cols()));
  }
  auto llt = factor_inducing_gram(ind.Z, ind.C, ind.sigma);
  const Eigen::MatrixXd Kxz = cross_kernel(X, ind.Z, ind.C);
  const Eigen::MatrixXd B = llt.solve(ind.U);
  const Eigen::MatrixXd G = Kxz * B;
  std::vector<Eigen::MatrixXd> hop_terms;
  Eigen::MatrixXd S = diffuse_transposed(P, alpha, G, cache ? &hop_terms : nullptr);
  if (cache) {
    cache->X = X;
    cache->Z = ind.Z;
    cache->alpha = alpha;
    cache->P = P;
    cache->Kxz = Kxz;
    cache->factor = std::move(llt);
    cache->B = B;
    cache->hop_terms = std::move(hop_terms);
  }
  return S;
}

StructuralMeanGrads structural_mean_backward(const Eigen::MatrixXd& grad_S,
                                             const StructuralMeanCache& cache) {
  if (cache.hop_terms.empty()) {
    throw InvalidArgument("structural_mean_backward: cache missing forward intermediates");
  }
  const int hops = static_cast<int>(cache.alpha.size()) - 1;
  if (grad_S.rows() != cache.hop_terms[0].rows() || grad_S.cols() != cache.hop_terms[0].cols()) {
    throw DimensionError("structural_mean_backward: grad_S shape mismatch");
  }

  StructuralMeanGrads g;

  // d/d alpha_j = <grad_S, (P^T)^j G>, then the softmax Jacobian.
  Eigen::VectorXd dalpha(hops + 1);
  for (int j = 0; j <= hops; ++j) {
    dalpha[j] = (grad_S.array() * cache.hop_terms[j].array()).sum();
  }
  const double mixed = cache.alpha.dot(dalpha);
  g.dlogits = cache.alpha.array() * (dalpha.array() - mixed);

  // S = sum_j alpha_j (P^T)^j G  =>  dG = sum_j alpha_j P^j grad_S.
  // hop_terms[0] is G itself, so the adjoint walks the forward matrix.
  Eigen::MatrixXd dG = cache.alpha[0] * grad_S;
  {
    Eigen::MatrixXd walk = grad_S;
    for (int j = 1; j <= hops; ++j) {
      // structural_mean always runs on a TransitionMatrix; reconstructing the
      // forward walk from the stored transpose keeps the cache self-contained.
      walk = transpose_walk(cache, walk);
      dG += cache.alpha[j] * walk;
    }
  }

  // G = Kxz B with B = A^{-1} U.
  const Eigen::MatrixXd dKxz = dG * cache.B.transpose();
  const Eigen::MatrixXd dB = cache.Kxz.transpose() * dG;
  g.dU = cache.factor.solve(dB);
  const Eigen::MatrixXd dA = -g.dU * cache.B.transpose();

  // Kxz = X Z' + C and A = Z Z' + (C + sigma) I.
  g.dX = dKxz * cache.Z;
  g.dZ = dKxz.transpose() * cache.X + (dA + dA.transpose()) * cache.Z;
  return g;
}

Eigen::MatrixXd prior_covariance(const Eigen::MatrixXd& X, const TransitionMatrix& P,
                                 const Eigen::VectorXd& alpha, double C) {
  const Eigen::MatrixXd pstar = materialize_pstar(P, alpha);
  const Eigen::MatrixXd Kxx = cross_kernel(X, X, C);
  return pstar.transpose() * Kxx * pstar;
}

double covariance_expand(int n, int n_prime, const Eigen::MatrixXd& X, const TransitionMatrix& P,
                         const Eigen::VectorXd& alpha, double C) {
  const int N = P.num_nodes();
  if (N > kCovarianceExpandGuard) {
    throw InvalidArgument("covariance_expand: N = " + std::to_string(N) + " exceeds guard " +
                          std::to_string(kCovarianceExpandGuard));
  }
  if (n < 0 || n >= N || n_prime < 0 || n_prime >= N) {
    throw InvalidArgument("covariance_expand: node index out of range");
  }
  const int hops = static_cast<int>(alpha.size()) - 1;

  // Dense powers P^1..P^J, built independently of the diffusion code path.
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(N, N);
  for (int r = 0; r < N; ++r) {
    for (std::int64_t k = P.forward.row_ptr[r]; k < P.forward.row_ptr[r + 1]; ++k) {
      dense(r, P.forward.col_idx[k]) = P.forward.values[k];
    }
  }
  std::vector<Eigen::MatrixXd> powers;
  powers.reserve(hops + 1);
  powers.push_back(Eigen::MatrixXd::Identity(N, N));
  for (int j = 1; j <= hops; ++j) powers.push_back(powers.back() * dense);

  auto k_of = [&](int a, int b) { return X.row(a).dot(X.row(b)) + C; };

  // Entry (n, n') of P*' K P*: since column n of P* weights transitions into
  // n, every hop factor below reads P^j_{r n}.
  double term_local = alpha[0] * alpha[0] * k_of(n, n_prime);

  double term_into_nprime = 0.0;  // x_n against multi-hop mass arriving at n'
  for (int j = 1; j <= hops; ++j) {
    for (int r = 0; r < N; ++r) {
      term_into_nprime += alpha[0] * alpha[j] * powers[j](r, n_prime) * k_of(n, r);
    }
  }

  double term_into_n = 0.0;  // x_{n'} against multi-hop mass arriving at n
  for (int j = 1; j <= hops; ++j) {
    for (int r = 0; r < N; ++r) {
      term_into_n += alpha[0] * alpha[j] * powers[j](r, n) * k_of(r, n_prime);
    }
  }

  double term_pairs = 0.0;  // hop-pair double sum over all node pairs
  for (int j = 1; j <= hops; ++j) {
    for (int jp = 1; jp <= hops; ++jp) {
      for (int r = 0; r < N; ++r) {
        if (powers[j](r, n) == 0.0) continue;
        for (int rp = 0; rp < N; ++rp) {
          term_pairs += alpha[j] * alpha[jp] * powers[j](r, n) * powers[jp](rp, n_prime) * k_of(r, rp);
        }
      }
    }
  }

  return term_local + term_into_nprime + term_into_n + term_pairs;
}

double node_inducing_covariance(int n, int m, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                const TransitionMatrix& P, const Eigen::VectorXd& alpha, double C) {
  const int N = P.num_nodes();
  if (n < 0 || n >= N) throw InvalidArgument("node_inducing_covariance: node index out of range");
  if (m < 0 || m >= Z.rows()) {
    throw InvalidArgument("node_inducing_covariance: inducing index out of range");
  }
  const int hops = static_cast<int>(alpha.size()) - 1;
  const Eigen::VectorXd z = Z.row(m);

  // Walk the transposed matrix one hop at a time: walk[r] = P^j_{r n}.
  Eigen::VectorXd walk = Eigen::VectorXd::Zero(N);
  walk[n] = 1.0;
  double cov = alpha[0] * (X.row(n).dot(z) + C);
  for (int j = 1; j <= hops; ++j) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(N);
    for (int r = 0; r < N; ++r) {
      for (std::int64_t k = P.forward.row_ptr[r]; k < P.forward.row_ptr[r + 1]; ++k) {
        next[r] += P.forward.values[k] * walk[P.forward.col_idx[k]];
      }
    }
    walk = next;
    double smoothed = 0.0;
    for (int r = 0; r < N; ++r) {
      if (walk[r] != 0.0) smoothed += walk[r] * (X.row(r).dot(z) + C);
    }
    cov += alpha[j] * smoothed;
  }
  return cov;
}

Eigen::MatrixXd posterior_covariance(const Eigen::MatrixXd& X, const TransitionMatrix& P,
                                     const Eigen::VectorXd& alpha, const InducingPointSet& ind) {
  const int N = P.num_nodes();
  if (N > kPosteriorCovarianceGuard) {
    throw InvalidArgument("posterior_covariance: N = " + std::to_string(N) + " exceeds guard " +
                          std::to_string(kPosteriorCovarianceGuard));
  }
  auto llt = factor_inducing_gram(ind.Z, ind.C, ind.sigma);
  const Eigen::MatrixXd pstar = materialize_pstar(P, alpha);
  const Eigen::MatrixXd Kxx = cross_kernel(X, X, ind.C);
  const Eigen::MatrixXd Kxz = cross_kernel(X, ind.Z, ind.C);
  const Eigen::MatrixXd smoothed_kxz = pstar.transpose() * Kxz;
  return pstar.transpose() * Kxx * pstar - smoothed_kxz * llt.solve(smoothed_kxz.transpose());
}

}  // namespace detgp
