#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "halftrek/graph.hpp"
#include "halftrek/htc.hpp"
#include "halftrek/treks.hpp"

namespace halftrek {

/// Model parameters. lambda(u, v) is the coefficient of u -> v; omega is the
/// error covariance, supported on B and the diagonal.
struct Params {
    Eigen::MatrixXd lambda;
    Eigen::MatrixXd omega;
};

// Draws lambda on D uniformly from [-1,-0.1] ∪ [0.1,1], omega off-diagonals on B
// uniformly from [-0.3,0.3], and sets each omega diagonal to 1 + sum of the
// row's off-diagonal magnitudes. Deterministic in seed.
Params sample_params(const MixedGraph& g, std::uint64_t seed);

// Support, symmetry and positive-definiteness checks; empty string when valid.
std::string params_violation(const MixedGraph& g, const Params& p);

// Sigma = (I - Lambda)^{-T} Omega (I - Lambda)^{-1}. Throws nongeneric_error
// if I - Lambda is numerically singular.
Eigen::MatrixXd phi(const MixedGraph& g, const Params& p);

// Value of one trek monomial.
double trek_monomial(const Trek& t, const Params& p);

// Covariance by summing trek monomials over all treks (acyclic graphs only).
Eigen::MatrixXd trek_rule_sigma(const MixedGraph& g, const Params& p);

inline constexpr double max_condition_number = 1e10;

// Recovers Lambda column by column along the witness order. Throws
// nongeneric_error naming the node whose system is singular.
Eigen::MatrixXd recover_lambda(const MixedGraph& g, const Eigen::MatrixXd& sigma,
                               const HtcWitness& w);

struct OmegaEstimate {
    Eigen::MatrixXd omega;     // entries off B ∪ diagonal are zeroed
    double max_residual = 0;   // largest |entry| that should vanish
};

OmegaEstimate recover_omega(const MixedGraph& g, const Eigen::MatrixXd& sigma,
                            const Eigen::MatrixXd& lambda);

// Unordered nonsibling pairs {v, w}, v < w: the rows of the Jacobian.
std::vector<std::pair<int, int>> nonsibling_pairs(const MixedGraph& g);

// Values [(I-Lambda)^T Sigma (I-Lambda)]_{vw} over the nonsibling pairs.
Eigen::VectorXd zero_constraints(const MixedGraph& g, const Eigen::MatrixXd& sigma,
                                 const Eigen::MatrixXd& lambda);

// Jacobian of zero_constraints with respect to the entries of Lambda on D
// (columns follow g.directed_edges()), evaluated at Sigma = phi(g, p).
Eigen::MatrixXd jacobian(const MixedGraph& g, const Params& p);

// Singular values above tol times the largest one.
int numeric_rank(const Eigen::MatrixXd& m, double tol);

// max |a - b| / max(1, max |b|).
double relative_error(const Eigen::MatrixXd& estimate, const Eigen::MatrixXd& truth);

}  // namespace halftrek
