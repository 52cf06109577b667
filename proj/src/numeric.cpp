#include "halftrek/numeric.hpp"

#include <cmath>
#include <random>

#include "halftrek/errors.hpp"

namespace halftrek {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Params sample_params(const MixedGraph& g, std::uint64_t seed) {
    const int m = g.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> magnitude(0.1, 1.0);
    std::uniform_real_distribution<double> coupling(-0.3, 0.3);
    std::bernoulli_distribution negative(0.5);

    Params p;
    p.omega = MatrixXd::Zero(m, m);
    for (auto [a, b] : g.bidirected_edges()) p.omega(a, b) = p.omega(b, a) = coupling(rng);
    for (int v = 0; v < m; ++v) p.omega(v, v) = 1.0 + p.omega.row(v).cwiseAbs().sum();

    for (int attempt = 0; attempt < 100; ++attempt) {
        p.lambda = MatrixXd::Zero(m, m);
        for (auto [u, v] : g.directed_edges()) {
            double x = magnitude(rng);
            p.lambda(u, v) = negative(rng) ? -x : x;
        }
        MatrixXd i_minus = MatrixXd::Identity(m, m) - p.lambda;
        if (std::abs(i_minus.determinant()) > 1e-6) return p;
    }
    throw nongeneric_error(-1, "could not draw Lambda with I - Lambda invertible in 100 attempts");
}

std::string params_violation(const MixedGraph& g, const Params& p) {
    const int m = g.size();
    if (p.lambda.rows() != m || p.lambda.cols() != m || p.omega.rows() != m || p.omega.cols() != m) {
        return "parameter matrices must be " + std::to_string(m) + "x" + std::to_string(m);
    }
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            if (p.lambda(u, v) != 0 && !g.has_directed(u, v)) {
                return "lambda has an entry off the directed edges at (" + std::to_string(u + 1) +
                       "," + std::to_string(v + 1) + ")";
            }
            if (u != v && p.omega(u, v) != 0 && !g.has_bidirected(u, v)) {
                return "omega has an entry off the bidirected edges at (" + std::to_string(u + 1) +
                       "," + std::to_string(v + 1) + ")";
            }
            if (p.omega(u, v) != p.omega(v, u)) return "omega is not symmetric";
        }
    }
    Eigen::LLT<MatrixXd> llt(p.omega);
    if (llt.info() != Eigen::Success) return "omega is not positive definite";
    return {};
}

MatrixXd phi(const MixedGraph& g, const Params& p) {
    const int m = g.size();
    MatrixXd i_minus = MatrixXd::Identity(m, m) - p.lambda;
    Eigen::JacobiSVD<MatrixXd> svd(i_minus);
    const auto& s = svd.singularValues();
    if (m > 0 && (s(m - 1) == 0 || s(0) / s(m - 1) > 1e12)) {
        throw nongeneric_error(-1, "I - Lambda is numerically singular");
    }
    MatrixXd inv = i_minus.inverse();
    MatrixXd sigma = inv.transpose() * p.omega * inv;
    return 0.5 * (sigma + sigma.transpose());
}

double trek_monomial(const Trek& t, const Params& p) {
    double value = t.bidirected ? p.omega(t.left.front(), t.right.front())
                                : p.omega(t.top(), t.top());
    for (std::size_t i = 1; i < t.left.size(); ++i) value *= p.lambda(t.left[i - 1], t.left[i]);
    for (std::size_t i = 1; i < t.right.size(); ++i) value *= p.lambda(t.right[i - 1], t.right[i]);
    return value;
}

MatrixXd trek_rule_sigma(const MixedGraph& g, const Params& p) {
    const int m = g.size();
    MatrixXd sigma = MatrixXd::Zero(m, m);
    for (int v = 0; v < m; ++v) {
        for (int w = 0; w < m; ++w) {
            for (const Trek& t : enumerate_treks(g, v, w)) sigma(v, w) += trek_monomial(t, p);
        }
    }
    return sigma;
}

MatrixXd recover_lambda(const MixedGraph& g, const MatrixXd& sigma, const HtcWitness& w) {
    const int m = g.size();
    MatrixXd lambda = MatrixXd::Zero(m, m);
    for (int v : w.order) {
        std::vector<int> parents = g.parents(v).to_vector();
        std::vector<int> ys = w.y[v].to_vector();
        const int n = static_cast<int>(parents.size());
        if (n == 0) continue;
        if (static_cast<int>(ys.size()) != n) {
            throw validation_error("witness set size differs from parent count at node " +
                                   std::to_string(v + 1));
        }
        const NodeSet reach = htr(g, v);
        MatrixXd a(n, n);
        VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            const int y = ys[i];
            // Row y of (I - Lambda)^T Sigma needs only column y of Lambda, known because y precedes v.
            VectorXd row = sigma.row(y).transpose();
            if (reach.contains(y)) {
                for (int u : g.parents(y)) row -= lambda(u, y) * sigma.row(u).transpose();
            }
            for (int j = 0; j < n; ++j) a(i, j) = row(parents[j]);
            b(i) = row(v);
        }
        Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        if (s(n - 1) == 0 || s(0) / s(n - 1) > max_condition_number) {
            throw nongeneric_error(v, "singular linear system at node " + std::to_string(v + 1) +
                                          " (condition number above 1e10); parameters are not generic");
        }
        VectorXd x = svd.solve(b);
        for (int j = 0; j < n; ++j) lambda(parents[j], v) = x(j);
    }
    return lambda;
}

OmegaEstimate recover_omega(const MixedGraph& g, const MatrixXd& sigma, const MatrixXd& lambda) {
    const int m = g.size();
    MatrixXd i_minus = MatrixXd::Identity(m, m) - lambda;
    OmegaEstimate out;
    out.omega = i_minus.transpose() * sigma * i_minus;
    out.omega = 0.5 * (out.omega + out.omega.transpose());
    for (int v = 0; v < m; ++v) {
        for (int w = 0; w < m; ++w) {
            if (v == w || g.has_bidirected(v, w)) continue;
            out.max_residual = std::max(out.max_residual, std::abs(out.omega(v, w)));
            out.omega(v, w) = 0;
        }
    }
    return out;
}

std::vector<std::pair<int, int>> nonsibling_pairs(const MixedGraph& g) {
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < g.size(); ++v) {
        for (int w = v + 1; w < g.size(); ++w) {
            if (!g.has_bidirected(v, w)) pairs.emplace_back(v, w);
        }
    }
    return pairs;
}

VectorXd zero_constraints(const MixedGraph& g, const MatrixXd& sigma, const MatrixXd& lambda) {
    const int m = g.size();
    MatrixXd i_minus = MatrixXd::Identity(m, m) - lambda;
    MatrixXd full = i_minus.transpose() * sigma * i_minus;
    auto pairs = nonsibling_pairs(g);
    VectorXd out(static_cast<Eigen::Index>(pairs.size()));
    for (std::size_t r = 0; r < pairs.size(); ++r) out(r) = full(pairs[r].first, pairs[r].second);
    return out;
}

MatrixXd jacobian(const MixedGraph& g, const Params& p) {
    const int m = g.size();
    MatrixXd sigma = phi(g, p);
    MatrixXd left = (MatrixXd::Identity(m, m) - p.lambda).transpose() * sigma;
    auto pairs = nonsibling_pairs(g);
    const auto& edges = g.directed_edges();
    MatrixXd j = MatrixXd::Zero(static_cast<Eigen::Index>(pairs.size()),
                                static_cast<Eigen::Index>(edges.size()));
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [v, w] = pairs[r];
        for (std::size_t c = 0; c < edges.size(); ++c) {
            auto [u, x] = edges[c];
            if (x == v) j(r, c) = -left(w, u);
            if (x == w) j(r, c) = -left(v, u);
        }
    }
    return j;
}

int numeric_rank(const MatrixXd& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s(0) == 0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tol * s(0)) ++rank;
    }
    return rank;
}

double relative_error(const MatrixXd& estimate, const MatrixXd& truth) {
    double scale = std::max(1.0, truth.cwiseAbs().maxCoeff());
    return (estimate - truth).cwiseAbs().maxCoeff() / scale;
}

}  // namespace halftrek
