#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "halftrek/errors.hpp"
#include "halftrek/htc.hpp"
#include "halftrek/numeric.hpp"
#include "halftrek/report.hpp"
#include "halftrek/treks.hpp"
#include "oracles.hpp"

using namespace halftrek;
using namespace halftrek::testing;
using Eigen::MatrixXd;

namespace {

Params iv_params() {
    Params p;
    p.lambda = MatrixXd::Zero(3, 3);
    p.lambda(0, 1) = 1.0;
    p.lambda(1, 2) = 1.0;
    p.omega = MatrixXd::Identity(3, 3);
    p.omega(1, 2) = p.omega(2, 1) = 0.2;
    return p;
}

}  // namespace

TEST_CASE("covariance of the instrumental variable model") {
    MatrixXd expected(3, 3);
    expected << 1, 1, 1, 1, 2, 2.2, 1, 2.2, 3.4;
    MatrixXd sigma = phi(iv_graph(), iv_params());
    CHECK(relative_error(sigma, expected) < 1e-12);
    CHECK(relative_error(trek_rule_sigma(iv_graph(), iv_params()), expected) < 1e-12);
    CHECK(enumerate_treks(iv_graph(), 2, 2).size() == 5);
}

TEST_CASE("trek rule matches the matrix formula") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        MixedGraph g = shuffled(rng, random_small_graph(rng, 5, 0.35, true));
        Params p = sample_params(g, trial);
        CHECK(relative_error(trek_rule_sigma(g, p), phi(g, p)) < 1e-10);
    }
}

TEST_CASE("sampled parameters respect the model") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        MixedGraph g = random_small_graph(rng, 6, 0.3, false);
        Params p = sample_params(g, trial);
        CHECK(params_violation(g, p) == "");
        Params q = sample_params(g, trial);
        CHECK(p.lambda == q.lambda);
        CHECK(p.omega == q.omega);
        for (auto e : g.directed_edges()) {
            double x = std::abs(p.lambda(e.from, e.to));
            CHECK(x >= 0.1);
            CHECK(x <= 1.0);
        }
    }
    Params bad = iv_params();
    bad.lambda(2, 0) = 0.5;
    CHECK_FALSE(params_violation(iv_graph(), bad).empty());
}

TEST_CASE("instrumental variable coefficient is recovered as a covariance ratio") {
    MatrixXd sigma = phi(iv_graph(), iv_params());
    HtcWitness w = *htc_identifiable(iv_graph());
    MatrixXd lambda = recover_lambda(iv_graph(), sigma, w);
    CHECK(lambda(1, 2) == doctest::Approx(sigma(0, 2) / sigma(0, 1)));
    CHECK(relative_error(lambda, iv_params().lambda) < 1e-10);
}

TEST_CASE("round trip on identifiable graphs") {
    std::mt19937_64 rng(53);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 60; ++trial) {
        MixedGraph g = shuffled(rng, random_small_graph(rng, 6, 0.3, trial % 2 == 0));
        auto w = htc_identifiable(g);
        if (!w) continue;
        ++done;
        Params p = sample_params(g, trial);
        MatrixXd sigma = phi(g, p);
        MatrixXd lambda = recover_lambda(g, sigma, *w);
        CHECK(relative_error(lambda, p.lambda) < 1e-8);
        OmegaEstimate om = recover_omega(g, sigma, lambda);
        CHECK(relative_error(om.omega, p.omega) < 1e-8);
        CHECK(om.max_residual < 1e-8);
    }
    CHECK(done >= 30);
}

TEST_CASE("singular system names the failing node") {
    Params p = iv_params();
    p.lambda(0, 1) = 0.0;
    MatrixXd sigma = phi(iv_graph(), p);
    try {
        recover_lambda(iv_graph(), sigma, *htc_identifiable(iv_graph()));
        FAIL("expected nongeneric_error");
    } catch (const nongeneric_error& e) {
        CHECK(e.node() == 2);
    }
}

TEST_CASE("analytic Jacobian matches finite differences") {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 80; ++trial) {
        MixedGraph g = random_small_graph(rng, 5, 0.3, trial % 2 == 0);
        if (g.num_directed() == 0) continue;
        Params p = sample_params(g, trial);
        MatrixXd exact = jacobian(g, p);
        MatrixXd approx = jacobian_by_differences(g, p, 1e-6);
        CHECK(exact.rows() == approx.rows());
        if (exact.size() > 0) CHECK((exact - approx).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("Jacobian rank separates identifiable and over-parameterized graphs") {
    MixedGraph iv = iv_graph();
    MatrixXd j = jacobian(iv, sample_params(iv, 1));
    CHECK(numeric_rank(j, 1e-7) == iv.num_directed());
    MixedGraph over = over_edged_3();
    CHECK(numeric_rank(jacobian(over, sample_params(over, 1)), 1e-7) < over.num_directed());
    CHECK(numeric_rank(MatrixXd::Zero(2, 2), 1e-7) == 0);
}

TEST_CASE("parameters load from JSON") {
    Params p = params_from_json(R"({"lambda": [[0,1,0],[0,0,1],[0,0,0]],
                                    "omega": [[1,0,0],[0,1,0.2],[0,0.2,1]]})", 3);
    CHECK(p.lambda(0, 1) == 1.0);
    CHECK(p.omega(2, 1) == 0.2);
    CHECK_THROWS_AS(params_from_json("{\"lambda\": [[0]]}", 3), parse_error);
    CHECK_THROWS_AS(params_from_json("not json", 3), parse_error);
}
