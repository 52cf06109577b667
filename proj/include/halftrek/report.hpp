#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "halftrek/gcrit.hpp"
#include "halftrek/htc.hpp"
#include "halftrek/numeric.hpp"

namespace halftrek {

// {"verdict", "solved_nodes", "witness": {"order", "Y": {"v": [...]}} | null}, 1-based.
nlohmann::json classification_json(const Classification& c);
nlohmann::json decomposition_json(const DecompositionReport& r);
nlohmann::json gc_json(const GcResult& r);

// Row-major CSV, 17 significant digits.
std::string matrix_csv(const Eigen::MatrixXd& m);

// {"lambda": [[...]], "omega": [[...]]} with m x m arrays. Throws parse_error.
Params params_from_json(std::string_view text, int m);

}  // namespace halftrek
