#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toruslab/counting.hpp"
#include "toruslab/graph.hpp"
#include "toruslab/polynomial.hpp"
#include "toruslab/torus.hpp"

namespace tlab {

using Json = nlohmann::ordered_json;

// ascending coefficients as exact "num/den" strings
Json poly_json(const RatPolynomial& p);

Json torus_spec_json(const TorusSpec& spec);

// adjacency list plus the vertex order
Json graph_json(const DivergenceGraph& g);

// sparse exterior coordinates: {"1,3": "5"} with 1-based sorted index sets
Json wedge_json(const VecQ& w, int dim, int grade);

// fixed decimal formatting shared by every CSV writer; identical inputs give
// identical bytes
std::string fmt_double(double v);

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

void write_text(const std::string& path, const std::string& text);

// "a,b,c" or geometric "a,b,...,z"
std::vector<double> parse_schedule(const std::string& text);

// "(x-1)(x-2)" style expression, or descending integer coefficients "1,-3,2"
RatPolynomial parse_poly_arg(const std::string& text);

// rows split by ';', entries by ','
Eigen::MatrixXd parse_matrix_arg(const std::string& text);

}  // namespace tlab
