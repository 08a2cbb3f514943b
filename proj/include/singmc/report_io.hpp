#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>

#include "singmc/estimate.hpp"
#include "singmc/oracle.hpp"
#include "singmc/parametric.hpp"

namespace singmc {

/// Shortest decimal text that reads back to the same double. Non-finite
/// values print as nan, inf, -inf.
std::string format_double(double x);

void write_json(std::ostream& out, const EstimateReport& r);
void write_csv(std::ostream& out, const EstimateReport& r);

void write_json(std::ostream& out, const ParamBandReport& r, const ThetaGrid& grid,
                bool with_covariance);
/// One row per grid point: theta columns, q_hat, lower, upper.
void write_csv(std::ostream& out, const ParamBandReport& r, const ThetaGrid& grid);

void write_json(std::ostream& out, const QuadResult& r);
void write_csv(std::ostream& out, const QuadResult& r);

}  // namespace singmc
