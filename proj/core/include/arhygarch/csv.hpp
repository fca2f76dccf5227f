#pragma once

#include <string>

#include "arhygarch/inference.hpp"
#include "arhygarch/simulate.hpp"

namespace arhyg {

/// Reads a series CSV whose header contains columns t, r and x (extra columns
/// are ignored). t must be strictly increasing integers; x must be positive
/// and everything finite. Throws arhyg::data_error citing the offending row.
SeriesPair read_series_csv(const std::string& path);

/// Writes t,r,x[,h] with 17 significant digits so doubles round-trip exactly.
void write_series_csv(const std::string& path, const SimulatedSeries& series,
                      bool include_h);

/// Formats one double with 17 significant digits.
std::string csv_double(double v);

}  // namespace arhyg
