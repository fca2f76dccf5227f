#include "arhygarch/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "arhygarch/errors.hpp"

namespace arhyg {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& field, std::size_t row, const std::string& col) {
  const std::string v = trim(field);
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw data_error("csv row " + std::to_string(row) + ": cannot parse column '" + col +
                     "' from \"" + v + "\"");
  }
}

long long parse_int(const std::string& field, std::size_t row, const std::string& col) {
  const std::string v = trim(field);
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw data_error("csv row " + std::to_string(row) + ": cannot parse column '" + col +
                     "' as integer from \"" + v + "\"");
  }
}

}  // namespace

std::string csv_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

SeriesPair read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw data_error("cannot open series file: " + path);
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw data_error("empty series file: " + path);
  }
  const std::vector<std::string> header = split_row(line);
  long t_col = -1, r_col = -1, x_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = trim(header[i]);
    if (name == "t") t_col = static_cast<long>(i);
    else if (name == "r") r_col = static_cast<long>(i);
    else if (name == "x") x_col = static_cast<long>(i);
  }
  if (t_col < 0 || r_col < 0 || x_col < 0) {
    throw data_error("series header must contain columns t, r and x: " + path);
  }

  SeriesPair series;
  std::size_t row = 1;  // header was row 1
  long long prev_t = 0;
  bool have_prev = false;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_row(line);
    const std::size_t needed = static_cast<std::size_t>(std::max({t_col, r_col, x_col})) + 1;
    if (fields.size() < needed) {
      throw data_error("csv row " + std::to_string(row) + ": expected at least " +
                       std::to_string(needed) + " columns, got " +
                       std::to_string(fields.size()));
    }
    const long long t = parse_int(fields[t_col], row, "t");
    if (have_prev && t <= prev_t) {
      throw data_error("csv row " + std::to_string(row) +
                       ": t must be strictly increasing");
    }
    prev_t = t;
    have_prev = true;

    const double r = parse_double(fields[r_col], row, "r");
    const double x = parse_double(fields[x_col], row, "x");
    if (!std::isfinite(r) || !std::isfinite(x)) {
      throw data_error("csv row " + std::to_string(row) + ": non-finite value");
    }
    if (!(x > 0.0)) {
      throw data_error("csv row " + std::to_string(row) +
                       ": realized measure x must be positive");
    }
    series.r.push_back(r);
    series.x.push_back(x);
  }
  if (series.r.empty()) {
    throw data_error("series file has no data rows: " + path);
  }
  return series;
}

void write_series_csv(const std::string& path, const SimulatedSeries& series,
                      bool include_h) {
  std::ofstream out(path);
  if (!out) {
    throw data_error("cannot open output file: " + path);
  }
  out << (include_h ? "t,r,x,h\n" : "t,r,x\n");
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << (i + 1) << ',' << csv_double(series.r[i]) << ',' << csv_double(series.x[i]);
    if (include_h) out << ',' << csv_double(series.h[i]);
    out << '\n';
  }
  if (!out) {
    throw data_error("failed while writing: " + path);
  }
}

}  // namespace arhyg
