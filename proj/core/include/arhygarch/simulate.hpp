#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "arhygarch/model.hpp"

namespace arhyg {

enum class BreakDesign { m1, m2, m3 };

/// The three intercept designs of the simulation study: constant 0.1 (m1),
/// one permanent jump 0.1 -> 0.5 (m2), two steps 0.1 -> 0.5 -> 0.3 (m3).
InterceptSpec make_design(BreakDesign design, std::size_t sample_size);

struct SimConfig {
  ModelParams params;
  InterceptSpec intercept;
  std::size_t sample_size = 3000;  // T
  std::size_t burn_in = 1000;      // m, discarded steps before t = 1
  std::size_t truncation = 3000;   // J, lag window of the variance filter
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;
};

/// One simulated path. Innovations are retained so tests can verify the
/// defining identities r_t^2 = h_t z_t^2 and
/// log x_t = xi + phi log h_t + tau(z_t) + u_t exactly.
struct SimulatedSeries {
  std::vector<double> r;  // returns
  std::vector<double> x;  // realized measures, > 0
  std::vector<double> h;  // true conditional variances
  std::vector<double> z;  // return innovations
  std::vector<double> u;  // measurement innovations

  std::size_t size() const { return r.size(); }
};

/// Generate burn_in + T steps of the recursion and discard the first burn_in.
///
/// Presample log x is omega0. Retained steps t = 1..T draw innovations from
/// lanes 0 (z) and 1 (u) indexed by t, burn-in steps from lanes 2 and 3
/// indexed backward from t = 0, so neither a change of T nor of burn_in
/// reshuffles the other region's draws. Break designs are indexed relative to
/// the retained sample; burn-in steps use the t = 1 intercept.
///
/// Throws arhyg::numeric_error if |log h_t| exceeds 50 at any step.
SimulatedSeries simulate(const SimConfig& cfg);

}  // namespace arhyg
