#pragma once

#include <array>
#include <cstdint>

namespace arhyg {

/// Deterministic random stream keyed by (seed, stream_id, lane).
///
/// The generator is xoshiro256++ seeded through splitmix64; the exact
/// algorithms are spelled out in docs/reproducibility.md and fixed forever:
/// identical keys give identical draw sequences on every platform. Distinct
/// stream_ids (one per Monte Carlo replication) and lanes (one per innovation
/// series inside a replication) share no state.
///
/// A stream is single-owner: hand each concurrent worker its own instance.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0,
                     std::uint64_t lane = 0);

  /// Next raw 64-bit word.
  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0, 1): (top 53 bits + 0.5) * 2^-53.
  double uniform();

  /// Standard normal via Box-Muller, cosine branch only (two uniforms per draw).
  double normal();

  /// Fresh stream for the given lane, derived from this stream's (seed, stream_id).
  RngStream lane_stream(std::uint64_t lane) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t lane() const { return lane_; }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t lane_ = 0;
};

}  // namespace arhyg
