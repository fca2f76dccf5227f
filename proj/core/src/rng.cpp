#include "arhygarch/rng.hpp"

#include <cmath>
#include <numbers>

namespace arhyg {

namespace {

// splitmix64: state advances by the golden-ratio increment, output is the
// mixed state. Used only to key xoshiro256++.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t lane)
    : seed_(seed), stream_id_(stream_id), lane_(lane) {
  // Key schedule: fold stream_id and lane into the seed through splitmix64 so
  // that nearby keys land far apart in state space.
  std::uint64_t k = seed;
  std::uint64_t mixed = splitmix64(k);
  k = mixed ^ (stream_id * 0x9e3779b97f4a7c15ULL + 0x1ULL);
  mixed = splitmix64(k);
  k = mixed ^ (lane * 0xbf58476d1ce4e5b9ULL + 0x2ULL);
  for (auto& word : state_) {
    word = splitmix64(k);
  }
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
    state_[0] = 1;  // xoshiro must not start all-zero
  }
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream RngStream::lane_stream(std::uint64_t lane) const {
  return RngStream(seed_, stream_id_, lane);
}

}  // namespace arhyg
