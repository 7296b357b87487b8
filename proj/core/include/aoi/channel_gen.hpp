#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>

#include "aoi/types.hpp"

namespace aoi {

/// SplitMix64 (Steele, Lea & Flood 2014). Chosen for its published constants
/// and single 64-bit word of state, so traces can be regenerated bit-for-bit
/// from any language:
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(next_unit() * static_cast<double>(bound));
  }

 private:
  std::uint64_t state_;
};

/// Two-user construction: per period of `delta` slots user 1 alone is Good at
/// slot 1, both at delta/2 and delta, user 2 alone at delta/2 + 1, all Bad
/// elsewhere. `delta` must be even and >= 4.
ChannelTrace gen_adversarial_2user(std::size_t delta, std::size_t periods);

/// Three-user construction with 15 Good-set slots per period. `delta` must be
/// a multiple of 6 and >= 24; smaller multiples make slot indices collide.
ChannelTrace gen_adversarial_3user(std::size_t delta, std::size_t periods);

/// Each state Good independently with probability p. States are drawn slot by
/// slot, users in index order within a slot: Good iff next_unit() < p.
ChannelTrace gen_iid(double p, std::size_t num_users, std::size_t horizon, std::uint64_t seed);

struct Adversarial2 {
  std::size_t delta = 0;
  std::size_t periods = 1;
};
struct Adversarial3 {
  std::size_t delta = 0;
  std::size_t periods = 1;
};
struct Iid {
  double p = 0.5;
  std::size_t num_users = 1;
  std::size_t horizon = 1;
  std::uint64_t seed = 0;
};
struct FromFile {
  std::filesystem::path path;
};

using GenSpec = std::variant<Adversarial2, Adversarial3, Iid, FromFile>;

ChannelTrace generate(const GenSpec& spec);

}  // namespace aoi
