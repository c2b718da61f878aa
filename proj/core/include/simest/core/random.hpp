#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace simest {

/// Identifies one innovation stream. Identical specs give bit-identical
/// streams; distinct stream ids under one master seed give independent ones.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// Nested stream: the parent's key becomes the master seed of the child.
  /// Used for (replication, estimator, draw, attempt) hierarchies.
  SeedSpec child(std::uint64_t id) const;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Mixes (master_seed, stream_id) into a 64-bit stream key.
std::uint64_t stream_key(const SeedSpec& seed) noexcept;

/// Stable 64-bit hash of a label; lets streams be keyed by estimator name
/// instead of list position.
std::uint64_t label_hash(std::string_view label) noexcept;

/// A deterministic random stream. Normals come from a ziggurat sampler.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : engine_(key) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t bits() { return engine_(); }

  void fill_normal(std::span<double> out) {
    for (double& v : out) v = normal_(engine_);
  }

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
  boost::random::uniform_01<double> uniform_;
};

RandomStream derive_stream(const SeedSpec& seed);

}  // namespace simest
