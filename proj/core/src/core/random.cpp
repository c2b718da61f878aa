#include "simest/core/random.hpp"

#include <string_view>

namespace simest {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t stream_key(const SeedSpec& seed) noexcept {
  // two rounds so that neighbouring (master, id) pairs land far apart
  return splitmix64(splitmix64(seed.master_seed) ^ splitmix64(seed.stream_id + 0xD1B54A32D192ED03ULL));
}

SeedSpec SeedSpec::child(std::uint64_t id) const { return SeedSpec{stream_key(*this), id}; }

std::uint64_t label_hash(std::string_view label) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (const char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

RandomStream derive_stream(const SeedSpec& seed) { return RandomStream(stream_key(seed)); }

}  // namespace simest
