#pragma once

#include <array>
#include <cstdint>

namespace hre {

// Philox4x32-10 block function (Salmon et al. counter-based generator).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// Stream of 64-bit words at counter (stream, 0), (stream, 1), ... under a key.
// Position is a pure function of (key, stream, draws so far).
class CounterStream {
 public:
  CounterStream(std::uint64_t key, std::uint64_t stream) : key_(key), stream_(stream) {}
  std::uint64_t next_u64();
  // Uniform on (0, 1], 53-bit resolution.
  double next_uniform();

 private:
  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int used_ = 4;
};

}  // namespace hre
