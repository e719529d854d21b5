#pragma once

#include <array>
#include <cstdint>

namespace fracheat {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function.
PhiloxBlock philox4x32(PhiloxBlock counter, PhiloxKey key);

/// Counter-based random stream. The key is the 64-bit master seed and the
/// counter carries (position, stream index), so a stream's output depends
/// only on (seed, stream) and not on how other streams were consumed.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0,1) with 53 random bits.
  double uniform();
  /// Exponential(1).
  double exponential();

  /// Independent child stream, reproducible from (seed, stream, k).
  RngStream split(std::uint64_t k) const;

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  PhiloxBlock buffer_{};
  int used_ = 4;
};

}  // namespace fracheat
