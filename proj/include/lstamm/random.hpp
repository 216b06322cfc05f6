#pragma once

#include <cstdint>

namespace lstamm {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based random stream. Draw k of stream (seed, stream_id) depends
/// only on (seed, stream_id, k), so per-path streams give identical results
/// regardless of how paths are scheduled across threads.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on (0, 1).
    double next_uniform() noexcept;
    /// Standard normal (Box-Muller).
    double next_normal() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lstamm
