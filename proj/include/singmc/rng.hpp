#pragma once

#include <array>
#include <cstdint>

namespace singmc {

/// Philox4x32-10 block function (Salmon et al., Random123). Exposed for
/// known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Deterministic counter-based random stream.
///
/// The key is the 64-bit seed; the 128-bit counter holds the stream id in
/// its upper half and a block index in its lower half, so every
/// (seed, stream_id) pair addresses a disjoint, independent sequence. All
/// variates are produced by code in this library (no std:: distributions),
/// so sequences are identical across standard libraries.
///
/// Single-owner mutable state: move it between threads, never share it.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Fair coin flip.
    bool bit() noexcept { return (next_u64() >> 63) != 0; }

    /// Standard normal via Box-Muller (one variate per call).
    double normal() noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    unsigned used_ = 2;
};

}  // namespace singmc
