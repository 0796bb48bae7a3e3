// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#pragma once

#include <array>
#include <cstdint>

namespace monostat::rng {

/// splitmix64 finalizer; used to derive independent stream keys.
std::uint64_t mix64(std::uint64_t x);

/// Key for one (seed, realization, role) triple.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t realization, std::uint64_t role);

/// Philox4x32-10 counter-based generator. The output depends only on the
/// key and the position in the stream, so streams can be split without
/// coordination.
class Philox {
public:
    explicit Philox(std::uint64_t key) : key_(key) {}

    std::uint32_t next_u32();
    /// Uniform on (0, 1), 53-bit resolution; never returns 0.
    double uniform();
    /// Standard normal via Box-Muller; normals are produced in pairs.
    double normal();

    /// The raw block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace monostat::rng
