// Copyright 2026 The ptqtc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file rng.hpp
 * Philox4x32-10 counter-based generator (Salmon et al., SC'11).
 *
 * The i-th draw of a stream is a pure function of (seed, stream, i), so a
 * shot range can be split across any number of workers without changing
 * a single draw.
 */

#include <array>
#include <cstdint>

namespace ptqtc {

class Philox4x32 {
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

/// An independent substream of uniforms addressed by a 64-bit index.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    /// Two 64-bit words for block `i`.
    [[nodiscard]] std::array<std::uint64_t, 2> bits(std::uint64_t i) const {
        const Philox4x32::Counter out = Philox4x32::block(
            {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32),
             static_cast<std::uint32_t>(stream_),
             static_cast<std::uint32_t>(stream_ >> 32)},
            key_);
        return {(std::uint64_t{out[1]} << 32) | out[0],
                (std::uint64_t{out[3]} << 32) | out[2]};
    }

    /// Uniform in the open interval (0, 1); draw i uses half of block i/2.
    [[nodiscard]] double uniform(std::uint64_t i) const {
        const auto b = bits(i >> 1);
        const std::uint64_t w = b[i & 1u];
        return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
    }

    /// 64-bit seed for a conventional engine owned by this stream.
    [[nodiscard]] std::uint64_t derived_seed() const {
        return bits(~std::uint64_t{0})[0];
    }

  private:
    Philox4x32::Key key_;
    std::uint64_t stream_;
};

} // namespace ptqtc
