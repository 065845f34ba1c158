// Copyright 2026 The slashsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLASH_PHILOX_H
#define SLASH_PHILOX_H

#include <array>
#include <cstdint>
#include <limits>

namespace slash {

/// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2,
/// 3", SC'11). A counter-based generator: output is a pure function of a
/// 128-bit counter and a 64-bit key, so any trial or fuzz case can be drawn
/// independently and reproducibly on any platform.
namespace philox {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

Counter block(Counter counter, Key key);

inline Key key_from_seed(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// Counter for (index, stream): words are index lo/hi, stream lo/hi.
inline Counter counter_for(std::uint64_t index, std::uint64_t stream) {
    return {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
            static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

/// Open-interval uniform (w + 0.5) / 2^32, never exactly 0 or 1.
inline double to_unit(std::uint32_t w) {
    return (static_cast<double>(w) + 0.5) * 0x1p-32;
}

}  // namespace philox

/// Sequential view of one Philox stream, usable as a UniformRandomBitGenerator.
///
/// Block b of stream s under seed k is philox::block(counter_for(b, s), k).
/// Gaussian draws use Box-Muller on 53-bit uniforms, avoiding the
/// implementation-defined std::normal_distribution.
class PhiloxStream {
   public:
    using result_type = std::uint32_t;

    PhiloxStream(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();

    /// 53-bit uniform in [0, 1).
    double uniform();
    double normal();
    /// Uniform integer in [lo, hi].
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

   private:
    philox::Key key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    philox::Counter buffer_{};
    int used_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0;
};

}  // namespace slash

#endif
