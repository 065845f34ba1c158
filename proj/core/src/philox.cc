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

#include "slash/philox.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace slash {

namespace philox {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Counter block(Counter c, Key k) {
    for (int round = 0; round < 10; round++) {
        if (round > 0) {
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

}  // namespace philox

PhiloxStream::PhiloxStream(std::uint64_t seed, std::uint64_t stream) : key_(philox::key_from_seed(seed)), stream_(stream) {
}

PhiloxStream::result_type PhiloxStream::operator()() {
    if (used_ == 4) {
        buffer_ = philox::block(philox::counter_for(block_index_++, stream_), key_);
        used_ = 0;
    }
    return buffer_[used_++];
}

double PhiloxStream::uniform() {
    std::uint64_t hi = (*this)() >> 5;
    std::uint64_t lo = (*this)() >> 6;
    return static_cast<double>((hi << 26) | lo) * 0x1p-53;
}

double PhiloxStream::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(t);
    has_spare_normal_ = true;
    return r * std::cos(t);
}

std::uint64_t PhiloxStream::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) {
        throw std::invalid_argument("PhiloxStream::uniform_int: empty range");
    }
    std::uint64_t span = hi - lo + 1;
    if (span == 0) {
        return (static_cast<std::uint64_t>((*this)()) << 32) | (*this)();
    }
    // Rejection sampling keeps the draw exactly uniform.
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    while (true) {
        std::uint64_t v = (static_cast<std::uint64_t>((*this)()) << 32) | (*this)();
        if (v < limit) {
            return lo + v % span;
        }
    }
}

}  // namespace slash
