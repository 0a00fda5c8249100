// Copyright 2026 The paritysim Authors
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

#ifndef PARITYSIM_RNG_H
#define PARITYSIM_RNG_H

#include <cstdint>

namespace paritysim {

/// Counter-based random stream.
///
/// The n-th output is a pure function of (key, n), where the key is derived
/// from a user seed and a stream index (normally the trial index). Two streams
/// with different indices never share state, so trials can be run in any order
/// or on any number of threads and still see the same random numbers.
///
/// Satisfies UniformRandomBitGenerator so it can drive <random> distributions.
class RngStream {
   public:
    using result_type = uint64_t;

    RngStream(uint64_t seed, uint64_t stream_index);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return UINT64_MAX;
    }

    result_type operator()() {
        return mix(key_ + kGolden * ++counter_);
    }

    /// Fair coin. True with probability exactly 1/2.
    bool coin() {
        return ((*this)() >> 63) != 0;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Child stream; deterministic in (this stream's key, child_index).
    RngStream split(uint64_t child_index) const;

    uint64_t key() const {
        return key_;
    }
    uint64_t counter() const {
        return counter_;
    }

    static constexpr uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

   private:
    static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace paritysim

#endif
