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

#include "paritysim/rng.h"

using namespace paritysim;

RngStream::RngStream(uint64_t seed, uint64_t stream_index)
    : key_(mix(mix(seed ^ 0x6A09E667F3BCC908ULL) + kGolden * (stream_index + 1))) {
}

RngStream RngStream::split(uint64_t child_index) const {
    return RngStream(key_, child_index ^ 0xA54FF53A5F1D36F1ULL);
}
