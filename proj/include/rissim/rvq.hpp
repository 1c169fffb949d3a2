// SPDX-License-Identifier: Apache-2.0
//
// rissim - simulator for RIS-assisted mmWave FDD downlink
// Copyright (C) 2026 rissim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "rissim/numerics.hpp"

namespace rissim
{

// Random vector quantization codebook: 2^bits unit-norm codewords drawn from a seeded
// isotropic distribution. Codeword b is column b of `codewords`.
struct RvqCodebook
{
    Index dim = 0;
    int bits = 0;
    std::uint64_t seed = 0;
    CMatrix codewords; // dim x 2^bits
};

RvqCodebook generate_codebook(Index dim, int bits, std::uint64_t seed);

struct QuantizedVector
{
    Index index;           // argmax_b |c_b^H z/|z||^2, lowest index on ties
    CVector reconstructed; // |z| c_index (the magnitude is assumed fed back without error)
};

QuantizedVector quantize(const CVector &z, const RvqCodebook &cb);

} // namespace rissim
