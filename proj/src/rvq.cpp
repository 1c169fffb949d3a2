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

#include "rissim/rvq.hpp"

#include <stdexcept>

namespace rissim
{

RvqCodebook generate_codebook(Index dim, int bits, std::uint64_t seed)
{
    if (dim < 1)
        throw std::invalid_argument("generate_codebook: dimension must be positive");
    if (bits < 1 || bits > 24)
        throw std::invalid_argument("generate_codebook: bits must lie in [1, 24]");
    RvqCodebook cb{dim, bits, seed, CMatrix(dim, Index(1) << bits)};
    RandomSource rng(seed, std::uint64_t(dim) << 8 | std::uint64_t(bits));
    for (Index b = 0; b < cb.codewords.cols(); ++b)
        cb.codewords.col(b) = sample_unit_vector(rng, dim);
    return cb;
}

QuantizedVector quantize(const CVector &z, const RvqCodebook &cb)
{
    if (z.size() != cb.dim)
        throw std::invalid_argument("quantize: vector length does not match the codebook");
    const double nz = z.norm();
    if (!(nz > 0.0))
        throw std::invalid_argument("quantize: zero vector has no direction");
    const CVector zbar = z / nz;
    const RVector corr = (cb.codewords.adjoint() * zbar).cwiseAbs2();
    Index best = 0;
    for (Index b = 1; b < corr.size(); ++b)
        if (corr(b) > corr(best))
            best = b;
    return {best, nz * cb.codewords.col(best)};
}

} // namespace rissim
