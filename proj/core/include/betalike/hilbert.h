//
// Copyright 2026 The betalike Authors
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
//

#ifndef BETALIKE_HILBERT_H_
#define BETALIKE_HILBERT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betalike/schema.h"
#include "betalike/table.h"

namespace betalike {

// Hilbert index of up to 128 bits (dimensions * order <= 128).
__extension__ typedef unsigned __int128 HilbertKey;

inline constexpr int kDefaultCurveOrder = 16;

// Position along the d-dimensional Hilbert curve of `order` bits per axis
// visiting cell `cell` (Skilling's transpose construction; coordinates are
// taken most significant axis first). In one dimension the index is the
// coordinate itself. Throws InvalidArgument if order is outside [1, 31],
// d*order exceeds 128, or a coordinate does not fit in `order` bits.
HilbertKey HilbertIndex(std::span<const std::uint32_t> cell, int order);

// Grid cell of a record: numerical x -> floor((x-L)/(U-L) * (2^order-1) + 0.5);
// categorical leaf rank r -> same with (r / (leaves-1)).
std::vector<std::uint32_t> QuantizeQi(const Record& record, const Schema& schema,
                                      int order);

HilbertKey ComputeHilbertKey(const Record& record, const Schema& schema, int order);

std::string HilbertKeyToString(HilbertKey key);

}  // namespace betalike

#endif  // BETALIKE_HILBERT_H_
