/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_ADLER32_HPP
#define CBKT_ADLER32_HPP

#include "cbkt/bytes.hpp"

#include <cstdint>

namespace cbkt {

/// adler32 over `data`: two running sums s1 (init 1) and s2 (init 0) modulo
/// 65521, returned as s2 * 65536 + s1. Input is consumed in blocks of at
/// most 5552 bytes between modulo reductions, the largest block that cannot
/// overflow 32-bit accumulators. adler32 of empty input is 1.
std::uint32_t adler32(ByteSpan data);

} // namespace cbkt

#endif // CBKT_ADLER32_HPP
