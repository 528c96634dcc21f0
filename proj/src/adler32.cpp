/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cbkt/adler32.hpp"

namespace cbkt {

namespace {
constexpr std::uint32_t kBase = 65521;
// 5552 is the largest n with 255*n*(n+1)/2 + (n+1)*(kBase-1) < 2^32.
constexpr std::size_t kBlock = 5552;
} // namespace

std::uint32_t adler32(ByteSpan data)
{
   std::uint32_t s1 = 1;
   std::uint32_t s2 = 0;

   const std::uint8_t *p = data.data();
   std::size_t left = data.size();
   while (left > 0) {
      const std::size_t chunk = left < kBlock ? left : kBlock;
      for (std::size_t i = 0; i < chunk; ++i) {
         s1 += p[i];
         s2 += s1;
      }
      s1 %= kBase;
      s2 %= kBase;
      p += chunk;
      left -= chunk;
   }
   return (s2 << 16) | s1;
}

} // namespace cbkt
