/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cbkt/precondition.hpp"

#include "cbkt/errors.hpp"

#include <algorithm>
#include <cstring>

namespace cbkt {

Bytes shuffle(ByteSpan input, std::size_t stride)
{
   if (stride <= 1)
      return Bytes(input.begin(), input.end());

   const std::size_t n = input.size() / stride;
   Bytes out(input.size());
   for (std::size_t j = 0; j < stride; ++j)
      for (std::size_t i = 0; i < n; ++i)
         out[j * n + i] = input[i * stride + j];
   std::copy(input.begin() + n * stride, input.end(), out.begin() + n * stride);
   return out;
}

Bytes unshuffle(ByteSpan input, std::size_t stride)
{
   if (stride <= 1)
      return Bytes(input.begin(), input.end());

   const std::size_t n = input.size() / stride;
   Bytes out(input.size());
   for (std::size_t j = 0; j < stride; ++j)
      for (std::size_t i = 0; i < n; ++i)
         out[i * stride + j] = input[j * n + i];
   std::copy(input.begin() + n * stride, input.end(), out.begin() + n * stride);
   return out;
}

std::size_t bitshuffled_size(std::size_t len, std::size_t stride)
{
   if (stride == 0)
      stride = 1;
   const std::size_t n = len / stride;
   const std::size_t plane_bytes = (n + 7) / 8;
   return 8 * stride * plane_bytes + (len - n * stride);
}

Bytes bitshuffle(ByteSpan input, std::size_t stride)
{
   if (stride == 0)
      stride = 1;
   const std::size_t n = input.size() / stride;       // complete elements
   const std::size_t b = 8 * stride;                  // bits per element
   const std::size_t plane_bytes = (n + 7) / 8;
   const std::size_t remainder = input.size() - n * stride;

   Bytes out(b * plane_bytes + remainder, 0);
   for (std::size_t i = 0; i < n; ++i) {
      const std::uint8_t *elem = input.data() + i * stride;
      const std::size_t out_byte = i >> 3;
      const std::uint8_t out_bit = static_cast<std::uint8_t>(0x80u >> (i & 7));
      for (std::size_t j = 0; j < b; ++j) {
         if (elem[j >> 3] & (0x80u >> (j & 7)))
            out[j * plane_bytes + out_byte] |= out_bit;
      }
   }
   std::memcpy(out.data() + b * plane_bytes, input.data() + n * stride, remainder);
   return out;
}

Bytes bitunshuffle(ByteSpan input, std::size_t stride, std::size_t original_len)
{
   if (stride == 0)
      stride = 1;
   const std::size_t n = original_len / stride;
   const std::size_t b = 8 * stride;
   const std::size_t plane_bytes = (n + 7) / 8;
   const std::size_t remainder = original_len - n * stride;

   if (input.size() != b * plane_bytes + remainder)
      raise(Errc::LengthMismatch, "bitshuffled buffer of " + std::to_string(input.size()) +
                                     " bytes cannot restore " +
                                     std::to_string(original_len) + " original bytes");

   Bytes out(original_len, 0);
   for (std::size_t i = 0; i < n; ++i) {
      std::uint8_t *elem = out.data() + i * stride;
      const std::size_t in_byte = i >> 3;
      const std::uint8_t in_bit = static_cast<std::uint8_t>(0x80u >> (i & 7));
      for (std::size_t j = 0; j < b; ++j) {
         if (input[j * plane_bytes + in_byte] & in_bit)
            elem[j >> 3] |= 0x80u >> (j & 7);
      }
   }
   std::memcpy(out.data() + n * stride, input.data() + b * plane_bytes, remainder);
   return out;
}

Bytes apply_precond(const Preconditioner &p, ByteSpan input)
{
   switch (p.kind) {
   case PrecondKind::kNone: return Bytes(input.begin(), input.end());
   case PrecondKind::kShuffle: return shuffle(input, p.stride);
   case PrecondKind::kBitShuffle: return bitshuffle(input, p.stride);
   }
   raise(Errc::UnknownPreconditioner, "tag " + std::to_string(static_cast<int>(p.kind)));
}

Bytes invert_precond(const Preconditioner &p, ByteSpan input, std::size_t original_len)
{
   switch (p.kind) {
   case PrecondKind::kNone: return Bytes(input.begin(), input.end());
   case PrecondKind::kShuffle: return unshuffle(input, p.stride);
   case PrecondKind::kBitShuffle: return bitunshuffle(input, p.stride, original_len);
   }
   raise(Errc::UnknownPreconditioner, "tag " + std::to_string(static_cast<int>(p.kind)));
}

} // namespace cbkt
