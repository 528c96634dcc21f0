/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_PRECONDITION_HPP
#define CBKT_PRECONDITION_HPP

#include "cbkt/bytes.hpp"

#include <cstdint>

namespace cbkt {

enum class PrecondKind : std::uint8_t {
   kNone = 0,
   kShuffle = 1,
   kBitShuffle = 2,
};

/// Invertible byte/bit rearrangement applied to a payload before
/// compression. When attached to a branch, the stride equals the element
/// width of the region being transformed (4 for offset regions).
struct Preconditioner {
   PrecondKind kind = PrecondKind::kNone;
   std::uint8_t stride = 1;

   static Preconditioner none() { return {PrecondKind::kNone, 0}; }
   static Preconditioner shuffle(std::uint8_t stride) { return {PrecondKind::kShuffle, stride}; }
   static Preconditioner bitshuffle(std::uint8_t stride) { return {PrecondKind::kBitShuffle, stride}; }

   /// Same transform kind rebound to a region's element width.
   Preconditioner for_width(std::uint8_t width) const
   {
      return kind == PrecondKind::kNone ? none() : Preconditioner{kind, width};
   }

   bool operator==(const Preconditioner &) const = default;
};

/// Byte transpose: the first floor(len/stride)*stride bytes are read as an
/// n x stride matrix and written column-first, so bytes of equal
/// significance end up adjacent. The trailing len mod stride bytes pass
/// through unchanged. Length-preserving; stride 1 is the identity.
Bytes shuffle(ByteSpan input, std::size_t stride);

/// Exact inverse of shuffle under the same stride.
Bytes unshuffle(ByteSpan input, std::size_t stride);

/// Bit transpose: each of the 8*stride bit positions of the n complete
/// elements is collected into its own bit plane (MSB of byte 0 first),
/// planes concatenated in bit order, trailing remainder bytes unchanged.
/// When n is not a multiple of 8 every plane is zero-padded to a whole
/// byte, so the output can be longer than the input; bitshuffled_size gives
/// the exact output length.
Bytes bitshuffle(ByteSpan input, std::size_t stride);

/// Exact inverse of bitshuffle. The original (pre-transform) length must be
/// supplied: plane padding erases it from the transformed buffer, and the
/// block header carries it across compression.
Bytes bitunshuffle(ByteSpan input, std::size_t stride, std::size_t original_len);

/// Output length of bitshuffle for an input of `len` bytes.
std::size_t bitshuffled_size(std::size_t len, std::size_t stride);

/// Applies / inverts a preconditioner. kNone passes the bytes through.
Bytes apply_precond(const Preconditioner &p, ByteSpan input);
Bytes invert_precond(const Preconditioner &p, ByteSpan input, std::size_t original_len);

} // namespace cbkt

#endif // CBKT_PRECONDITION_HPP
