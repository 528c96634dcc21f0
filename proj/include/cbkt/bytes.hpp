/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_BYTES_HPP
#define CBKT_BYTES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cbkt {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

// Big-endian integer encoding. All multi-byte integers in basket payloads
// and on-disk structures use this.
inline void append_be(Bytes &out, std::uint64_t value, std::size_t width) {
   for (std::size_t k = 0; k < width; ++k)
      out.push_back(static_cast<std::uint8_t>(value >> (8 * (width - 1 - k))));
}

inline void put_be32(Bytes &out, std::uint32_t value) { append_be(out, value, 4); }
inline void put_be64(Bytes &out, std::uint64_t value) { append_be(out, value, 8); }

inline std::uint64_t read_be(ByteSpan in, std::size_t pos, std::size_t width) {
   std::uint64_t value = 0;
   for (std::size_t k = 0; k < width; ++k)
      value = (value << 8) | in[pos + k];
   return value;
}

inline std::uint16_t read_be16(ByteSpan in, std::size_t pos) {
   return static_cast<std::uint16_t>(read_be(in, pos, 2));
}
inline std::uint32_t read_be32(ByteSpan in, std::size_t pos) {
   return static_cast<std::uint32_t>(read_be(in, pos, 4));
}
inline std::uint64_t read_be64(ByteSpan in, std::size_t pos) {
   return read_be(in, pos, 8);
}

} // namespace cbkt

#endif // CBKT_BYTES_HPP
