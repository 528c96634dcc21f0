/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_CODECS_HPP
#define CBKT_CODECS_HPP

#include "cbkt/bytes.hpp"
#include "cbkt/precondition.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cbkt {

enum class CodecId : std::uint8_t {
   kStore = 0,
   kDeflate = 1,
   kLZ4 = 2,
   kLZ4HC = 3,
   kZstd = 4,
};

const char *to_string(CodecId codec);
CodecId codec_from_string(const std::string &name);

const char *to_string(PrecondKind kind);
PrecondKind precond_from_string(const std::string &name);

/// Preset dictionary: trained bytes preloading the compressor's history
/// window. id is the nonzero reference key used in block headers and the
/// container dictionary section.
struct Dictionary {
   std::uint32_t id = 1;
   Bytes bytes;
   CodecId trained_for = CodecId::kZstd;
};

/// Read-only dictionary lookup used when decoding blocks.
class DictionaryTable {
public:
   void add(std::shared_ptr<const Dictionary> dict);
   const Dictionary *find(std::uint32_t id) const;
   std::size_t size() const { return fById.size(); }
   const std::map<std::uint32_t, std::shared_ptr<const Dictionary>> &entries() const { return fById; }

private:
   std::map<std::uint32_t, std::shared_ptr<const Dictionary>> fById;
};

/// Codec, user-facing level 0-9, preconditioner and optional preset
/// dictionary. Level 0 disables compression entirely (the block is
/// stored). Dictionaries are accepted by the deflate, LZ4 and ZSTD
/// backends only.
struct CompressionSettings {
   CodecId codec = CodecId::kZstd;
   int level = 1;
   Preconditioner precond = Preconditioner::none();
   std::shared_ptr<const Dictionary> dictionary;

   void validate() const;
};

/// Returned by map_level for combinations that bypass the backend entirely.
inline constexpr int kStoreSentinel = -1;

/// Maps the user-facing 0-9 level onto the backend parameter:
///   deflate  -> zlib level, identity on 1..9
///   lz4      -> acceleration 9..1 (level 1 is fastest)
///   lz4hc    -> HC clevel, 1..9 stretched linearly over 3..12
///   zstd     -> round(level*19/9), at least 1
/// Level 0 yields kStoreSentinel for every codec.
int map_level(CodecId codec, int level);

/// Self-describing compressed unit. The 20-byte header pins everything
/// needed to decode: codec, level, preconditioner and stride, dictionary
/// id (0 = none), original and compressed sizes, and the adler32 of the
/// original, un-preconditioned payload. All multi-byte fields big-endian.
struct BlockHeader {
   CodecId codec = CodecId::kStore;
   std::uint8_t level = 0;
   PrecondKind precond = PrecondKind::kNone;
   std::uint8_t stride = 0;
   std::uint32_t dict_id = 0;
   std::uint32_t uncompressed_len = 0;
   std::uint32_t compressed_len = 0;
   std::uint32_t checksum = 0;
};

struct CompressedBlock {
   static constexpr std::size_t kHeaderSize = 20;

   BlockHeader header;
   Bytes body;

   Bytes to_bytes() const;
   /// Parses one block from the front of `in`; throws TruncatedFile when
   /// `in` is shorter than the header or the declared body.
   static CompressedBlock from_bytes(ByteSpan in);
   std::size_t wire_size() const { return kHeaderSize + body.size(); }
};

/// Compresses one payload: checksums it, applies the preconditioner, runs
/// the codec at the mapped level. Falls back to a stored block whenever the
/// codec fails to shrink the preconditioned bytes, so compressed_len never
/// exceeds uncompressed_len.
CompressedBlock compress_block(ByteSpan payload, const CompressionSettings &settings);

/// Exact inverse: decodes the body, undoes the preconditioner and verifies
/// length and checksum against the header.
Bytes decompress_block(const CompressedBlock &block,
                       const DictionaryTable &dicts = DictionaryTable{});

/// Trains a preset dictionary of at most target_size bytes from the given
/// samples (ZDICT-backed). Requires at least 8 samples totalling at least
/// 4 x target_size bytes. Deterministic for identical samples and backend.
Dictionary train_dictionary(const std::vector<Bytes> &samples, std::size_t target_size,
                            CodecId codec, std::uint32_t id = 1);

inline constexpr std::size_t kDefaultDictBytes = 16 * 1024;

} // namespace cbkt

#endif // CBKT_CODECS_HPP
