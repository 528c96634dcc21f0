/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cbkt/codecs.hpp"

#include "cbkt/adler32.hpp"
#include "cbkt/errors.hpp"

#include <lz4.h>
#include <lz4hc.h>
#include <zdict.h>
#include <zlib.h>
#include <zstd.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace cbkt {

const char *to_string(CodecId codec)
{
   switch (codec) {
   case CodecId::kStore: return "store";
   case CodecId::kDeflate: return "deflate";
   case CodecId::kLZ4: return "lz4";
   case CodecId::kLZ4HC: return "lz4hc";
   case CodecId::kZstd: return "zstd";
   }
   return "unknown";
}

CodecId codec_from_string(const std::string &name)
{
   if (name == "store") return CodecId::kStore;
   if (name == "deflate" || name == "zlib") return CodecId::kDeflate;
   if (name == "lz4") return CodecId::kLZ4;
   if (name == "lz4hc") return CodecId::kLZ4HC;
   if (name == "zstd") return CodecId::kZstd;
   raise(Errc::UnknownCodec, "'" + name + "'");
}

const char *to_string(PrecondKind kind)
{
   switch (kind) {
   case PrecondKind::kNone: return "none";
   case PrecondKind::kShuffle: return "shuffle";
   case PrecondKind::kBitShuffle: return "bitshuffle";
   }
   return "unknown";
}

PrecondKind precond_from_string(const std::string &name)
{
   if (name == "none") return PrecondKind::kNone;
   if (name == "shuffle") return PrecondKind::kShuffle;
   if (name == "bitshuffle") return PrecondKind::kBitShuffle;
   raise(Errc::UnknownPreconditioner, "'" + name + "'");
}

void DictionaryTable::add(std::shared_ptr<const Dictionary> dict)
{
   if (!dict || dict->id == 0)
      raise(Errc::InvalidSettings, "dictionary id must be nonzero");
   if (!fById.emplace(dict->id, std::move(dict)).second)
      raise(Errc::InvalidSettings, "duplicate dictionary id");
}

const Dictionary *DictionaryTable::find(std::uint32_t id) const
{
   auto it = fById.find(id);
   return it == fById.end() ? nullptr : it->second.get();
}

void CompressionSettings::validate() const
{
   if (level < 0 || level > 9)
      raise(Errc::InvalidLevel, "level " + std::to_string(level) + " outside 0..9");
   if (precond.kind != PrecondKind::kNone && precond.stride < 1)
      raise(Errc::InvalidSettings, "preconditioner stride must be >= 1");
   if (dictionary) {
      if (dictionary->id == 0)
         raise(Errc::InvalidSettings, "dictionary id must be nonzero");
      if (dictionary->bytes.size() < 8)
         raise(Errc::InvalidSettings, "dictionary shorter than 8 bytes");
      if (codec != CodecId::kDeflate && codec != CodecId::kZstd && codec != CodecId::kLZ4)
         raise(Errc::InvalidSettings,
               std::string("codec ") + to_string(codec) + " does not accept preset dictionaries");
   }
}

int map_level(CodecId codec, int level)
{
   if (level < 0 || level > 9)
      raise(Errc::InvalidLevel, "level " + std::to_string(level) + " outside 0..9");
   if (level == 0 || codec == CodecId::kStore)
      return kStoreSentinel;
   switch (codec) {
   case CodecId::kDeflate:
      return level;
   case CodecId::kLZ4:
      return 10 - level; // acceleration, level 1 fastest
   case CodecId::kLZ4HC:
      return static_cast<int>(std::lround(
         LZ4HC_CLEVEL_MIN + (level - 1) * double(LZ4HC_CLEVEL_MAX - LZ4HC_CLEVEL_MIN) / 8.0));
   case CodecId::kZstd:
      return std::max(1, static_cast<int>(std::lround(level * 19.0 / 9.0)));
   case CodecId::kStore:
      break;
   }
   return kStoreSentinel;
}

namespace {

// Backend contexts are reused per thread; every call resets them, so calls
// stay independent.
ZSTD_CCtx *zstd_cctx()
{
   thread_local std::unique_ptr<ZSTD_CCtx, std::size_t (*)(ZSTD_CCtx *)> ctx{ZSTD_createCCtx(),
                                                                             &ZSTD_freeCCtx};
   return ctx.get();
}

ZSTD_DCtx *zstd_dctx()
{
   thread_local std::unique_ptr<ZSTD_DCtx, std::size_t (*)(ZSTD_DCtx *)> ctx{ZSTD_createDCtx(),
                                                                             &ZSTD_freeDCtx};
   return ctx.get();
}

Bytes deflate_encode(ByteSpan src, int level, const Dictionary *dict)
{
   z_stream strm{};
   if (deflateInit2(&strm, level, Z_DEFLATED, 15, 8, Z_DEFAULT_STRATEGY) != Z_OK)
      throw std::runtime_error("deflateInit2 failed");
   if (dict)
      deflateSetDictionary(&strm, dict->bytes.data(), static_cast<uInt>(dict->bytes.size()));

   Bytes out(deflateBound(&strm, static_cast<uLong>(src.size())));
   strm.next_in = const_cast<Bytef *>(src.data());
   strm.avail_in = static_cast<uInt>(src.size());
   strm.next_out = out.data();
   strm.avail_out = static_cast<uInt>(out.size());
   const int rc = deflate(&strm, Z_FINISH);
   const std::size_t produced = strm.total_out;
   deflateEnd(&strm);
   if (rc != Z_STREAM_END)
      throw std::runtime_error("deflate failed rc=" + std::to_string(rc));
   out.resize(produced);
   return out;
}

Bytes deflate_decode(ByteSpan body, std::size_t expected, const Dictionary *dict)
{
   z_stream strm{};
   if (inflateInit2(&strm, 15) != Z_OK)
      throw std::runtime_error("inflateInit2 failed");

   Bytes out(std::max<std::size_t>(expected, 1));
   strm.next_in = const_cast<Bytef *>(body.data());
   strm.avail_in = static_cast<uInt>(body.size());
   strm.next_out = out.data();
   strm.avail_out = static_cast<uInt>(expected);

   int rc = inflate(&strm, Z_FINISH);
   if (rc == Z_NEED_DICT) {
      if (!dict) {
         inflateEnd(&strm);
         raise(Errc::CorruptBody, "deflate stream requires a dictionary but none referenced");
      }
      if (inflateSetDictionary(&strm, dict->bytes.data(),
                               static_cast<uInt>(dict->bytes.size())) != Z_OK) {
         inflateEnd(&strm);
         raise(Errc::CorruptBody, "preset dictionary rejected by inflate");
      }
      rc = inflate(&strm, Z_FINISH);
   }
   const std::size_t produced = strm.total_out;
   inflateEnd(&strm);
   if (rc != Z_STREAM_END || produced != expected)
      raise(Errc::CorruptBody, "inflate failed rc=" + std::to_string(rc));
   out.resize(expected);
   return out;
}

Bytes lz4_encode(ByteSpan src, int acceleration, const Dictionary *dict)
{
   if (src.size() > LZ4_MAX_INPUT_SIZE)
      raise(Errc::PayloadTooLarge, "lz4 input above LZ4_MAX_INPUT_SIZE");
   const int cap = LZ4_compressBound(static_cast<int>(src.size()));
   Bytes out(static_cast<std::size_t>(cap));
   int n = 0;
   if (dict) {
      std::unique_ptr<LZ4_stream_t, int (*)(LZ4_stream_t *)> stream{LZ4_createStream(),
                                                                    &LZ4_freeStream};
      LZ4_loadDict(stream.get(), reinterpret_cast<const char *>(dict->bytes.data()),
                   static_cast<int>(dict->bytes.size()));
      n = LZ4_compress_fast_continue(stream.get(), reinterpret_cast<const char *>(src.data()),
                                     reinterpret_cast<char *>(out.data()),
                                     static_cast<int>(src.size()), cap, acceleration);
   } else {
      n = LZ4_compress_fast(reinterpret_cast<const char *>(src.data()),
                            reinterpret_cast<char *>(out.data()), static_cast<int>(src.size()),
                            cap, acceleration);
   }
   if (n <= 0)
      throw std::runtime_error("LZ4 compression failed");
   out.resize(static_cast<std::size_t>(n));
   return out;
}

Bytes lz4hc_encode(ByteSpan src, int clevel)
{
   if (src.size() > LZ4_MAX_INPUT_SIZE)
      raise(Errc::PayloadTooLarge, "lz4 input above LZ4_MAX_INPUT_SIZE");
   const int cap = LZ4_compressBound(static_cast<int>(src.size()));
   Bytes out(static_cast<std::size_t>(cap));
   const int n = LZ4_compress_HC(reinterpret_cast<const char *>(src.data()),
                                 reinterpret_cast<char *>(out.data()),
                                 static_cast<int>(src.size()), cap, clevel);
   if (n <= 0)
      throw std::runtime_error("LZ4-HC compression failed");
   out.resize(static_cast<std::size_t>(n));
   return out;
}

Bytes lz4_decode(ByteSpan body, std::size_t expected, const Dictionary *dict)
{
   Bytes out(std::max<std::size_t>(expected, 1));
   int n = 0;
   if (dict) {
      n = LZ4_decompress_safe_usingDict(
         reinterpret_cast<const char *>(body.data()), reinterpret_cast<char *>(out.data()),
         static_cast<int>(body.size()), static_cast<int>(expected),
         reinterpret_cast<const char *>(dict->bytes.data()), static_cast<int>(dict->bytes.size()));
   } else {
      n = LZ4_decompress_safe(reinterpret_cast<const char *>(body.data()),
                              reinterpret_cast<char *>(out.data()),
                              static_cast<int>(body.size()), static_cast<int>(expected));
   }
   if (n < 0 || static_cast<std::size_t>(n) != expected)
      raise(Errc::CorruptBody, "lz4 decode failed");
   out.resize(expected);
   return out;
}

Bytes zstd_encode(ByteSpan src, int level, const Dictionary *dict)
{
   Bytes out(ZSTD_compressBound(src.size()));
   std::size_t n = 0;
   if (dict) {
      n = ZSTD_compress_usingDict(zstd_cctx(), out.data(), out.size(), src.data(), src.size(),
                                  dict->bytes.data(), dict->bytes.size(), level);
   } else {
      n = ZSTD_compressCCtx(zstd_cctx(), out.data(), out.size(), src.data(), src.size(), level);
   }
   if (ZSTD_isError(n))
      throw std::runtime_error(std::string("zstd compression failed: ") + ZSTD_getErrorName(n));
   out.resize(n);
   return out;
}

Bytes zstd_decode(ByteSpan body, std::size_t expected, const Dictionary *dict)
{
   Bytes out(std::max<std::size_t>(expected, 1));
   std::size_t n = 0;
   if (dict) {
      n = ZSTD_decompress_usingDict(zstd_dctx(), out.data(), expected, body.data(), body.size(),
                                    dict->bytes.data(), dict->bytes.size());
   } else {
      n = ZSTD_decompressDCtx(zstd_dctx(), out.data(), expected, body.data(), body.size());
   }
   if (ZSTD_isError(n) || n != expected)
      raise(Errc::CorruptBody, "zstd decode failed");
   out.resize(expected);
   return out;
}

Bytes backend_encode(CodecId codec, int backend_level, ByteSpan src, const Dictionary *dict)
{
   switch (codec) {
   case CodecId::kDeflate: return deflate_encode(src, backend_level, dict);
   case CodecId::kLZ4: return lz4_encode(src, backend_level, dict);
   case CodecId::kLZ4HC: return lz4hc_encode(src, backend_level);
   case CodecId::kZstd: return zstd_encode(src, backend_level, dict);
   case CodecId::kStore: break;
   }
   throw std::logic_error("store reached backend_encode");
}

Bytes backend_decode(CodecId codec, ByteSpan body, std::size_t expected, const Dictionary *dict)
{
   switch (codec) {
   case CodecId::kDeflate: return deflate_decode(body, expected, dict);
   case CodecId::kLZ4:
   case CodecId::kLZ4HC: return lz4_decode(body, expected, dict);
   case CodecId::kZstd: return zstd_decode(body, expected, dict);
   case CodecId::kStore: break;
   }
   throw std::logic_error("store reached backend_decode");
}

} // namespace

Bytes CompressedBlock::to_bytes() const
{
   Bytes out;
   out.reserve(kHeaderSize + body.size());
   out.push_back(static_cast<std::uint8_t>(header.codec));
   out.push_back(header.level);
   out.push_back(static_cast<std::uint8_t>(header.precond));
   out.push_back(header.stride);
   put_be32(out, header.dict_id);
   put_be32(out, header.uncompressed_len);
   put_be32(out, header.compressed_len);
   put_be32(out, header.checksum);
   out.insert(out.end(), body.begin(), body.end());
   return out;
}

CompressedBlock CompressedBlock::from_bytes(ByteSpan in)
{
   if (in.size() < kHeaderSize)
      raise(Errc::TruncatedFile, "block header needs " + std::to_string(kHeaderSize) +
                                    " bytes, found " + std::to_string(in.size()));
   CompressedBlock block;
   block.header.codec = static_cast<CodecId>(in[0]);
   block.header.level = in[1];
   block.header.precond = static_cast<PrecondKind>(in[2]);
   block.header.stride = in[3];
   block.header.dict_id = read_be32(in, 4);
   block.header.uncompressed_len = read_be32(in, 8);
   block.header.compressed_len = read_be32(in, 12);
   block.header.checksum = read_be32(in, 16);
   if (in.size() < kHeaderSize + block.header.compressed_len)
      raise(Errc::TruncatedFile, "block body truncated");
   block.body.assign(in.begin() + kHeaderSize,
                     in.begin() + kHeaderSize + block.header.compressed_len);
   return block;
}

CompressedBlock compress_block(ByteSpan payload, const CompressionSettings &settings)
{
   settings.validate();
   if (payload.size() > std::numeric_limits<std::uint32_t>::max())
      raise(Errc::PayloadTooLarge, std::to_string(payload.size()) + " bytes");

   BlockHeader header;
   header.level = static_cast<std::uint8_t>(settings.level);
   header.precond = settings.precond.kind;
   header.stride = settings.precond.kind == PrecondKind::kNone ? 0 : settings.precond.stride;
   header.uncompressed_len = static_cast<std::uint32_t>(payload.size());
   header.checksum = adler32(payload);

   Bytes preconditioned = apply_precond(settings.precond, payload);
   const int backend_level = map_level(settings.codec, settings.level);

   Bytes body;
   bool stored = true;
   if (backend_level != kStoreSentinel) {
      body = backend_encode(settings.codec, backend_level, preconditioned,
                            settings.dictionary.get());
      stored = body.size() >= preconditioned.size();
   }

   if (stored) {
      header.codec = CodecId::kStore;
      header.dict_id = 0;
      if (preconditioned.size() <= payload.size()) {
         body = std::move(preconditioned);
      } else {
         // BitShuffle plane padding expanded the buffer; keep the raw
         // payload so a stored block never exceeds the original size.
         body.assign(payload.begin(), payload.end());
         header.precond = PrecondKind::kNone;
         header.stride = 0;
      }
   } else {
      header.codec = settings.codec;
      header.dict_id = settings.dictionary ? settings.dictionary->id : 0;
   }
   header.compressed_len = static_cast<std::uint32_t>(body.size());
   return {header, std::move(body)};
}

Bytes decompress_block(const CompressedBlock &block, const DictionaryTable &dicts)
{
   const BlockHeader &header = block.header;
   if (static_cast<std::uint8_t>(header.codec) > static_cast<std::uint8_t>(CodecId::kZstd))
      raise(Errc::UnknownCodec,
            "tag " + std::to_string(static_cast<int>(header.codec)));
   if (static_cast<std::uint8_t>(header.precond) > static_cast<std::uint8_t>(PrecondKind::kBitShuffle))
      raise(Errc::UnknownPreconditioner,
            "tag " + std::to_string(static_cast<int>(header.precond)));
   if (header.compressed_len != block.body.size())
      raise(Errc::CorruptBody, "compressed_len disagrees with body size");

   const Dictionary *dict = nullptr;
   if (header.dict_id != 0) {
      dict = dicts.find(header.dict_id);
      if (!dict)
         raise(Errc::MissingDictionary, "dictionary id " + std::to_string(header.dict_id));
   }

   const std::size_t expected =
      header.precond == PrecondKind::kBitShuffle
         ? bitshuffled_size(header.uncompressed_len, header.stride)
         : header.uncompressed_len;

   Bytes preconditioned;
   if (header.codec == CodecId::kStore) {
      if (block.body.size() != expected)
         raise(Errc::CorruptBody, "stored body length mismatch");
      preconditioned = block.body;
   } else {
      preconditioned = backend_decode(header.codec, block.body, expected, dict);
   }

   const Preconditioner p{header.precond, header.stride};
   Bytes payload = invert_precond(p, preconditioned, header.uncompressed_len);
   if (payload.size() != header.uncompressed_len)
      raise(Errc::CorruptBody, "decoded length mismatch");
   if (adler32(payload) != header.checksum)
      raise(Errc::ChecksumMismatch, "payload checksum does not match header");
   return payload;
}

Dictionary train_dictionary(const std::vector<Bytes> &samples, std::size_t target_size,
                            CodecId codec, std::uint32_t id)
{
   if (id == 0)
      raise(Errc::InvalidSettings, "dictionary id must be nonzero");
   if (samples.size() < 8)
      raise(Errc::InsufficientSamples,
            std::to_string(samples.size()) + " samples, need at least 8");
   std::size_t total = 0;
   for (const auto &s : samples)
      total += s.size();
   if (total < 4 * target_size)
      raise(Errc::InsufficientSamples, std::to_string(total) +
                                          " sample bytes, need at least 4 x target (" +
                                          std::to_string(4 * target_size) + ")");

   Bytes flat;
   flat.reserve(total);
   std::vector<std::size_t> sizes;
   sizes.reserve(samples.size());
   for (const auto &s : samples) {
      flat.insert(flat.end(), s.begin(), s.end());
      sizes.push_back(s.size());
   }

   Dictionary dict;
   dict.id = id;
   dict.trained_for = codec;
   dict.bytes.resize(target_size);
   const std::size_t n = ZDICT_trainFromBuffer(dict.bytes.data(), target_size, flat.data(),
                                               sizes.data(), static_cast<unsigned>(sizes.size()));
   if (ZDICT_isError(n))
      raise(Errc::TrainingFailed, ZDICT_getErrorName(n));
   dict.bytes.resize(n);
   if (dict.bytes.size() < 8)
      raise(Errc::TrainingFailed, "trained dictionary shorter than 8 bytes");
   return dict;
}

} // namespace cbkt
