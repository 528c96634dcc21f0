/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cbkt/container.hpp"

#include "cbkt/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace cbkt {

namespace {

// Sequential parser over an in-memory file image. Every read is
// bounds-checked so truncation surfaces as TruncatedFile, not UB.
class Reader {
public:
   explicit Reader(ByteSpan data) : fData(data) {}

   void seek(std::size_t pos)
   {
      if (pos > fData.size())
         raise(Errc::TruncatedFile, "seek beyond end of file");
      fPos = pos;
   }
   std::size_t pos() const { return fPos; }

   ByteSpan take(std::size_t n)
   {
      need(n);
      ByteSpan s = fData.subspan(fPos, n);
      fPos += n;
      return s;
   }

   std::uint8_t u8() { return take(1)[0]; }
   std::uint16_t u16() { return read_be16(take(2), 0); }
   std::uint32_t u32() { return read_be32(take(4), 0); }
   std::uint64_t u64() { return read_be64(take(8), 0); }

   CompressedBlock block()
   {
      need(CompressedBlock::kHeaderSize);
      CompressedBlock b = CompressedBlock::from_bytes(fData.subspan(fPos));
      fPos += b.wire_size();
      return b;
   }

private:
   void need(std::size_t n) const
   {
      if (fPos + n > fData.size())
         raise(Errc::TruncatedFile, "need " + std::to_string(n) + " bytes at offset " +
                                       std::to_string(fPos) + ", file ends at " +
                                       std::to_string(fData.size()));
   }

   ByteSpan fData;
   std::size_t fPos = 0;
};

void put_magic(Bytes &out)
{
   out.insert(out.end(), kMagic.begin(), kMagic.end());
}

void put_schema(Bytes &out, const Schema &schema)
{
   append_be(out, schema.branches.size(), 2);
   for (const auto &b : schema.branches) {
      append_be(out, b.name.size(), 2);
      out.insert(out.end(), b.name.begin(), b.name.end());
      out.push_back(static_cast<std::uint8_t>(b.element.type));
      out.push_back(b.element.width);
   }
}

Schema parse_schema(Reader &r)
{
   Schema schema;
   const std::uint16_t n = r.u16();
   schema.branches.reserve(n);
   for (std::uint16_t i = 0; i < n; ++i) {
      BranchDescriptor b;
      const std::uint16_t name_len = r.u16();
      ByteSpan name = r.take(name_len);
      b.name.assign(name.begin(), name.end());
      const std::uint8_t kind = r.u8();
      const std::uint8_t width = r.u8();
      if (kind > 1)
         raise(Errc::SchemaMismatch, "unknown element kind tag " + std::to_string(kind));
      b.element = kind == 0 ? ElementKind::fixed_scalar(width) : ElementKind::jagged_array(width);
      schema.branches.push_back(std::move(b));
   }
   schema.validate();
   return schema;
}

void check_head_magic(ByteSpan file)
{
   if (file.size() < kMagic.size() ||
       !std::equal(kMagic.begin(), kMagic.end(), file.begin()))
      raise(Errc::BadMagic, "file does not start with container magic");
}

struct Footer {
   std::size_t index_offset = 0;
};

Footer parse_tail(ByteSpan file)
{
   if (file.size() < kMagic.size() + 8)
      raise(Errc::TruncatedFile, "file too short for footer");
   if (!std::equal(kMagic.begin(), kMagic.end(), file.end() - kMagic.size()))
      raise(Errc::BadMagic, "footer magic missing");
   Footer f;
   f.index_offset = read_be64(file, file.size() - kMagic.size() - 8);
   if (f.index_offset >= file.size())
      raise(Errc::TruncatedFile, "index offset beyond end of file");
   return f;
}

using BranchIndex = std::vector<std::vector<std::uint64_t>>; // per branch: record offsets

BranchIndex parse_index(Reader &r, std::size_t n_branches)
{
   const std::uint32_t counted = r.u32();
   if (counted != n_branches)
      raise(Errc::SchemaMismatch, "index branch count disagrees with schema");
   BranchIndex index(n_branches);
   for (std::size_t b = 0; b < n_branches; ++b) {
      const std::uint32_t n_records = r.u32();
      index[b].reserve(n_records);
      for (std::uint32_t k = 0; k < n_records; ++k)
         index[b].push_back(r.u64());
   }
   return index;
}

struct RecordHead {
   std::uint16_t branch = 0;
   std::uint64_t first_entry = 0;
   std::uint32_t n_entries = 0;
};

RecordHead parse_record_head(Reader &r)
{
   RecordHead h;
   h.branch = r.u16();
   h.first_entry = r.u64();
   h.n_entries = r.u32();
   return h;
}

Bytes load_file(const std::string &path)
{
   std::ifstream in(path, std::ios::binary);
   if (!in)
      raise(Errc::IoFailure, "cannot open '" + path + "' for reading");
   in.seekg(0, std::ios::end);
   const auto size = in.tellg();
   if (size < 0)
      raise(Errc::IoFailure, "cannot determine size of '" + path + "'");
   Bytes data(static_cast<std::size_t>(size));
   in.seekg(0);
   if (size > 0)
      in.read(reinterpret_cast<char *>(data.data()), size);
   if (!in)
      raise(Errc::IoFailure, "short read on '" + path + "'");
   return data;
}

} // namespace

WriteSummary write_file(const std::string &path, const Schema &schema,
                        const std::vector<Column> &columns,
                        const std::vector<CompressionSettings> &settings,
                        std::size_t target_basket_bytes)
{
   schema.validate();
   if (columns.size() != schema.branches.size())
      raise(Errc::SchemaMismatch, "got " + std::to_string(columns.size()) +
                                     " columns for " +
                                     std::to_string(schema.branches.size()) + " branches");
   if (settings.size() != schema.branches.size())
      raise(Errc::SchemaMismatch, "need one CompressionSettings per branch");

   const std::size_t n_entries = column_entry_count(columns.front());
   for (std::size_t b = 0; b < columns.size(); ++b) {
      const bool jagged = std::holds_alternative<JaggedColumn>(columns[b]);
      if (jagged != schema.branches[b].element.is_jagged())
         raise(Errc::SchemaMismatch,
               "column " + std::to_string(b) + " does not match branch element kind");
      if (column_entry_count(columns[b]) != n_entries)
         raise(Errc::SchemaMismatch, "branches disagree on entry count");
      settings[b].validate();
   }

   // Distinct dictionaries referenced by the per-branch settings.
   std::map<std::uint32_t, std::shared_ptr<const Dictionary>> dicts;
   for (const auto &s : settings) {
      if (!s.dictionary)
         continue;
      auto [it, inserted] = dicts.emplace(s.dictionary->id, s.dictionary);
      if (!inserted && it->second->bytes != s.dictionary->bytes)
         raise(Errc::InvalidSettings,
               "dictionary id " + std::to_string(s.dictionary->id) + " reused with different bytes");
   }

   Bytes out;
   put_magic(out);
   put_schema(out, schema);

   put_be32(out, static_cast<std::uint32_t>(dicts.size()));
   for (const auto &[id, dict] : dicts) {
      put_be32(out, id);
      out.push_back(static_cast<std::uint8_t>(dict->trained_for));
      put_be32(out, static_cast<std::uint32_t>(dict->bytes.size()));
      out.insert(out.end(), dict->bytes.begin(), dict->bytes.end());
   }

   WriteSummary summary;
   summary.branches.resize(schema.branches.size());
   BranchIndex index(schema.branches.size());

   for (std::size_t b = 0; b < schema.branches.size(); ++b) {
      const BranchDescriptor &branch = schema.branches[b];
      auto &totals = summary.branches[b];

      CompressionSettings data_settings = settings[b];
      data_settings.precond = settings[b].precond.for_width(branch.element.width);
      CompressionSettings offset_settings = settings[b];
      offset_settings.precond = settings[b].precond.for_width(4);

      for (Basket &basket :
           basketize(columns[b], branch, target_basket_bytes, static_cast<std::uint32_t>(b))) {
         index[b].push_back(out.size());
         append_be(out, b, 2);
         put_be64(out, basket.first_entry);
         put_be32(out, basket.n_entries);

         const CompressedBlock data_block = compress_block(basket.data, data_settings);
         Bytes wire = data_block.to_bytes();
         out.insert(out.end(), wire.begin(), wire.end());
         totals.uncompressed_bytes += data_block.header.uncompressed_len;
         totals.compressed_bytes += data_block.body.size();

         if (basket.offsets) {
            const CompressedBlock offsets_block = compress_block(*basket.offsets, offset_settings);
            wire = offsets_block.to_bytes();
            out.insert(out.end(), wire.begin(), wire.end());
            totals.uncompressed_bytes += offsets_block.header.uncompressed_len;
            totals.compressed_bytes += offsets_block.body.size();
         }
         ++totals.baskets;
      }
   }

   const std::uint64_t index_offset = out.size();
   put_be32(out, static_cast<std::uint32_t>(index.size()));
   for (const auto &offsets : index) {
      put_be32(out, static_cast<std::uint32_t>(offsets.size()));
      for (std::uint64_t off : offsets)
         put_be64(out, off);
   }
   put_be64(out, index_offset);
   put_magic(out);

   std::ofstream file(path, std::ios::binary | std::ios::trunc);
   if (!file)
      raise(Errc::IoFailure, "cannot open '" + path + "' for writing");
   file.write(reinterpret_cast<const char *>(out.data()),
              static_cast<std::streamsize>(out.size()));
   file.flush();
   if (!file)
      raise(Errc::IoFailure, "short write on '" + path + "'");

   summary.bytes_written = out.size();
   return summary;
}

namespace {

DictionaryTable parse_dictionaries(Reader &r)
{
   DictionaryTable table;
   const std::uint32_t n = r.u32();
   for (std::uint32_t i = 0; i < n; ++i) {
      auto dict = std::make_shared<Dictionary>();
      dict->id = r.u32();
      const std::uint8_t codec_tag = r.u8();
      if (codec_tag > static_cast<std::uint8_t>(CodecId::kZstd))
         raise(Errc::UnknownCodec, "dictionary trained_for tag " + std::to_string(codec_tag));
      dict->trained_for = static_cast<CodecId>(codec_tag);
      const std::uint32_t len = r.u32();
      ByteSpan bytes = r.take(len);
      dict->bytes.assign(bytes.begin(), bytes.end());
      table.add(std::move(dict));
   }
   return table;
}

} // namespace

Dataset read_file(const std::string &path)
{
   const Bytes file = load_file(path);
   check_head_magic(file);
   const Footer footer = parse_tail(file);

   Reader r{ByteSpan{file}};
   r.seek(kMagic.size());
   Dataset dataset;
   dataset.schema = parse_schema(r);
   const DictionaryTable dicts = parse_dictionaries(r);

   r.seek(footer.index_offset);
   const BranchIndex index = parse_index(r, dataset.schema.branches.size());

   dataset.columns.resize(dataset.schema.branches.size());
   std::uint64_t expected_entries = 0;
   for (std::size_t b = 0; b < index.size(); ++b) {
      const BranchDescriptor &branch = dataset.schema.branches[b];
      const bool jagged = branch.element.is_jagged();
      Column column = jagged ? Column{JaggedColumn{}} : Column{ScalarColumn{}};

      std::uint64_t next_entry = 0;
      for (std::uint64_t offset : index[b]) {
         r.seek(offset);
         const RecordHead head = parse_record_head(r);
         if (head.branch != b)
            raise(Errc::CorruptBody, "index points at record of branch " +
                                        std::to_string(head.branch) + ", expected " +
                                        std::to_string(b));
         if (head.first_entry != next_entry)
            raise(Errc::CorruptBody, "basket coverage not contiguous for branch " +
                                        std::to_string(b));

         Basket basket;
         basket.branch = head.branch;
         basket.first_entry = head.first_entry;
         basket.n_entries = head.n_entries;
         basket.data = decompress_block(r.block(), dicts);
         if (jagged)
            basket.offsets = decompress_block(r.block(), dicts);

         Column part = deserialize_column(basket, branch);
         if (jagged) {
            auto &dst = std::get<JaggedColumn>(column);
            auto &src = std::get<JaggedColumn>(part);
            dst.insert(dst.end(), std::make_move_iterator(src.begin()),
                       std::make_move_iterator(src.end()));
         } else {
            auto &dst = std::get<ScalarColumn>(column);
            auto &src = std::get<ScalarColumn>(part);
            dst.insert(dst.end(), src.begin(), src.end());
         }
         next_entry += head.n_entries;
      }

      if (b == 0) {
         expected_entries = next_entry;
      } else if (next_entry != expected_entries) {
         raise(Errc::CorruptBody, "branches disagree on entry count");
      }
      dataset.columns[b] = std::move(column);
   }
   return dataset;
}

VerifyReport verify_file(const std::string &path)
{
   VerifyReport report;
   auto issue = [&report](std::uint64_t offset, std::string what) {
      report.issues.push_back({offset, std::move(what)});
   };

   Bytes file;
   try {
      file = load_file(path);
   } catch (const Error &e) {
      issue(0, e.what());
      return report;
   }
   report.file_bytes = file.size();

   Schema schema;
   DictionaryTable dicts;
   BranchIndex index;
   try {
      check_head_magic(file);
      const Footer footer = parse_tail(file);
      Reader r{ByteSpan{file}};
      r.seek(kMagic.size());
      schema = parse_schema(r);
      dicts = parse_dictionaries(r);
      r.seek(footer.index_offset);
      index = parse_index(r, schema.branches.size());
   } catch (const Error &e) {
      issue(0, std::string("structure: ") + e.what());
      return report;
   }

   std::vector<std::uint64_t> branch_entries(schema.branches.size(), 0);
   for (std::size_t b = 0; b < index.size(); ++b) {
      const bool jagged = schema.branches[b].element.is_jagged();
      std::uint64_t next_entry = 0;
      for (std::uint64_t offset : index[b]) {
         ++report.records_seen;
         Reader r{ByteSpan{file}};
         try {
            r.seek(offset);
            const RecordHead head = parse_record_head(r);
            if (head.branch != b)
               issue(offset, "record branch field disagrees with index");
            if (head.first_entry != next_entry)
               issue(offset, "basket coverage not contiguous");
            next_entry += head.n_entries;

            const int blocks = jagged ? 2 : 1;
            for (int k = 0; k < blocks; ++k) {
               const std::uint64_t block_offset = r.pos();
               try {
                  const CompressedBlock block = r.block();
                  ++report.blocks_checked;
                  decompress_block(block, dicts);
               } catch (const Error &e) {
                  ++report.blocks_failed;
                  issue(block_offset, e.what());
               }
            }
         } catch (const Error &e) {
            issue(offset, std::string("record: ") + e.what());
         }
      }
      branch_entries[b] = next_entry;
   }

   for (std::size_t b = 1; b < branch_entries.size(); ++b) {
      if (branch_entries[b] != branch_entries[0]) {
         issue(0, "branch " + std::to_string(b) + " covers " +
                     std::to_string(branch_entries[b]) + " entries, branch 0 covers " +
                     std::to_string(branch_entries[0]));
      }
   }
   return report;
}

std::string VerifyReport::render() const
{
   std::ostringstream os;
   os << "file bytes:      " << file_bytes << "\n"
      << "records seen:    " << records_seen << "\n"
      << "blocks checked:  " << blocks_checked << "\n"
      << "blocks failed:   " << blocks_failed << "\n";
   if (issues.empty()) {
      os << "status:          OK\n";
   } else {
      os << "status:          " << issues.size() << " issue(s)\n";
      for (const auto &i : issues)
         os << "  [offset " << i.file_offset << "] " << i.what << "\n";
   }
   return os.str();
}

} // namespace cbkt
