/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_CONTAINER_HPP
#define CBKT_CONTAINER_HPP

#include "cbkt/codecs.hpp"
#include "cbkt/columnar.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cbkt {

// File magic, present at both ends of every container file.
inline constexpr std::array<std::uint8_t, 8> kMagic = {'C', 'B', 'K', 'T', 0, 1, 0, 0};

/// Schema plus one column per branch: the logical content of a container
/// file.
struct Dataset {
   Schema schema;
   std::vector<Column> columns;

   std::uint64_t entries() const
   {
      return columns.empty() ? 0 : column_entry_count(columns.front());
   }
};

struct WriteSummary {
   struct PerBranch {
      std::uint64_t uncompressed_bytes = 0; // sum of block uncompressed_len
      std::uint64_t compressed_bytes = 0;   // sum of block body sizes
      std::uint32_t baskets = 0;
   };
   std::uint64_t bytes_written = 0; // whole file
   std::vector<PerBranch> branches;
};

/// Writes schema, dictionaries and per-branch compressed baskets to `path`.
/// `settings` holds one entry per branch (preconditioner strides are bound
/// to the region widths internally). Identical inputs always produce
/// byte-identical files.
WriteSummary write_file(const std::string &path, const Schema &schema,
                        const std::vector<Column> &columns,
                        const std::vector<CompressionSettings> &settings,
                        std::size_t target_basket_bytes = kDefaultBasketBytes);

/// Exact logical inverse of write_file.
Dataset read_file(const std::string &path);

struct VerifyIssue {
   std::uint64_t file_offset = 0;
   std::string what;
};

struct VerifyReport {
   std::uint64_t file_bytes = 0;
   std::uint32_t records_seen = 0;
   std::uint32_t blocks_checked = 0;
   std::uint32_t blocks_failed = 0;
   std::vector<VerifyIssue> issues;

   bool ok() const { return issues.empty(); }
   std::string render() const;
};

/// Read-only integrity pass: header/footer magic, index consistency, and a
/// full decode + checksum of every block. Problems are collected in the
/// report, never thrown.
VerifyReport verify_file(const std::string &path);

} // namespace cbkt

#endif // CBKT_CONTAINER_HPP
