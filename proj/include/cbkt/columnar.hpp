/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_COLUMNAR_HPP
#define CBKT_COLUMNAR_HPP

#include "cbkt/bytes.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cbkt {

enum class ElementType : std::uint8_t {
   kFixedScalar = 0,
   kJaggedArray = 1,
};

/// Element layout of one branch: either a fixed-width scalar per entry or a
/// variable-length array of fixed-width elements per entry. Widths are
/// restricted to 1, 2, 4 or 8 bytes.
struct ElementKind {
   ElementType type = ElementType::kFixedScalar;
   std::uint8_t width = 4; // bytes per scalar / per array element

   static ElementKind fixed_scalar(std::uint8_t width);
   static ElementKind jagged_array(std::uint8_t elem_width);

   bool is_jagged() const { return type == ElementType::kJaggedArray; }
   bool operator==(const ElementKind &) const = default;
};

struct BranchDescriptor {
   std::string name;
   ElementKind element;

   bool operator==(const BranchDescriptor &) const = default;
};

struct Schema {
   std::vector<BranchDescriptor> branches;

   /// Checks the Schema invariants: at least one branch, non-empty pairwise
   /// distinct names, valid element widths. Throws Error on violation.
   void validate() const;

   bool operator==(const Schema &) const = default;
};

// Entry values as supplied by callers. Scalars and array elements are the
// raw fixed-width bit patterns, carried as unsigned integers; the core never
// interprets them (signed/float callers pass their bit patterns).
using ScalarColumn = std::vector<std::uint64_t>;
using JaggedColumn = std::vector<std::vector<std::uint64_t>>;
using Column = std::variant<ScalarColumn, JaggedColumn>;

/// One uncompressed chunk of a branch: the unit of compression.
///
/// For jagged branches the offsets region holds n_entries unsigned 32-bit
/// big-endian values; the k-th value is the cumulative byte length of
/// entries 1..k within data, so the last one equals data.size().
struct Basket {
   std::uint32_t branch = 0; // index into Schema::branches
   std::uint64_t first_entry = 0;
   std::uint32_t n_entries = 0;
   Bytes data;
   std::optional<Bytes> offsets; // present iff the branch is jagged

   std::size_t entry_count() const { return n_entries; }
};

/// Default compression-unit size for basketize. Well below the 256 KB ZSTD
/// window so window effects stay observable.
inline constexpr std::size_t kDefaultBasketBytes = 32 * 1024;

/// Serializes entry values column-wise into a basket. All multi-byte values
/// are encoded big-endian; jagged entries additionally produce the
/// cumulative end-offset region.
Basket serialize_column(const Column &values, const BranchDescriptor &branch,
                        std::uint64_t first_entry, std::uint32_t branch_index = 0);

/// Exact inverse of serialize_column.
Column deserialize_column(const Basket &basket, const BranchDescriptor &branch);

/// Splits a full column into baskets whose data regions do not exceed
/// target_basket_bytes, except that an entry larger than the target gets a
/// basket of its own. Entry order and count are preserved.
std::vector<Basket> basketize(const Column &values, const BranchDescriptor &branch,
                              std::size_t target_basket_bytes,
                              std::uint32_t branch_index = 0);

std::size_t column_entry_count(const Column &column);

} // namespace cbkt

#endif // CBKT_COLUMNAR_HPP
