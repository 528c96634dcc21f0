/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cbkt/columnar.hpp"

#include "cbkt/errors.hpp"

#include <limits>
#include <set>
#include <string>

namespace cbkt {

namespace {

bool valid_width(std::uint8_t w)
{
   return w == 1 || w == 2 || w == 4 || w == 8;
}

// Largest value representable in `width` bytes.
std::uint64_t width_mask(std::uint8_t width)
{
   return width == 8 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (8 * width)) - 1);
}

void check_value(std::uint64_t v, std::uint8_t width, std::size_t entry)
{
   if (v > width_mask(width)) {
      raise(Errc::ValueOutOfRange, "value " + std::to_string(v) + " at entry " +
                                      std::to_string(entry) + " exceeds " +
                                      std::to_string(width) + "-byte width");
   }
}

} // namespace

ElementKind ElementKind::fixed_scalar(std::uint8_t width)
{
   if (!valid_width(width))
      raise(Errc::ValueOutOfRange, "scalar width must be 1, 2, 4 or 8");
   return {ElementType::kFixedScalar, width};
}

ElementKind ElementKind::jagged_array(std::uint8_t elem_width)
{
   if (!valid_width(elem_width))
      raise(Errc::ValueOutOfRange, "element width must be 1, 2, 4 or 8");
   return {ElementType::kJaggedArray, elem_width};
}

void Schema::validate() const
{
   if (branches.empty())
      raise(Errc::SchemaMismatch, "schema needs at least one branch");
   if (branches.size() > std::numeric_limits<std::uint16_t>::max())
      raise(Errc::SchemaMismatch, "too many branches for 16-bit branch index");
   std::set<std::string> names;
   for (const auto &b : branches) {
      if (b.name.empty())
         raise(Errc::SchemaMismatch, "branch name must be non-empty");
      if (!names.insert(b.name).second)
         raise(Errc::SchemaMismatch, "duplicate branch name '" + b.name + "'");
      if (!valid_width(b.element.width))
         raise(Errc::SchemaMismatch, "branch '" + b.name + "' has invalid width");
   }
}

std::size_t column_entry_count(const Column &column)
{
   return std::visit([](const auto &v) { return v.size(); }, column);
}

Basket serialize_column(const Column &values, const BranchDescriptor &branch,
                        std::uint64_t first_entry, std::uint32_t branch_index)
{
   Basket basket;
   basket.branch = branch_index;
   basket.first_entry = first_entry;

   if (branch.element.is_jagged()) {
      const auto *entries = std::get_if<JaggedColumn>(&values);
      if (!entries)
         raise(Errc::ValueOutOfRange, "jagged branch requires jagged entry values");
      if (entries->empty())
         raise(Errc::EmptyInput, "serialize_column on zero entries");

      const std::uint8_t w = branch.element.width;
      Bytes offsets;
      offsets.reserve(entries->size() * 4);
      for (std::size_t i = 0; i < entries->size(); ++i) {
         for (std::uint64_t elem : (*entries)[i]) {
            check_value(elem, w, i);
            append_be(basket.data, elem, w);
         }
         if (basket.data.size() > std::numeric_limits<std::uint32_t>::max())
            raise(Errc::ValueOutOfRange, "basket data exceeds 32-bit offset range");
         put_be32(offsets, static_cast<std::uint32_t>(basket.data.size()));
      }
      basket.n_entries = static_cast<std::uint32_t>(entries->size());
      basket.offsets = std::move(offsets);
   } else {
      const auto *scalars = std::get_if<ScalarColumn>(&values);
      if (!scalars)
         raise(Errc::ValueOutOfRange, "scalar branch requires scalar entry values");
      if (scalars->empty())
         raise(Errc::EmptyInput, "serialize_column on zero entries");

      const std::uint8_t w = branch.element.width;
      basket.data.reserve(scalars->size() * w);
      for (std::size_t i = 0; i < scalars->size(); ++i) {
         check_value((*scalars)[i], w, i);
         append_be(basket.data, (*scalars)[i], w);
      }
      basket.n_entries = static_cast<std::uint32_t>(scalars->size());
   }
   return basket;
}

Column deserialize_column(const Basket &basket, const BranchDescriptor &branch)
{
   const std::uint8_t w = branch.element.width;

   if (branch.element.is_jagged()) {
      if (!basket.offsets)
         raise(Errc::LengthMismatch, "jagged basket lacks offsets region");
      const Bytes &offs = *basket.offsets;
      if (offs.size() != std::size_t{basket.n_entries} * 4)
         raise(Errc::LengthMismatch, "offsets region holds " +
                                        std::to_string(offs.size() / 4) +
                                        " values, expected " +
                                        std::to_string(basket.n_entries));

      JaggedColumn entries;
      entries.reserve(basket.n_entries);
      std::uint32_t prev = 0;
      for (std::uint32_t k = 0; k < basket.n_entries; ++k) {
         const std::uint32_t end = read_be32(offs, std::size_t{k} * 4);
         if (end < prev)
            raise(Errc::MalformedOffsets, "offset " + std::to_string(end) +
                                             " decreases at entry " + std::to_string(k));
         if (end > basket.data.size())
            raise(Errc::MalformedOffsets,
                  "offset " + std::to_string(end) + " beyond data region");
         const std::uint32_t len = end - prev;
         if (len % w != 0)
            raise(Errc::LengthMismatch, "entry " + std::to_string(k) +
                                           " spans " + std::to_string(len) +
                                           " bytes, not a multiple of width");
         std::vector<std::uint64_t> elems(len / w);
         for (std::size_t j = 0; j < elems.size(); ++j)
            elems[j] = read_be(basket.data, prev + j * w, w);
         entries.push_back(std::move(elems));
         prev = end;
      }
      if (prev != basket.data.size())
         raise(Errc::LengthMismatch, "last offset " + std::to_string(prev) +
                                        " does not close data region of " +
                                        std::to_string(basket.data.size()) + " bytes");
      return entries;
   }

   if (basket.offsets)
      raise(Errc::LengthMismatch, "scalar basket carries an offsets region");
   if (basket.data.size() != std::size_t{basket.n_entries} * w)
      raise(Errc::LengthMismatch, "data region of " + std::to_string(basket.data.size()) +
                                     " bytes does not hold " +
                                     std::to_string(basket.n_entries) +
                                     " entries of width " + std::to_string(w));

   ScalarColumn scalars(basket.n_entries);
   for (std::uint32_t i = 0; i < basket.n_entries; ++i)
      scalars[i] = read_be(basket.data, std::size_t{i} * w, w);
   return scalars;
}

std::vector<Basket> basketize(const Column &values, const BranchDescriptor &branch,
                              std::size_t target_basket_bytes, std::uint32_t branch_index)
{
   const std::size_t n = column_entry_count(values);
   if (n == 0)
      raise(Errc::EmptyInput, "basketize on zero entries");

   // Byte size of entry i in the data region.
   auto entry_bytes = [&](std::size_t i) -> std::size_t {
      if (const auto *jagged = std::get_if<JaggedColumn>(&values))
         return (*jagged)[i].size() * branch.element.width;
      return branch.element.width;
   };
   auto slice = [&](std::size_t begin, std::size_t end) -> Column {
      if (const auto *jagged = std::get_if<JaggedColumn>(&values))
         return JaggedColumn(jagged->begin() + begin, jagged->begin() + end);
      const auto &scalars = std::get<ScalarColumn>(values);
      return ScalarColumn(scalars.begin() + begin, scalars.begin() + end);
   };

   std::vector<Basket> baskets;
   std::size_t begin = 0;
   std::size_t accumulated = 0;
   for (std::size_t i = 0; i < n; ++i) {
      const std::size_t sz = entry_bytes(i);
      if (i > begin && accumulated + sz > target_basket_bytes) {
         baskets.push_back(serialize_column(slice(begin, i), branch, begin, branch_index));
         begin = i;
         accumulated = 0;
      }
      accumulated += sz;
      // An entry alone above the target gets its own basket.
      if (sz > target_basket_bytes && i == begin) {
         baskets.push_back(serialize_column(slice(i, i + 1), branch, i, branch_index));
         begin = i + 1;
         accumulated = 0;
      }
   }
   if (begin < n)
      baskets.push_back(serialize_column(slice(begin, n), branch, begin, branch_index));
   return baskets;
}

} // namespace cbkt
