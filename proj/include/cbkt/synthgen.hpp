/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_SYNTHGEN_HPP
#define CBKT_SYNTHGEN_HPP

#include "cbkt/container.hpp"

#include <cstdint>
#include <string>
#include <variant>

namespace cbkt {

enum class ValueModel : std::uint8_t {
   kUniform = 0,
   kGaussianQuantized = 1,
   kConstant = 2,
};

const char *to_string(ValueModel model);

/// Flat tree: one fixed-width scalar per branch per event.
struct FlatTreeProfile {
   std::uint64_t n_events = 2000;
   std::uint32_t n_branches = 10;
   ValueModel model = ValueModel::kGaussianQuantized;
   std::uint8_t width = 4;
};

/// Jagged tree: per event, each branch holds a variable-length array whose
/// length is Poisson-distributed. With a small lambda the offset regions
/// form a large fraction of the serialized bytes, the pattern that defeats
/// byte-aligned matching unless a preconditioner is applied.
struct JaggedTreeProfile {
   std::uint64_t n_events = 100000;
   std::uint32_t n_branches = 5;
   double lambda = 3.0;
   ValueModel model = ValueModel::kGaussianQuantized;
   std::uint8_t elem_width = 4;
};

struct DatasetProfile {
   std::variant<FlatTreeProfile, JaggedTreeProfile> tree = FlatTreeProfile{};
   std::uint64_t seed = 42;
};

/// Deterministic dataset generation: the same (profile, seed) always yields
/// identical bytes, independent of platform or standard library. Branches
/// draw from independent streams derived from the seed and branch index.
Dataset generate(const DatasetProfile &profile);

/// Parses a key=value profile description ('#' starts a comment):
///   type=flat|jagged  events=N  branches=N  model=uniform|gaussian|constant
///   width=1|2|4|8     lambda=X  seed=N
DatasetProfile parse_profile(const std::string &text);

/// Short identifier used in benchmark reports, e.g. "flat-2000x10-gaussian-w4-s42".
std::string profile_name(const DatasetProfile &profile);

} // namespace cbkt

#endif // CBKT_SYNTHGEN_HPP
