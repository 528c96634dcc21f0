/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_BENCH_HPP
#define CBKT_BENCH_HPP

#include "cbkt/container.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cbkt {

/// One measured matrix cell. Sizes count block bodies only, so a stored
/// cell reports ratio exactly 1. Throughputs are uncompressed MB (10^6
/// bytes) per second; timing columns are hardware-dependent and excluded
/// from determinism checks.
struct BenchmarkRecord {
   std::string dataset;
   CodecId codec = CodecId::kStore;
   int level = 0;
   PrecondKind precond = PrecondKind::kNone;
   std::uint64_t uncompressed_bytes = 0;
   std::uint64_t compressed_bytes = 0;
   double ratio = 0.0;
   double compress_mbps = 0.0;
   double decompress_mbps = 0.0;
   std::uint32_t repetitions = 0;
   std::string method = "median/steady_clock";
   std::string error; // non-empty marks a failed cell

   bool ok() const { return error.empty(); }
};

struct BenchOptions {
   std::uint32_t repetitions = 3; // >= 3
   std::uint32_t warmup = 1;      // >= 1
   std::size_t target_basket_bytes = kDefaultBasketBytes;
};

/// Runs every settings cell over the dataset's baskets, single-threaded.
/// Compression is timed over all basket payloads per repetition;
/// decompression is timed on the already-compressed blocks. The median
/// repetition is reported. A failing cell produces an error-marked record
/// instead of aborting the matrix.
std::vector<BenchmarkRecord> run_matrix(const Dataset &dataset, const std::string &dataset_id,
                                        const std::vector<CompressionSettings> &cells,
                                        const BenchOptions &options);

enum class ReportFormat { kCsv, kMarkdown };

/// CSV columns: dataset,codec,level,precond,unc_bytes,comp_bytes,ratio,
/// comp_MBps,decomp_MBps,reps,status. Markdown mirrors them.
std::string emit_report(const std::vector<BenchmarkRecord> &records, ReportFormat format);

/// Dictionary-size experiment: per target size, trains a dictionary on the
/// samples and totals the compressed bytes of every sample with and
/// without it.
struct DictSweepPoint {
   std::size_t target_size = 0;
   std::size_t trained_size = 0;
   std::uint64_t total_without = 0;
   std::uint64_t total_with = 0;
};

std::vector<DictSweepPoint> dict_sweep(const std::vector<Bytes> &samples,
                                       const std::vector<std::size_t> &sizes, CodecId codec,
                                       int level);

} // namespace cbkt

#endif // CBKT_BENCH_HPP
