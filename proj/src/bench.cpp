/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cbkt/bench.hpp"

#include "cbkt/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace cbkt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
   return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> values)
{
   std::sort(values.begin(), values.end());
   const std::size_t n = values.size();
   return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

struct Payload {
   Bytes bytes;
   std::uint8_t region_width = 1; // preconditioner stride for this region
};

std::vector<Payload> collect_payloads(const Dataset &dataset, std::size_t target_basket_bytes)
{
   std::vector<Payload> payloads;
   for (std::size_t b = 0; b < dataset.schema.branches.size(); ++b) {
      const BranchDescriptor &branch = dataset.schema.branches[b];
      for (Basket &basket : basketize(dataset.columns[b], branch, target_basket_bytes,
                                      static_cast<std::uint32_t>(b))) {
         payloads.push_back({std::move(basket.data), branch.element.width});
         if (basket.offsets)
            payloads.push_back({std::move(*basket.offsets), 4});
      }
   }
   return payloads;
}

std::string csv_safe(std::string text)
{
   std::replace(text.begin(), text.end(), ',', ';');
   std::replace(text.begin(), text.end(), '\n', ' ');
   return text;
}

std::string format_row(const BenchmarkRecord &r, const char *sep)
{
   char num[64];
   std::ostringstream os;
   os << r.dataset << sep << to_string(r.codec) << sep << r.level << sep << to_string(r.precond)
      << sep << r.uncompressed_bytes << sep << r.compressed_bytes;
   std::snprintf(num, sizeof num, "%.6f", r.ratio);
   os << sep << num;
   std::snprintf(num, sizeof num, "%.3f", r.compress_mbps);
   os << sep << num;
   std::snprintf(num, sizeof num, "%.3f", r.decompress_mbps);
   os << sep << num;
   os << sep << r.repetitions << sep << (r.ok() ? "ok" : "error: " + csv_safe(r.error));
   return os.str();
}

} // namespace

std::vector<BenchmarkRecord> run_matrix(const Dataset &dataset, const std::string &dataset_id,
                                        const std::vector<CompressionSettings> &cells,
                                        const BenchOptions &options)
{
   if (options.repetitions < 3)
      raise(Errc::InvalidSettings, "repetitions must be >= 3");
   if (options.warmup < 1)
      raise(Errc::InvalidSettings, "warmup must be >= 1");

   const std::vector<Payload> payloads = collect_payloads(dataset, options.target_basket_bytes);
   std::uint64_t total_unc = 0;
   for (const auto &p : payloads)
      total_unc += p.bytes.size();

   std::vector<BenchmarkRecord> records;
   records.reserve(cells.size());

   for (const CompressionSettings &cell : cells) {
      BenchmarkRecord rec;
      rec.dataset = dataset_id;
      rec.codec = cell.codec;
      rec.level = cell.level;
      rec.precond = cell.precond.kind;
      rec.repetitions = options.repetitions;
      rec.uncompressed_bytes = total_unc;

      try {
         // Strides follow the region each payload came from.
         std::vector<CompressionSettings> bound;
         bound.reserve(payloads.size());
         for (const auto &p : payloads) {
            CompressionSettings s = cell;
            s.precond = cell.precond.for_width(p.region_width);
            s.validate();
            bound.push_back(std::move(s));
         }

         auto compress_all = [&] {
            std::vector<CompressedBlock> blocks;
            blocks.reserve(payloads.size());
            for (std::size_t i = 0; i < payloads.size(); ++i)
               blocks.push_back(compress_block(payloads[i].bytes, bound[i]));
            return blocks;
         };

         std::vector<CompressedBlock> blocks;
         for (std::uint32_t w = 0; w < options.warmup; ++w)
            blocks = compress_all();

         std::vector<double> comp_mbps;
         for (std::uint32_t i = 0; i < options.repetitions; ++i) {
            const auto start = Clock::now();
            blocks = compress_all();
            const double dt = std::max(seconds_since(start), 1e-9);
            comp_mbps.push_back(static_cast<double>(total_unc) / 1e6 / dt);
         }

         DictionaryTable dicts;
         if (cell.dictionary)
            dicts.add(cell.dictionary);
         auto decompress_all = [&] {
            for (const auto &block : blocks)
               decompress_block(block, dicts);
         };

         for (std::uint32_t w = 0; w < options.warmup; ++w)
            decompress_all();
         std::vector<double> decomp_mbps;
         for (std::uint32_t i = 0; i < options.repetitions; ++i) {
            const auto start = Clock::now();
            decompress_all();
            const double dt = std::max(seconds_since(start), 1e-9);
            decomp_mbps.push_back(static_cast<double>(total_unc) / 1e6 / dt);
         }

         std::uint64_t total_comp = 0;
         for (const auto &block : blocks)
            total_comp += block.body.size();

         rec.compressed_bytes = total_comp;
         rec.ratio = total_comp == 0
                        ? 1.0
                        : static_cast<double>(total_unc) / static_cast<double>(total_comp);
         rec.compress_mbps = median(comp_mbps);
         rec.decompress_mbps = median(decomp_mbps);
      } catch (const Error &e) {
         rec.error = e.what();
      }
      records.push_back(std::move(rec));
   }
   return records;
}

std::string emit_report(const std::vector<BenchmarkRecord> &records, ReportFormat format)
{
   if (records.empty())
      raise(Errc::EmptyInput, "no benchmark records to report");

   std::ostringstream os;
   if (format == ReportFormat::kCsv) {
      os << "dataset,codec,level,precond,unc_bytes,comp_bytes,ratio,comp_MBps,decomp_MBps,reps,status\n";
      for (const auto &r : records)
         os << format_row(r, ",") << "\n";
   } else {
      os << "| dataset | codec | level | precond | unc_bytes | comp_bytes | ratio | comp_MBps | decomp_MBps | reps | status |\n";
      os << "|---|---|---|---|---|---|---|---|---|---|---|\n";
      for (const auto &r : records)
         os << "| " << format_row(r, " | ") << " |\n";
   }
   return os.str();
}

std::vector<DictSweepPoint> dict_sweep(const std::vector<Bytes> &samples,
                                       const std::vector<std::size_t> &sizes, CodecId codec,
                                       int level)
{
   std::vector<DictSweepPoint> points;
   points.reserve(sizes.size());

   CompressionSettings plain;
   plain.codec = codec;
   plain.level = level;

   std::uint64_t total_without = 0;
   for (const auto &s : samples)
      total_without += compress_block(s, plain).body.size();

   for (std::size_t target : sizes) {
      DictSweepPoint point;
      point.target_size = target;
      point.total_without = total_without;

      auto dict = std::make_shared<Dictionary>(train_dictionary(samples, target, codec));
      point.trained_size = dict->bytes.size();

      CompressionSettings with = plain;
      with.dictionary = dict;
      for (const auto &s : samples)
         point.total_with += compress_block(s, with).body.size();
      points.push_back(point);
   }
   return points;
}

} // namespace cbkt
