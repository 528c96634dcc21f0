/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cbkt/synthgen.hpp"

#include "cbkt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cbkt {

namespace {

bool valid_width(std::uint8_t w)
{
   return w == 1 || w == 2 || w == 4 || w == 8;
}

std::uint64_t width_mask(std::uint8_t width)
{
   return width == 8 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (8 * width)) - 1);
}

// splitmix64 step, used only to derive independent engine seeds per branch.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t branch)
{
   std::uint64_t z = seed + (branch + 1) * 0x9E3779B97F4A7C15ull;
   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
   z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
   return z ^ (z >> 31);
}

// The mt19937_64 sequence is pinned by the standard; the quantile maps
// below are spelled out here because std::*_distribution is not portable
// across library implementations, and profiles promise bit-identical output.
class ValueSource {
public:
   ValueSource(std::mt19937_64 &engine, ValueModel model, std::uint8_t width)
      : fEngine(engine), fModel(model), fWidth(width)
   {
      // 16 significant bits in the field unless the field is narrower.
      fSigBits = std::min<unsigned>(16, 8u * width);
      if (model == ValueModel::kConstant)
         fConstant = fEngine() & width_mask(width);
   }

   std::uint64_t next()
   {
      switch (fModel) {
      case ValueModel::kUniform: return fEngine() & width_mask(fWidth);
      case ValueModel::kConstant: return fConstant;
      case ValueModel::kGaussianQuantized: return gaussian_quantized();
      }
      return 0;
   }

private:
   // Sum of 12 uniform draws, recentred: integer-only, so identical on
   // every platform. Mean 2^(sig-1), sigma about 2^sig/6, clamped.
   std::uint64_t gaussian_quantized()
   {
      const std::uint64_t top = (std::uint64_t{1} << fSigBits) - 1;
      std::int64_t sum = 0;
      for (int i = 0; i < 12; ++i)
         sum += static_cast<std::int64_t>(fEngine() & top);
      const std::int64_t centered = (sum - 6 * static_cast<std::int64_t>(top)) / 6;
      const std::int64_t value = centered + static_cast<std::int64_t>(top / 2 + 1);
      return static_cast<std::uint64_t>(std::clamp<std::int64_t>(value, 0, static_cast<std::int64_t>(top)));
   }

   std::mt19937_64 &fEngine;
   ValueModel fModel;
   std::uint8_t fWidth;
   unsigned fSigBits;
   std::uint64_t fConstant = 0;
};

// Knuth's product-of-uniforms draw; double multiplies are IEEE-exact, so
// the sequence is platform-stable.
std::uint32_t poisson_draw(std::mt19937_64 &engine, double exp_neg_lambda)
{
   std::uint32_t k = 0;
   double p = 1.0;
   do {
      ++k;
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      p *= u;
   } while (p > exp_neg_lambda);
   return k - 1;
}

std::string branch_name(std::uint32_t i)
{
   return "b" + std::to_string(i);
}

} // namespace

const char *to_string(ValueModel model)
{
   switch (model) {
   case ValueModel::kUniform: return "uniform";
   case ValueModel::kGaussianQuantized: return "gaussian";
   case ValueModel::kConstant: return "constant";
   }
   return "unknown";
}

Dataset generate(const DatasetProfile &profile)
{
   Dataset dataset;

   if (const auto *flat = std::get_if<FlatTreeProfile>(&profile.tree)) {
      if (flat->n_events < 1 || flat->n_branches < 1)
         raise(Errc::InvalidProfile, "flat tree needs at least one event and one branch");
      if (!valid_width(flat->width))
         raise(Errc::InvalidProfile, "width must be 1, 2, 4 or 8");

      for (std::uint32_t b = 0; b < flat->n_branches; ++b) {
         dataset.schema.branches.push_back(
            {branch_name(b), ElementKind::fixed_scalar(flat->width)});
         std::mt19937_64 engine(mix_seed(profile.seed, b));
         ValueSource values(engine, flat->model, flat->width);
         ScalarColumn column(flat->n_events);
         for (auto &v : column)
            v = values.next();
         dataset.columns.emplace_back(std::move(column));
      }
      return dataset;
   }

   const auto &jagged = std::get<JaggedTreeProfile>(profile.tree);
   if (jagged.n_events < 1 || jagged.n_branches < 1)
      raise(Errc::InvalidProfile, "jagged tree needs at least one event and one branch");
   if (!(jagged.lambda > 0.0))
      raise(Errc::InvalidProfile, "lambda must be > 0");
   if (jagged.lambda > 64.0)
      raise(Errc::InvalidProfile, "lambda above 64 is not supported");
   if (!valid_width(jagged.elem_width))
      raise(Errc::InvalidProfile, "width must be 1, 2, 4 or 8");

   const double exp_neg_lambda = std::exp(-jagged.lambda);
   for (std::uint32_t b = 0; b < jagged.n_branches; ++b) {
      dataset.schema.branches.push_back(
         {branch_name(b), ElementKind::jagged_array(jagged.elem_width)});
      std::mt19937_64 engine(mix_seed(profile.seed, b));
      ValueSource values(engine, jagged.model, jagged.elem_width);
      JaggedColumn column(jagged.n_events);
      for (auto &entry : column) {
         entry.resize(poisson_draw(engine, exp_neg_lambda));
         for (auto &v : entry)
            v = values.next();
      }
      dataset.columns.emplace_back(std::move(column));
   }
   return dataset;
}

namespace {

ValueModel model_from_string(const std::string &name)
{
   if (name == "uniform") return ValueModel::kUniform;
   if (name == "gaussian" || name == "gaussian-quantized") return ValueModel::kGaussianQuantized;
   if (name == "constant") return ValueModel::kConstant;
   raise(Errc::InvalidProfile, "unknown value model '" + name + "'");
}

std::uint64_t parse_u64(const std::string &key, const std::string &value)
{
   try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(value, &used);
      if (used != value.size())
         throw std::invalid_argument(value);
      return v;
   } catch (const std::exception &) {
      raise(Errc::InvalidProfile, "bad integer for " + key + ": '" + value + "'");
   }
}

double parse_f64(const std::string &key, const std::string &value)
{
   try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size())
         throw std::invalid_argument(value);
      return v;
   } catch (const std::exception &) {
      raise(Errc::InvalidProfile, "bad number for " + key + ": '" + value + "'");
   }
}

std::string trim(const std::string &s)
{
   const auto begin = s.find_first_not_of(" \t\r");
   if (begin == std::string::npos)
      return "";
   const auto end = s.find_last_not_of(" \t\r");
   return s.substr(begin, end - begin + 1);
}

} // namespace

DatasetProfile parse_profile(const std::string &text)
{
   bool have_type = false;
   bool is_jagged = false;
   std::uint64_t events = 2000;
   std::uint64_t branches = 10;
   ValueModel model = ValueModel::kGaussianQuantized;
   std::uint64_t width = 4;
   double lambda = 3.0;
   std::uint64_t seed = 42;

   std::istringstream in(text);
   std::string line;
   while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos)
         line.erase(hash);
      line = trim(line);
      if (line.empty())
         continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
         raise(Errc::InvalidProfile, "expected key=value, got '" + line + "'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));

      if (key == "type") {
         have_type = true;
         if (value == "flat")
            is_jagged = false;
         else if (value == "jagged")
            is_jagged = true;
         else
            raise(Errc::InvalidProfile, "type must be flat or jagged, got '" + value + "'");
      } else if (key == "events") {
         events = parse_u64(key, value);
      } else if (key == "branches") {
         branches = parse_u64(key, value);
      } else if (key == "model") {
         model = model_from_string(value);
      } else if (key == "width") {
         width = parse_u64(key, value);
      } else if (key == "lambda") {
         lambda = parse_f64(key, value);
      } else if (key == "seed") {
         seed = parse_u64(key, value);
      } else {
         raise(Errc::InvalidProfile, "unknown key '" + key + "'");
      }
   }
   if (!have_type)
      raise(Errc::InvalidProfile, "profile needs type=flat or type=jagged");
   if (width > 8 || !valid_width(static_cast<std::uint8_t>(width)))
      raise(Errc::InvalidProfile, "width must be 1, 2, 4 or 8");
   if (branches == 0 || branches > 0xFFFF)
      raise(Errc::InvalidProfile, "branches outside 1..65535");

   DatasetProfile profile;
   profile.seed = seed;
   if (is_jagged) {
      JaggedTreeProfile p;
      p.n_events = events;
      p.n_branches = static_cast<std::uint32_t>(branches);
      p.lambda = lambda;
      p.model = model;
      p.elem_width = static_cast<std::uint8_t>(width);
      profile.tree = p;
   } else {
      FlatTreeProfile p;
      p.n_events = events;
      p.n_branches = static_cast<std::uint32_t>(branches);
      p.model = model;
      p.width = static_cast<std::uint8_t>(width);
      profile.tree = p;
   }
   return profile;
}

std::string profile_name(const DatasetProfile &profile)
{
   std::ostringstream os;
   if (const auto *flat = std::get_if<FlatTreeProfile>(&profile.tree)) {
      os << "flat-" << flat->n_events << "x" << flat->n_branches << "-"
         << to_string(flat->model) << "-w" << int(flat->width);
   } else {
      const auto &j = std::get<JaggedTreeProfile>(profile.tree);
      os << "jagged-" << j.n_events << "x" << j.n_branches << "-lam" << j.lambda << "-"
         << to_string(j.model) << "-w" << int(j.elem_width);
   }
   os << "-s" << profile.seed;
   return os.str();
}

} // namespace cbkt
