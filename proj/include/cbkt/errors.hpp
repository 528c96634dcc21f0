/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef CBKT_ERRORS_HPP
#define CBKT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cbkt {

enum class Errc {
   ValueOutOfRange,
   EmptyInput,
   MalformedOffsets,
   LengthMismatch,
   InvalidLevel,
   InvalidSettings,
   PayloadTooLarge,
   ChecksumMismatch,
   CorruptBody,
   UnknownCodec,
   UnknownPreconditioner,
   MissingDictionary,
   InsufficientSamples,
   TrainingFailed,
   InvalidProfile,
   IoFailure,
   SchemaMismatch,
   BadMagic,
   TruncatedFile,
};

const char *to_string(Errc code);

class Error : public std::runtime_error {
public:
   Error(Errc code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), fCode(code)
   {
   }

   Errc code() const { return fCode; }

private:
   Errc fCode;
};

[[noreturn]] inline void raise(Errc code, const std::string &what)
{
   throw Error(code, what);
}

} // namespace cbkt

#endif // CBKT_ERRORS_HPP
