/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cbkt contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cbkt/errors.hpp"

namespace cbkt {

const char *to_string(Errc code)
{
   switch (code) {
   case Errc::ValueOutOfRange: return "ValueOutOfRange";
   case Errc::EmptyInput: return "EmptyInput";
   case Errc::MalformedOffsets: return "MalformedOffsets";
   case Errc::LengthMismatch: return "LengthMismatch";
   case Errc::InvalidLevel: return "InvalidLevel";
   case Errc::InvalidSettings: return "InvalidSettings";
   case Errc::PayloadTooLarge: return "PayloadTooLarge";
   case Errc::ChecksumMismatch: return "ChecksumMismatch";
   case Errc::CorruptBody: return "CorruptBody";
   case Errc::UnknownCodec: return "UnknownCodec";
   case Errc::UnknownPreconditioner: return "UnknownPreconditioner";
   case Errc::MissingDictionary: return "MissingDictionary";
   case Errc::InsufficientSamples: return "InsufficientSamples";
   case Errc::TrainingFailed: return "TrainingFailed";
   case Errc::InvalidProfile: return "InvalidProfile";
   case Errc::IoFailure: return "IoFailure";
   case Errc::SchemaMismatch: return "SchemaMismatch";
   case Errc::BadMagic: return "BadMagic";
   case Errc::TruncatedFile: return "TruncatedFile";
   }
   return "UnknownError";
}

} // namespace cbkt
