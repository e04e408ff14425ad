#pragma once

/// Locale-independent CSV output.
///
/// Numeric fields carry 17 significant digits, enough to reproduce any IEEE
/// double exactly on re-parse, and files are replaced atomically (written to
/// a temporary in the same directory, then renamed) so a crash can never
/// leave a half-written result behind.

#include <filesystem>
#include <string>
#include <vector>

namespace lifshitz {

/// Formats a double with 17 significant digits, independent of locale.
/// NaN and infinities render as "nan", "inf", "-inf".
std::string format_double(double value);

/// Writes header + rows as comma-separated lines, atomically.
/// Throws std::runtime_error on any I/O failure.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace lifshitz
