#pragma once

#include <string>

namespace loadsift::io {

bool file_exists(const std::string& path);

/// Reads a whole file; throws Error(cause, path) when missing or unreadable.
std::string read_text_file(const std::string& path, const std::string& cause);

/// Writes via a temp file in the same directory followed by a rename, so a
/// crash never leaves a half-written artifact. Parent directories are created.
void atomic_write_file(const std::string& path, const std::string& content);

void ensure_directory(const std::string& path);

} // namespace loadsift::io
