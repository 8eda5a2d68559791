#include "loadsift/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "loadsift/errors.hpp"

namespace fs = std::filesystem;

namespace loadsift::io {

bool file_exists(const std::string& path) {
    std::error_code ec;
    return fs::is_regular_file(path, ec);
}

std::string read_text_file(const std::string& path, const std::string& cause) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(cause, path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void ensure_directory(const std::string& path) {
    if (path.empty()) return;
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) fail("io-error", "cannot create directory " + path + ": " + ec.message());
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const fs::path target(path);
    if (target.has_parent_path()) ensure_directory(target.parent_path().string());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail("io-error", "cannot open " + tmp.string() + " for writing");
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        if (!out) fail("io-error", "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) fail("io-error", "cannot rename " + tmp.string() + " to " + path +
                                 ": " + ec.message());
}

} // namespace loadsift::io
