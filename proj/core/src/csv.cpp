#include "loadsift/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>

namespace loadsift::csv {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

std::string trim(const std::string& field) {
    std::size_t a = 0;
    std::size_t b = field.size();
    while (a < b && (field[a] == ' ' || field[a] == '\t')) ++a;
    while (b > a && (field[b - 1] == ' ' || field[b - 1] == '\t' ||
                     field[b - 1] == '\r' || field[b - 1] == '\n'))
        --b;
    return field.substr(a, b - a);
}

bool parse_double(const std::string& field, double& out) {
    const std::string t = trim(field);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return errno == 0 && end == t.c_str() + t.size();
}

bool parse_int(const std::string& field, int& out) {
    const std::string t = trim(field);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (errno != 0 || end != t.c_str() + t.size()) return false;
    out = static_cast<int>(v);
    return true;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

} // namespace loadsift::csv
