#include "dynpair/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dynpair/common.hpp"

namespace dynpair {

std::string format_real(double value) {
    if (std::abs(value) < 5e-13) value = 0.0;  // avoid "-0.000000000000"
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", value);
    return buf;
}

std::string content_digest(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace dynpair
