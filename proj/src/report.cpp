#include "oblat/report.hpp"

#include <ostream>

#include "oblat/lattice_io.hpp"

namespace oblat {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

std::string digest_lattice(const IntMat& B) {
    return hex64(fnv1a64(render_lattice(B)));
}

void print_report(std::ostream& out, const RunReport& report) {
    out << "== oblat " << report.command << " ==\n";
    for (const auto& [key, value] : report.lines)
        out << key << ": " << value << "\n";
}

} // namespace oblat
