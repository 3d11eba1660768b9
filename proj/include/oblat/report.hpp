#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "oblat/linalg.hpp"

namespace oblat {

// Ordered key/value run summary printed by every CLI subcommand.  The
// verification entries (obtuseness, lattice equality) are recomputed
// from the final matrices right before emission, never copied from
// intermediate pipeline state.
struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> lines;

    void add(const std::string& key, const std::string& value) {
        lines.emplace_back(key, value);
    }
    void add(const std::string& key, long value) {
        lines.emplace_back(key, std::to_string(value));
    }
    void add(const std::string& key, unsigned long value) {
        lines.emplace_back(key, std::to_string(value));
    }
};

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

// Digest of the canonical text rendering; identifies the input matrix.
std::string digest_lattice(const IntMat& B);

void print_report(std::ostream& out, const RunReport& report);

} // namespace oblat
