#pragma once

#include <iosfwd>
#include <string>

#include "oblat/errors.hpp"
#include "oblat/linalg.hpp"

namespace oblat {

// fplll-style matrix text: "[[1 2 3]\n[4 5 6]\n]".  Rows are basis
// vectors.  Whitespace between tokens is free-form; entries are
// arbitrary-precision signed decimal integers.
IntMat parse_lattice(const std::string& text);
IntMat parse_lattice(std::istream& in);

std::string render_lattice(const IntMat& B);

IntMat read_lattice_file(const std::string& path);
void write_lattice_file(const std::string& path, const IntMat& B);

} // namespace oblat
