#ifndef OBLAT_ERRORS_HPP
#define OBLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oblat {

struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& what = "SingularSystem")
        : std::runtime_error(what) {}
};

struct RankDeficient : std::runtime_error {
    explicit RankDeficient(const std::string& what = "RankDeficient")
        : std::runtime_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what = "DimensionMismatch")
        : std::invalid_argument(what) {}
};

struct OracleCapExceeded : std::runtime_error {
    explicit OracleCapExceeded(const std::string& what = "OracleCapExceeded")
        : std::runtime_error(what) {}
};

struct EntryOverflowGuard : std::runtime_error {
    explicit EntryOverflowGuard(const std::string& what = "EntryOverflowGuard")
        : std::runtime_error(what) {}
};

struct NotObtuse : std::runtime_error {
    explicit NotObtuse(const std::string& what = "NotObtuse")
        : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : std::runtime_error("parse error at line " + std::to_string(line_) +
                             ", column " + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

} // namespace oblat

#endif
