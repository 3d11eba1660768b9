#include "oblat/lattice_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace oblat {

namespace {

struct Scanner {
    const std::string& s;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Scanner(const std::string& text) : s(text) {}

    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }

    void advance() {
        if (s[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (!eof() && std::isspace((unsigned char)peek())) advance();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line, col, msg);
    }

    void expect(char c) {
        skip_ws();
        if (eof()) fail(std::string("expected '") + c + "', got end of input");
        if (peek() != c)
            fail(std::string("expected '") + c + "', got '" + peek() + "'");
        advance();
    }

    Int integer() {
        skip_ws();
        if (eof()) fail("expected integer, got end of input");
        int l = line, c = col;
        std::string tok;
        if (peek() == '-' || peek() == '+') {
            if (peek() == '-') tok += '-'; // mpz_set_str rejects a leading '+'
            advance();
        }
        if (eof() || !std::isdigit((unsigned char)peek()))
            throw ParseError(l, c, "expected integer");
        while (!eof() && std::isdigit((unsigned char)peek())) {
            tok += peek();
            advance();
        }
        return Int(tok);
    }
};

} // namespace

IntMat parse_lattice(const std::string& text) {
    Scanner sc(text);
    sc.expect('[');
    IntMat B;
    while (true) {
        sc.skip_ws();
        if (sc.eof()) sc.fail("unterminated matrix: expected '[' or ']'");
        if (sc.peek() == ']') {
            sc.advance();
            break;
        }
        if (sc.peek() != '[') sc.fail("expected row start '['");
        sc.advance();
        IntVec row;
        while (true) {
            sc.skip_ws();
            if (sc.eof()) sc.fail("unterminated row: expected entry or ']'");
            if (sc.peek() == ']') {
                sc.advance();
                break;
            }
            row.push_back(sc.integer());
        }
        if (!B.empty() && row.size() != B[0].size())
            sc.fail("row has " + std::to_string(row.size()) + " entries, expected " +
                    std::to_string(B[0].size()));
        B.push_back(std::move(row));
    }
    sc.skip_ws();
    if (!sc.eof()) sc.fail("trailing content after matrix");
    if (B.empty()) throw ParseError(1, 1, "matrix has no rows");
    return B;
}

IntMat parse_lattice(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_lattice(ss.str());
}

std::string render_lattice(const IntMat& B) {
    std::ostringstream out;
    out << "[";
    for (size_t i = 0; i < B.size(); ++i) {
        out << "[";
        for (size_t j = 0; j < B[i].size(); ++j) {
            if (j) out << " ";
            out << B[i][j].get_str();
        }
        out << "]\n";
    }
    out << "]";
    return out.str();
}

IntMat read_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, 0, "cannot open file: " + path);
    return parse_lattice(in);
}

void write_lattice_file(const std::string& path, const IntMat& B) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << render_lattice(B) << "\n";
}

} // namespace oblat
