#pragma once

#include <string>

#include "dynwalk/dsl/ast.hpp"
#include "dynwalk/types.hpp"

namespace dynwalk::dsl {

// Syntax error or reference to an undeclared identifier, with position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// Parses a weight function source. Loop constructs parse successfully but
// mark the program, which the analyzer later rejects with flag NONE.
Program parse(const std::string& source, const std::string& source_name = "<inline>");

Program parse_file(const std::string& path);

} // namespace dynwalk::dsl
