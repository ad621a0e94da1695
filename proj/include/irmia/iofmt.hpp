#pragma once

#include "irmia/model.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace irmia {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& msg);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Reads the line-based .irmia format without validating the result.
Description parse_description(std::string_view text);
// parse_description followed by validation; throws ParseError or InvalidAutomaton.
IrMia parse(std::string_view text);
IrMia load_file(const std::string& path);

std::string serialize(const IrMia& a);
void save_file(const IrMia& a, const std::string& path);
std::string to_dot(const IrMia& a);

// Name as written in the format: bare when possible, quoted otherwise.
std::string format_name(const std::string& n);

}  // namespace irmia
