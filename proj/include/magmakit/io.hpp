#pragma once

// Text formats for presentations (.pres) and E-forms (.eform).
//
//   gens: a b c            eform:
//   rel: a+b = b           map: a -> a
//   # comment              map: b -> a+b

#include <filesystem>
#include <string>
#include <string_view>

#include "magmakit/presentation.hpp"

namespace magmakit {

/// Throws ParseError (with 1-based line and column) on malformed input.
Presentation parse_presentation(std::string_view text);
EForm parse_eform(std::string_view text);

std::string format_presentation(Presentation const& p);
std::string format_eform(EForm const& e);

/// Whole-file helpers; throw std::runtime_error if the file cannot be read.
std::string read_file(std::filesystem::path const& path);
Presentation load_presentation(std::filesystem::path const& path);
EForm load_eform(std::filesystem::path const& path);

}  // namespace magmakit
