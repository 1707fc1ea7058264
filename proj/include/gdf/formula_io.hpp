#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gdf/bracket.hpp"

namespace gdf {

// Formula files hold named pattern blocks and one or more formulas:
//
//   # comment
//   pattern P
//   comp1: T1 H2
//   comp2: H1 T2
//   signs: 1:? 2:+
//
//   formula name
//   term -1/3 P
//
// Term lines before any `formula` line belong to a formula named
// `default_name`.  Patterns must be defined before they are referenced.
std::vector<Formula> parse_formula_file(std::string_view text,
                                        const std::string& default_name = "formula",
                                        const BracketConfig& cfg = {});

std::vector<Formula> load_formula_file(const std::filesystem::path& path,
                                       const BracketConfig& cfg = {});

GaussDiagram load_diagram_file(const std::filesystem::path& path);

// Writes patterns first (deduplicated by name), then formulas.
std::string write_formula_file(const std::vector<Formula>& formulas);

mpq_class parse_rational(std::string_view s);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace gdf
