#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gdf/bracket.hpp"
#include "gdf/diagram.hpp"

namespace gdf {

enum class Family { L_mn, hopf, unlink, twist_chain };

struct FamilySpec {
  Family family = Family::unlink;
  // L_mn: odd m, n >= 1.  twist_chain: m = full twists (>= 1).
  int m = 1;
  int n = 1;
  // hopf: the two crossing signs.  twist_chain: sign of every crossing.
  Sign first = Sign::plus;
  Sign second = Sign::plus;
};

std::string to_string(Family f);
Family parse_family(const std::string& s);
std::string describe(const FamilySpec& spec);

// Throws std::invalid_argument for invalid parameters.
GaussDiagram generate(const FamilySpec& spec);

// Gauss diagram of the closure of a braid on `strands` strands.  Letter +i
// is sigma_i (strand at position i passes over, positive crossing), -i its
// inverse.  The closure must have exactly two components; the one through
// position 1 becomes the first circle.
GaussDiagram braid_closure(int strands, const std::vector<int>& word);

// Circles and crossing signs of a plat closure with any number of
// components, arrows numbered by letter position from 1.
struct PlatCircles {
  std::vector<CircleSeq> circles;
  std::map<int, Sign> signs;
};
PlatCircles plat_circles(int strands, const std::vector<int>& word);

// Gauss diagram of the plat closure of a word on an even number of
// strands: caps join positions (1,2), (3,4), ... above and below the word.
// Letters are read as in braid_closure; crossing signs follow from the
// orientation each passage gets when the components are traversed.
GaussDiagram plat_closure(int strands, const std::vector<int>& word);

GaussDiagram make_L_mn(int m, int n);
GaussDiagram make_hopf(Sign first, Sign second);
GaussDiagram make_twist_chain(int twists, Sign sign);

// Seeds used by the invariance fuzzers: unlink, the four Hopf diagrams,
// L(1,1), L(3,1), L(1,3), L(3,3).
std::vector<std::pair<std::string, GaussDiagram>> standard_seeds();

// Seeds for the invariant solver: the standard seeds, twist chains with
// 1..3 twists of either sign, and `closures` random braid closures plus as
// many random plat closures, drawn from `seed`.
std::vector<GaussDiagram> solver_seeds(std::uint64_t seed, std::size_t closures = 20);

struct Table1Row {
  int m = 0;
  int n = 0;
  std::string formula;
  BracketValue value;
  BracketValue expected;
};

// Values of every formula on L(m, n) for all odd m, n <= max_param, with
// the closed-form values expected for the named formulas of the shipped set
// (expected is only meaningful when has_expected(formula) holds).
std::vector<Table1Row> table1_report(const std::vector<Formula>& formulas,
                                     int max_param);
bool has_expected(const std::string& formula_name);
BracketValue expected_value(const std::string& formula_name, int m, int n);

std::string table1_csv(const std::vector<Table1Row>& rows);
std::string table1_json(const std::vector<Table1Row>& rows);

}  // namespace gdf
