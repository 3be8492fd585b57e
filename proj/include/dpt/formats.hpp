#pragma once

#include <string>

#include "dpt/boolean_function.hpp"
#include "dpt/sign_matrix.hpp"

namespace dpt {

// "n=<int>" then one "bitstring value" line per defined point; character i of the bitstring is bit i.
PartialBooleanFunction parse_truth_table(const std::string& text);
std::string format_truth_table(const PartialBooleanFunction& f);

// CSV rows with cells in {-1, 1, *}.
PartialSignMatrix parse_matrix_csv(const std::string& text);
std::string format_matrix_csv(const PartialSignMatrix& m);

std::string read_file(const std::string& path);

}  // namespace dpt
