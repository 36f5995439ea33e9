#pragma once

#include <string>
#include <vector>

#include "minred/dynamics.hpp"
#include "minred/forms.hpp"
#include "minred/mat2.hpp"

namespace minred {

/// Floats are printed with 12 significant digits everywhere (reproducible
/// golden files).
std::string fmt12(double v);

/// Integers as JSON numbers when they fit in 64 bits, decimal strings
/// otherwise.
std::string json_int(const Int& v);

/// Forms serialize as arrays of decimal integer strings: ["-2","2","3","127"].
std::string json_form(const BinaryForm& f);

/// [[a,b],[c,d]]
std::string json_mat(const Mat2& m);

/// {"num": [...], "den": [...]}
std::string json_model(const EndoModel& f);

BinaryForm parse_form_json(const std::string& json_array);
EndoModel parse_model_json(const std::string& json_object);

/// Comma-separated decimal integer list (whitespace tolerated).
std::vector<Int> parse_coeff_list(const std::string& text);

}  // namespace minred
