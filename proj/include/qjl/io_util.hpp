#pragma once

#include <string>
#include <vector>

#include "qjl/models.hpp"

namespace qjl {

/// Fixed-format double (17 significant digits, locale-free) so CSV output is
/// byte-stable across runs and thread counts.
std::string fmt_double(double v);

/// RFC-style CSV: quote fields containing commas/quotes/newlines, doubled quotes inside.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Build a model from a JSON value: either a named constructor
///   {"name": "amo", "lambda": 3.0, "omega": 0.6180339887498949}
/// (names: amo, xy, skewshift_dual, dirac_harper, aa, ab, coupled_harper, longrange)
/// or an explicit coefficient table
///   {"name": "custom", "d": 2, "omega": ..., "eta": ..., "B": [...], "V": [...]}
/// with coefficient entries {"k": [1], "row": 0, "col": 1, "re": 0.5, "im": 0.0}.
BlockModel model_from_json_text(const std::string& json_text);
BlockModel model_from_json_file(const std::string& path);

}  // namespace qjl
