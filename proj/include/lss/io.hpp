#pragma once

// Family files: JSON with explicit dimension and row-major entries, an
// optional two-block structure, and an optional alpha for generated
// families. Doubles round-trip exactly (shortest-representation emitter).

#include <optional>
#include <string>

#include "lss/classifier.hpp"
#include "lss/family.hpp"

namespace lss {

struct FamilyFile {
  MatrixFamily family;
  std::optional<BlockFamily> blocks;
  std::optional<double> alpha;
};

FamilyFile parse_family_json(const std::string& text);
std::string family_file_json(const FamilyFile& ff);

FamilyFile load_family_file(const std::string& path);
void save_family_file(const FamilyFile& ff, const std::string& path);

// "pi*sqrt2", "pi*phi", or a numeric literal, resolved at full double
// precision (the products are computed in double-double and rounded once).
double parse_alpha_token(const std::string& token);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace lss
