#pragma once

#include <filesystem>
#include <string>

#include "casimir/materials.hpp"

namespace casimir::materials {

/// Reads `{"material": {"<name>": {"form": ..., "eps_inf": ..., ...}}}`
/// (SI, rad/s) and overlays the entries on `base`.
MaterialCatalog load_catalog(const std::filesystem::path& path,
                             MaterialCatalog base = MaterialCatalog::builtin());
MaterialCatalog parse_catalog(const std::string& json_text,
                              MaterialCatalog base = MaterialCatalog::builtin());

/// Inverse of parse_catalog; only the fields used by each form are written.
std::string dump_catalog(const MaterialCatalog& catalog);

}  // namespace casimir::materials
