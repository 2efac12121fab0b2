#pragma once

#include <string>
#include <utility>
#include <vector>

namespace iwt {

inline constexpr const char* kVersion = "0.1.0";

// Per-module versions recorded in CLI provenance headers.
inline std::vector<std::pair<std::string, std::string>> module_versions() {
    return {{"padic_core", "0.1.0"},   {"iwasawa_algebra", "0.1.0"}, {"cyclotomic_ext", "0.1.0"},
            {"logmatrix", "0.1.0"},    {"mazur_tate", "0.1.0"},      {"sharp_flat", "0.1.0"},
            {"bsd_analytics", "0.1.0"}, {"cli", "0.1.0"}};
}

}  // namespace iwt
