#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "mfgl/hamiltonians.hpp"

namespace mfgl::cli {

/// {"type": "curie_weiss", "beta": 2, "n": 8} and friends. Matrices are
/// arrays of rows; subsets are sorted index lists.
HamiltonianSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json spec_to_json(const HamiltonianSpec& spec);

HamiltonianSpec load_spec(const std::filesystem::path& path);

}  // namespace mfgl::cli
