#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "neargrace/tree.hpp"

namespace neargrace {

/// random | path | star | caterpillar | spider | binary | broom
const std::vector<std::string>& family_names();

/// Deterministic per (family, n, seed). Throws TreeError(kUnsupported) for an
/// unknown family name.
Tree gen_family(std::string_view family, int n, std::uint64_t seed);

Tree path_tree(int n);
Tree star_tree(int n);
/// Spine of about n / 8 vertices; every other vertex hangs off a seeded spine vertex.
Tree caterpillar_tree(int n, std::uint64_t seed);
/// Seeded number of legs of near-equal length around vertex 0.
Tree spider_tree(int n, std::uint64_t seed);
/// Heap order: the parent of i is (i - 1) / 2.
Tree binary_tree(int n);
/// Path on ceil(n / 2) vertices with the remaining vertices as leaves of its last vertex.
Tree broom_tree(int n);

}  // namespace neargrace
