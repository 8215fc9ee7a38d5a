#pragma once

// Named example fans.

#include <string>
#include <string_view>
#include <vector>

#include "topfan/fan.hpp"

namespace topfan {

/// Names accepted by catalog_fan. "hirzebruch-A" takes any integer A.
std::vector<std::string> catalog_names();

/// A fixed finite corpus: every named entry, with hirzebruch-0 ... hirzebruch-3.
std::vector<std::string> catalog_corpus();

/// Throws UnknownCatalogEntry.
TopologicalFan catalog_fan(std::string_view name);

/// The ordinary fan of CP^n: rays e_1, ..., e_n, -(e_1 + ... + e_n).
TopologicalFan projective_space(int n);

/// The ordinary fan of the Hirzebruch surface: rays (1,0), (0,1), (-1,a), (0,-1).
TopologicalFan hirzebruch(long a);

}  // namespace topfan
