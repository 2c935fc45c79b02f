#pragma once

#include <cstdint>

namespace brauerk {

  // Resource limits shared by every search and construction.
  struct Limits {
    std::uint64_t max_ring_order   = 256;
    std::uint64_t max_module_order = 65536;
    std::uint64_t gamma_budget     = 50000;
    std::uint64_t iso_node_budget  = 1000000;
    // Cells of one dimension of a diagonal nerve that may be materialized.
    std::uint64_t nerve_cell_budget = 4000000;
  };

  inline Limits const& default_limits() {
    static Limits const limits{};
    return limits;
  }

}  // namespace brauerk
