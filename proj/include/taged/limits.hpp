#pragma once

#include <cstddef>

namespace taged {

/// Caps shared by every exhaustive routine. Exceeding one throws
/// ResourceLimit naming the cap.
struct Limits {
    std::size_t max_vertices = 10;
    std::size_t max_nodes = 100'000;
    /// Total number of terms held across all (state, size) buckets, also
    /// used as the ceiling on enumerated walks.
    std::size_t max_buckets = 1'000'000;
};

/// Selects the serial reference kernel or the OpenMP one. Both produce
/// identical results.
enum class Execution { serial, parallel };

}  // namespace taged
