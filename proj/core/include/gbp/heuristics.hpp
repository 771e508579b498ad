#pragma once

#include <cstdint>

#include "gbp/model.hpp"

namespace gbp {

// BalancedColoring: split group 0 into v_0 color classes, pad to v_max
// classes, then add every later item (groups in index order, items sorted
// non-increasing) to the minimum-total-size class without that group, lowest
// class index on ties. Each class is First-Fit packed into its own bins, in
// class insertion order. Uses at most ceil(max{2 S(I), S(I) + v_max}) bins.
Packing balanced_coloring(const Instance& inst);

enum class ItemOrder { Input, Decreasing, Random };

// Each item goes to the first bin with room and no group-mate, else a new bin.
Packing first_fit_conflicts(const Instance& inst, ItemOrder order,
                            std::uint64_t seed = 0);

}  // namespace gbp
