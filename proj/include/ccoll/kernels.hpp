#pragma once

// Block emission and candidate materialization. Each kernel has a serial reference
// and an OpenMP variant that must produce identical output.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

#include "ccoll/collection.hpp"

namespace ccoll::kernels {

/// One (x1, x2) work item: an ordered input pair for the quadratic builder, or the
/// representatives (a_k, b_k) of a WSPD pair for the linear builder.
struct PairItem {
    std::uint32_t a;
    std::uint32_t b;
    double dist;
};

inline constexpr std::size_t kNoViolation = std::numeric_limits<std::size_t>::max();

/// I blocks per item for the quadratic builder, 2I for the linear one.
std::size_t blocksPerItem(const ScheduleParams& params, BuilderKind builder);

/// Fills `out` (items.size() * blocksPerItem entries) in emission order: item, level,
/// then a-side before b-side. Returns item * I + (level - 1) of the first work unit
/// violating the linear builder's covering-radius condition, or kNoViolation.
std::size_t emitBlocksSerial(std::span<const PairItem> items, const ScheduleParams& params, BuilderKind builder,
                             std::span<CandidateBlock> out);
std::size_t emitBlocksOmp(std::span<const PairItem> items, const ScheduleParams& params, BuilderKind builder,
                          std::span<CandidateBlock> out, int threads);

void materializeSerial(const CentersCollection& c, PointMatrix& out);
void materializeOmp(const CentersCollection& c, PointMatrix& out, int threads);

}  // namespace ccoll::kernels
