#pragma once

// Lens geometry, radius schedules, and the quadratic- and linear-size builders of
// (1+eps)-approximate centers collections.
//
// A collection built here is X followed by a sequence of candidate blocks. Block b holds
// the covering template scaled by `scale` and translated to input point `anchor`; its
// centers cover B(anchor, scale) at radius sigma * scale, which the builder checks
// against the block's required radius `coverRadius`. Blocks are kept symbolic so that
// large collections cost O(#blocks) memory; materialize() expands them in candidate
// order (block index, then template center index).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccoll/covering.hpp"
#include "ccoll/metric.hpp"

namespace ccoll {

struct ScheduleParams {
    double epsilon = 0.0;
    /// eps >= 1: X alone is already a (1+eps)-collection; the remaining fields are unset.
    bool inputOnly = false;
    int levels = 0;              // I = ceil(1 / log_eps 0.9)
    double delta = 0.0;          // eps^(1 + 1/I)
    double separation = 0.0;     // t = max(10, (1+eps)/eps)
    double templateSigma = 0.0;  // 0.3 eps
};

/// Throws ParameterError for eps <= 0.
ScheduleParams computeParams(double epsilon);

/// L_eps(x1,x2) = B(x1,r) ∩ B(x2,r) with r = dist(x1,x2)/(1+eps).
class Lens {
public:
    Lens(Point x1, Point x2, double epsilon, NormSpec norm);

    const Point& first() const noexcept { return x1_; }
    const Point& second() const noexcept { return x2_; }
    double epsilon() const noexcept { return epsilon_; }
    double radius() const noexcept { return radius_; }
    bool contains(PointView p) const;

private:
    Point x1_;
    Point x2_;
    double epsilon_;
    NormSpec norm_;
    double radius_;
};

/// Throws InputError for coincident points.
Lens lensOf(PointView x1, PointView x2, double epsilon, const NormSpec& norm);

struct RadiusSchedule {
    double baseDistance = 0.0;
    std::vector<double> levels;      // d_0 .. d_I
    std::vector<double> coverRadii;  // r_1 .. r_I (index 0 holds r_1)
};

/// d_i = dist * eps^(1 - i/I) / (1+eps) and r_i = d_i (1 + 2/t) + dist/t.
RadiusSchedule radiusSchedule(double baseDistance, const ScheduleParams& params);
RadiusSchedule radiusSchedule(PointView x1, PointView x2, const ScheduleParams& params, const NormSpec& norm);

enum class BuilderKind { Quadratic, Linear, InputOnly };

std::string_view builderName(BuilderKind b) noexcept;
std::optional<BuilderKind> parseBuilder(std::string_view name) noexcept;

struct CandidateBlock {
    std::uint32_t anchor;  // index into the collection's explicit points
    double scale;
    double coverRadius;
};

struct CollectionInfo {
    double epsilon = 0.0;
    std::string norm;
    BuilderKind builder = BuilderKind::InputOnly;
    std::size_t inputCount = 0;    // n
    std::size_t pairCount = 0;     // s (WSPD pairs, or ordered input pairs for the quadratic builder)
    int levels = 0;                // I
    std::size_t templateSize = 0;  // |C_delta| or |C_delta'|
    double templateSigma = 0.0;
    double buildMs = 0.0;
};

inline void placeCandidate(PointView anchor, double scale, PointView unit, std::span<double> out) noexcept {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = anchor[i] + scale * unit[i];
}

class CentersCollection {
public:
    CentersCollection(PointMatrix explicitPoints, CollectionInfo info);
    CentersCollection(PointMatrix explicitPoints, std::shared_ptr<const CoveringTemplate> tmpl,
                      std::vector<CandidateBlock> blocks, CollectionInfo info);

    std::size_t dim() const noexcept { return explicit_.dim(); }
    std::size_t size() const noexcept;
    std::size_t explicitCount() const noexcept { return explicit_.size(); }
    const PointMatrix& explicitPoints() const noexcept { return explicit_; }
    const std::vector<CandidateBlock>& blocks() const noexcept { return blocks_; }
    /// Null for collections without blocks.
    const CoveringTemplate* coveringTemplate() const noexcept { return template_.get(); }
    const CollectionInfo& info() const noexcept { return info_; }
    void setBuildMs(double ms) noexcept { info_.buildMs = ms; }

    void candidate(std::size_t i, std::span<double> out) const;
    Point candidate(std::size_t i) const;

    /// All candidates in index order; threads > 1 runs the OpenMP kernel.
    PointMatrix materialize(int threads = 1) const;

private:
    PointMatrix explicit_;
    std::shared_ptr<const CoveringTemplate> template_;
    std::vector<CandidateBlock> blocks_;
    CollectionInfo info_;
};

struct BuildOptions {
    int threads = 1;
};

/// X ∪ { x1 + d_i(x1,x2) c : ordered pairs x1 != x2, i = 1..I, c in C_delta }.
CentersCollection buildQuadratic(const PointSet& x, double epsilon, const NormSpec& norm,
                                 const BuildOptions& options = {});

/// X ∪ { x + r_i(k,t) c : WSPD pairs k, i = 1..I, x in {a_k, b_k}, c in C_delta' } with
/// a single template at sigma = 0.3 eps. Throws BuildError if some (k,i) violates
/// 0.3 eps * r_i(k,t) <= delta * d_i(a_k,b_k) (1 - 2/t).
CentersCollection buildLinear(const PointSet& x, double epsilon, const NormSpec& norm,
                              const BuildOptions& options = {});

CentersCollection buildCollection(BuilderKind builder, const PointSet& x, double epsilon, const NormSpec& norm,
                                  const BuildOptions& options = {});

/// Merges candidates that coincide after snapping coordinates to multiples of `quantum`
/// (quantum = 0: exact duplicates only). The first occurrence is kept.
CentersCollection dedupCandidates(const CentersCollection& collection, double quantum = 0.0);

struct PremiseReport {
    std::size_t balls = 0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    /// max over samples of dist(sample, nearest block center) / coverRadius.
    double worstRatio = 0.0;
};

/// For every block, samples points of B(anchor, scale) and checks each lies within
/// coverRadius (1 + 1e-9) of the block's own emitted centers.
PremiseReport checkCoveringPremise(const CentersCollection& collection, const NormSpec& norm,
                                   std::size_t samplesPerBall, std::uint64_t seed, int threads = 1);

}  // namespace ccoll
