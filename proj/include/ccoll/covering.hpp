#pragma once

// Finite coverings of the unit ball B(0,1) by balls of radius sigma, built once per
// (norm, dimension, sigma) and reused as scaled/translated templates.

#include <cstddef>
#include <string_view>

#include "ccoll/metric.hpp"

namespace ccoll {

class Rng;

enum class CoveringConstruction { EuclideanGrid, LinfGrid, LpGrid, BlackBoxGrid };

std::string_view constructionName(CoveringConstruction c) noexcept;

class CoveringTemplate {
public:
    CoveringTemplate(PointMatrix centers, double sigma, NormSpec norm, CoveringConstruction construction,
                     double spacing);

    const PointMatrix& centers() const noexcept { return centers_; }
    std::size_t size() const noexcept { return centers_.size(); }
    std::size_t dim() const noexcept { return centers_.dim(); }
    double sigma() const noexcept { return sigma_; }
    const NormSpec& norm() const noexcept { return norm_; }
    CoveringConstruction construction() const noexcept { return construction_; }
    /// Axis step of the underlying lattice.
    double spacing() const noexcept { return spacing_; }

private:
    PointMatrix centers_;
    double sigma_;
    NormSpec norm_;
    CoveringConstruction construction_;
    double spacing_;
};

/// (2 sigma / sqrt(d)) Z^d restricted to the Euclidean ball of radius 1 + sigma.
CoveringTemplate euclideanGrid(std::size_t d, double sigma);

/// Centers of the ceil(1/sigma)^d congruent sub-cubes of [-1,1]^d.
CoveringTemplate linfGrid(std::size_t d, double sigma);

/// (2 sigma / d^(1/p)) Z^d restricted to the lp ball of radius 1 + sigma, 1 <= p < inf.
CoveringTemplate lpGrid(std::size_t d, double p, double sigma);

/// l_inf-spaced lattice with step 2 sigma / (d c_high), restricted to points with
/// |g|_inf <= (1 + sigma)/c_low and |g| <= 1 + sigma.
CoveringTemplate blackBoxGrid(std::size_t d, const NormSpec& norm, double sigma);

/// Picks the construction matching the norm (l2, l_inf, other lp, black box).
CoveringTemplate coveringFor(const NormSpec& norm, std::size_t d, double sigma);

/// { center + radius * c : c in template }, in template order.
PointMatrix scaleTranslate(const CoveringTemplate& tmpl, PointView center, double radius);

/// Uniform sample from B(0,1) under `norm` by rejection from the enclosing l_inf box.
void sampleUnitBall(const NormSpec& norm, std::size_t d, Rng& rng, std::span<double> out);

}  // namespace ccoll
