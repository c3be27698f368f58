#pragma once

// Points, norms, distances and the approximation factor shared by every module.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccoll {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Relative slack used whenever a computed quantity is compared against a bound.
inline constexpr double kRelativeSlack = 1e-9;

/// Dense row-major list of points of a common dimension.
class PointMatrix {
public:
    PointMatrix() = default;
    explicit PointMatrix(std::size_t dim) : dim_(dim) {}
    PointMatrix(std::size_t dim, std::vector<double> coords);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    PointView operator[](std::size_t i) const noexcept { return {coords_.data() + i * dim_, dim_}; }
    std::span<double> row(std::size_t i) noexcept { return {coords_.data() + i * dim_, dim_}; }
    const double* data() const noexcept { return coords_.data(); }
    const std::vector<double>& coords() const noexcept { return coords_; }

    void reserve(std::size_t n) { coords_.reserve(n * dim_); }
    void resize(std::size_t n) { coords_.resize(n * dim_); }
    void push_back(PointView p);

    friend bool operator==(const PointMatrix&, const PointMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// The input set X: distinct points with multiplicities.
class PointSet {
public:
    /// Merges coordinate-wise identical rows; first occurrence fixes the order.
    static PointSet fromRows(const PointMatrix& rows);

    PointSet(PointMatrix points, std::vector<std::size_t> multiplicities);

    std::size_t dim() const noexcept { return points_.dim(); }
    std::size_t size() const noexcept { return points_.size(); }
    PointView operator[](std::size_t i) const noexcept { return points_[i]; }
    const PointMatrix& points() const noexcept { return points_; }
    std::size_t multiplicity(std::size_t i) const { return multiplicities_.at(i); }
    const std::vector<std::size_t>& multiplicities() const noexcept { return multiplicities_; }
    std::size_t totalMultiplicity() const noexcept;

    /// Every point repeated by its multiplicity, in stored order.
    PointMatrix expanded() const;

private:
    PointMatrix points_;
    std::vector<std::size_t> multiplicities_;
};

enum class NormKind { Lp, BlackBox };

using NormFunction = std::function<double(PointView)>;

namespace metrics {

struct L1 {
    double norm(const double* v, std::size_t d) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += std::abs(v[i]);
        return s;
    }
    double dist(const double* a, const double* b, std::size_t d) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += std::abs(a[i] - b[i]);
        return s;
    }
    double gapLowerBound(const double* gap, std::size_t d) const noexcept { return norm(gap, d); }
    double extentUpperBound(const double* ext, std::size_t d) const noexcept { return norm(ext, d); }
};

struct L2 {
    double norm(const double* v, std::size_t d) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += v[i] * v[i];
        return std::sqrt(s);
    }
    double dist(const double* a, const double* b, std::size_t d) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double t = a[i] - b[i];
            s += t * t;
        }
        return std::sqrt(s);
    }
    double gapLowerBound(const double* gap, std::size_t d) const noexcept { return norm(gap, d); }
    double extentUpperBound(const double* ext, std::size_t d) const noexcept { return norm(ext, d); }
};

struct LInf {
    double norm(const double* v, std::size_t d) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s = std::max(s, std::abs(v[i]));
        return s;
    }
    double dist(const double* a, const double* b, std::size_t d) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s = std::max(s, std::abs(a[i] - b[i]));
        return s;
    }
    double gapLowerBound(const double* gap, std::size_t d) const noexcept { return norm(gap, d); }
    double extentUpperBound(const double* ext, std::size_t d) const noexcept { return norm(ext, d); }
};

struct Lp {
    double p;
    double norm(const double* v, std::size_t d) const noexcept {
        // Scale by the largest magnitude to keep pow() away from overflow.
        double m = 0.0;
        for (std::size_t i = 0; i < d; ++i) m = std::max(m, std::abs(v[i]));
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += std::pow(std::abs(v[i]) / m, p);
        return m * std::pow(s, 1.0 / p);
    }
    double dist(const double* a, const double* b, std::size_t d) const noexcept {
        double m = 0.0;
        for (std::size_t i = 0; i < d; ++i) m = std::max(m, std::abs(a[i] - b[i]));
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += std::pow(std::abs(a[i] - b[i]) / m, p);
        return m * std::pow(s, 1.0 / p);
    }
    double gapLowerBound(const double* gap, std::size_t d) const noexcept { return norm(gap, d); }
    double extentUpperBound(const double* ext, std::size_t d) const noexcept { return norm(ext, d); }
};

struct BlackBox {
    const NormFunction* fn;
    double cLow;
    double cHigh;
    double norm(const double* v, std::size_t d) const { return (*fn)(PointView(v, d)); }
    double dist(const double* a, const double* b, std::size_t d) const;
    double gapLowerBound(const double* gap, std::size_t d) const noexcept {
        return cLow * LInf{}.norm(gap, d);
    }
    double extentUpperBound(const double* ext, std::size_t d) const noexcept {
        return cHigh * LInf{}.norm(ext, d);
    }
};

}  // namespace metrics

/// The norm inducing the metric: an lp norm, or a user-supplied norm with declared
/// equivalence constants c_low * |x|_inf <= |x| <= c_high * |x|_inf.
class NormSpec {
public:
    static NormSpec lp(double p);
    static NormSpec l1() { return lp(1.0); }
    static NormSpec l2() { return lp(2.0); }
    static NormSpec linf() { return lp(std::numeric_limits<double>::infinity()); }

    /// Validates the declared constants on `samples` random vectors (plus the unit and
    /// all-ones vectors) and throws BuildError on any violation.
    static NormSpec blackBox(std::string name, NormFunction fn, std::size_t dim, double cLow,
                             double cHigh, std::uint64_t seed = 0x5eed, std::size_t samples = 20000);

    /// Accepts "l1", "l2", "linf" and "lp:<p>" with p >= 1 (p may be "inf").
    static NormSpec parse(std::string_view tag);

    NormKind kind() const noexcept { return kind_; }
    bool isLp() const noexcept { return kind_ == NormKind::Lp; }
    double exponent() const noexcept { return p_; }
    bool isEuclidean() const noexcept { return isLp() && p_ == 2.0; }
    bool isChebyshev() const noexcept { return isLp() && std::isinf(p_); }

    /// c_low and c_high relative to the l_inf norm in dimension `dim`.
    double lowerConstant(std::size_t dim) const;
    double upperConstant(std::size_t dim) const;

    std::string tag() const;

    double norm(PointView v) const;
    double distance(PointView a, PointView b) const;

    /// Calls f with the concrete metric functor (metrics::L1, L2, LInf, Lp or BlackBox).
    template <class F>
    decltype(auto) visit(F&& f) const {
        if (kind_ == NormKind::BlackBox) return f(metrics::BlackBox{fn_.get(), cLow_, cHigh_});
        if (p_ == 1.0) return f(metrics::L1{});
        if (p_ == 2.0) return f(metrics::L2{});
        if (std::isinf(p_)) return f(metrics::LInf{});
        return f(metrics::Lp{p_});
    }

private:
    NormSpec() = default;

    NormKind kind_ = NormKind::Lp;
    double p_ = 2.0;
    std::string name_;
    std::shared_ptr<const NormFunction> fn_;
    std::size_t dim_ = 0;
    double cLow_ = 1.0;
    double cHigh_ = 1.0;
};

struct Ball {
    Point center;
    double radius = 0.0;

    Ball(Point c, double r);
    bool contains(PointView p, const NormSpec& norm) const;
};

/// Throws InputError on dimension mismatch.
double distance(PointView a, PointView b, const NormSpec& norm);

double setDiameter(const PointMatrix& a, const NormSpec& norm);
double setDistance(const PointMatrix& a, const PointMatrix& b, const NormSpec& norm);

/// max over x in X of dist(x,q)/dist(x,p), with 0/0 = 1 and positive/0 = +inf.
double approximationFactor(PointView p, PointView q, const PointSet& x, const NormSpec& norm);

/// Index of an input point nearest to p; ties go to the lowest index.
std::size_t nearestInput(PointView p, const PointSet& x, const NormSpec& norm);

/// Ratio dist(x,q)/dist(x,p) under the factor's 0/0 = 1 convention.
inline double distanceRatio(double num, double den) noexcept {
    if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

/// True when value <= bound up to kRelativeSlack.
inline bool withinBound(double value, double bound) noexcept {
    return value <= bound * (1.0 + kRelativeSlack);
}

}  // namespace ccoll
