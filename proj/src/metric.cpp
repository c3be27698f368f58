#include "ccoll/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <unordered_map>

#include "ccoll/error.hpp"
#include "ccoll/rng.hpp"

namespace ccoll {

PointMatrix::PointMatrix(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw InputError("point dimension must be positive");
    if (coords_.size() % dim_ != 0) throw InputError("coordinate count is not a multiple of the dimension");
}

void PointMatrix::push_back(PointView p) {
    if (p.size() != dim_) {
        throw InputError("dimension mismatch: expected " + std::to_string(dim_) + ", got " +
                         std::to_string(p.size()));
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
}

namespace {

struct RowHash {
    const PointMatrix* rows;
    std::size_t operator()(std::size_t i) const noexcept {
        std::uint64_t h = 0x12345;
        for (double c : (*rows)[i]) {
            std::uint64_t bits;
            std::memcpy(&bits, &c, sizeof bits);
            h = splitmix64(h ^ bits);
        }
        return static_cast<std::size_t>(h);
    }
};

struct RowEq {
    const PointMatrix* rows;
    bool operator()(std::size_t a, std::size_t b) const noexcept {
        return std::ranges::equal((*rows)[a], (*rows)[b]);
    }
};

}  // namespace

PointSet PointSet::fromRows(const PointMatrix& rows) {
    if (rows.empty()) throw InputError("point set must contain at least one point");
    PointMatrix normalized(rows.dim());
    normalized.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        normalized.push_back(rows[i]);
        for (double& c : normalized.row(i)) {
            if (!std::isfinite(c)) throw InputError("non-finite coordinate in row " + std::to_string(i + 1));
            if (c == 0.0) c = 0.0;  // fold -0.0
        }
    }

    std::unordered_map<std::size_t, std::size_t, RowHash, RowEq> firstSeen(
        rows.size(), RowHash{&normalized}, RowEq{&normalized});
    PointMatrix points(rows.dim());
    std::vector<std::size_t> mult;
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        auto [it, inserted] = firstSeen.try_emplace(i, mult.size());
        if (inserted) {
            points.push_back(normalized[i]);
            mult.push_back(1);
        } else {
            ++mult[it->second];
        }
    }
    return PointSet(std::move(points), std::move(mult));
}

PointSet::PointSet(PointMatrix points, std::vector<std::size_t> multiplicities)
    : points_(std::move(points)), multiplicities_(std::move(multiplicities)) {
    if (points_.dim() == 0) throw InputError("point dimension must be positive");
    if (points_.empty()) throw InputError("point set must contain at least one point");
    if (multiplicities_.size() != points_.size()) throw InputError("one multiplicity per point is required");
    for (std::size_t m : multiplicities_) {
        if (m == 0) throw InputError("multiplicities must be positive");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (double& c : points_.row(i)) {
            if (!std::isfinite(c)) throw InputError("non-finite coordinate in point " + std::to_string(i));
            if (c == 0.0) c = 0.0;
        }
    }
    std::unordered_map<std::size_t, std::size_t, RowHash, RowEq> seen(points_.size(), RowHash{&points_},
                                                                     RowEq{&points_});
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!seen.try_emplace(i, i).second) {
            throw InputError("duplicate point at index " + std::to_string(i) + "; merge into multiplicities");
        }
    }
}

std::size_t PointSet::totalMultiplicity() const noexcept {
    std::size_t total = 0;
    for (std::size_t m : multiplicities_) total += m;
    return total;
}

PointMatrix PointSet::expanded() const {
    PointMatrix out(dim());
    out.reserve(totalMultiplicity());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t r = 0; r < multiplicities_[i]; ++r) out.push_back(points_[i]);
    }
    return out;
}

double metrics::BlackBox::dist(const double* a, const double* b, std::size_t d) const {
    thread_local std::vector<double> diff;
    diff.resize(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = a[i] - b[i];
    return (*fn)(PointView(diff.data(), d));
}

NormSpec NormSpec::lp(double p) {
    if (!(p >= 1.0)) throw ParameterError("lp exponent must satisfy p >= 1");
    NormSpec n;
    n.kind_ = NormKind::Lp;
    n.p_ = p;
    return n;
}

NormSpec NormSpec::blackBox(std::string name, NormFunction fn, std::size_t dim, double cLow, double cHigh,
                            std::uint64_t seed, std::size_t samples) {
    if (!fn) throw ParameterError("black-box norm requires an evaluation function");
    if (dim == 0) throw ParameterError("black-box norm requires a positive dimension");
    if (!(cLow > 0.0) || !(cHigh >= cLow) || !std::isfinite(cHigh)) {
        throw ParameterError("equivalence constants must satisfy 0 < c_low <= c_high < inf");
    }
    NormSpec n;
    n.kind_ = NormKind::BlackBox;
    n.p_ = 0.0;
    n.name_ = std::move(name);
    n.fn_ = std::make_shared<const NormFunction>(std::move(fn));
    n.dim_ = dim;
    n.cLow_ = cLow;
    n.cHigh_ = cHigh;

    auto check = [&](const Point& v) {
        const double inf = metrics::LInf{}.norm(v.data(), dim);
        const double value = (*n.fn_)(v);
        if (!std::isfinite(value) || value < cLow * inf * (1.0 - kRelativeSlack) ||
            value > cHigh * inf * (1.0 + kRelativeSlack)) {
            std::string coords;
            for (double c : v) coords += (coords.empty() ? "" : ",") + std::to_string(c);
            throw BuildError("black-box norm '" + n.name_ + "' violates declared equivalence constants at (" +
                             coords + "): |x| = " + std::to_string(value) + ", |x|_inf = " + std::to_string(inf));
        }
    };

    Point v(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        std::ranges::fill(v, 0.0);
        v[i] = 1.0;
        check(v);
        v[i] = -1.0;
        check(v);
    }
    std::ranges::fill(v, 1.0);
    check(v);
    Rng rng(seed, Stream::Validation);
    for (std::size_t s = 0; s < samples; ++s) {
        const bool sparse = (s % 4) == 3;
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = sparse && rng.uniform() < 0.5 ? 0.0 : rng.normal();
        }
        if (metrics::LInf{}.norm(v.data(), dim) == 0.0) continue;
        check(v);
    }
    return n;
}

NormSpec NormSpec::parse(std::string_view tag) {
    if (tag == "l1") return l1();
    if (tag == "l2") return l2();
    if (tag == "linf") return linf();
    if (tag.starts_with("lp:")) {
        std::string_view rest = tag.substr(3);
        if (rest == "inf") return linf();
        double p = 0.0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
        if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
            throw InputError("cannot parse lp exponent in norm tag '" + std::string(tag) + "'");
        }
        return lp(p);
    }
    throw InputError("unknown norm '" + std::string(tag) + "' (expected l1, l2, linf or lp:<p>)");
}

double NormSpec::lowerConstant(std::size_t dim) const {
    if (kind_ == NormKind::BlackBox) {
        if (dim != dim_) throw InputError("black-box norm declared for dimension " + std::to_string(dim_));
        return cLow_;
    }
    return 1.0;
}

double NormSpec::upperConstant(std::size_t dim) const {
    if (kind_ == NormKind::BlackBox) {
        if (dim != dim_) throw InputError("black-box norm declared for dimension " + std::to_string(dim_));
        return cHigh_;
    }
    if (std::isinf(p_)) return 1.0;
    return std::pow(static_cast<double>(dim), 1.0 / p_);
}

std::string NormSpec::tag() const {
    if (kind_ == NormKind::BlackBox) return "blackbox:" + name_;
    if (p_ == 1.0) return "l1";
    if (p_ == 2.0) return "l2";
    if (std::isinf(p_)) return "linf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p_);
    return "lp:" + std::string(buf, ptr);
}

double NormSpec::norm(PointView v) const {
    return visit([&](const auto& m) { return m.norm(v.data(), v.size()); });
}

double NormSpec::distance(PointView a, PointView b) const {
    return visit([&](const auto& m) { return m.dist(a.data(), b.data(), a.size()); });
}

Ball::Ball(Point c, double r) : center(std::move(c)), radius(r) {
    if (!(r >= 0.0)) throw ParameterError("ball radius must be nonnegative");
}

bool Ball::contains(PointView p, const NormSpec& norm) const {
    return ccoll::distance(center, p, norm) <= radius;
}

double distance(PointView a, PointView b, const NormSpec& norm) {
    if (a.size() != b.size()) {
        throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    return norm.distance(a, b);
}

double setDiameter(const PointMatrix& a, const NormSpec& norm) {
    if (a.empty()) throw InputError("diameter of an empty set is undefined");
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) best = std::max(best, norm.distance(a[i], a[j]));
    }
    return best;
}

double setDistance(const PointMatrix& a, const PointMatrix& b, const NormSpec& norm) {
    if (a.empty() || b.empty()) throw InputError("distance to an empty set is undefined");
    if (a.dim() != b.dim()) throw InputError("dimension mismatch between point sets");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, norm.distance(a[i], b[j]));
    }
    return best;
}

double approximationFactor(PointView p, PointView q, const PointSet& x, const NormSpec& norm) {
    if (p.size() != x.dim() || q.size() != x.dim()) throw InputError("dimension mismatch in approximation factor");
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, distanceRatio(norm.distance(x[i], q), norm.distance(x[i], p)));
    }
    return worst;
}

std::size_t nearestInput(PointView p, const PointSet& x, const NormSpec& norm) {
    if (p.size() != x.dim()) throw InputError("dimension mismatch in nearest-input query");
    std::size_t best = 0;
    double bestDist = norm.distance(x[0], p);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double d = norm.distance(x[i], p);
        if (d < bestDist) {
            bestDist = d;
            best = i;
        }
    }
    return best;
}

}  // namespace ccoll
