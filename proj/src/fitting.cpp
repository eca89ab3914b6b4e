#include "likednet/fitting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace likednet {

const char* to_string(FitFamily f) {
    return f == FitFamily::power ? "power" : "exponential";
}

namespace {

struct Transformed {
    std::vector<double> x, y, w;
};

Transformed transform(std::span<const PointXY> points, std::span<const double> weights,
                      FitFamily family) {
    if (points.size() < 3) throw std::invalid_argument("fit needs at least 3 points");
    if (!weights.empty() && weights.size() != points.size())
        throw std::invalid_argument("weights length must match points");
    Transformed t;
    t.x.reserve(points.size());
    t.y.reserve(points.size());
    t.w.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& pt = points[k];
        if (family == FitFamily::power && !(pt.x > 0))
            throw std::invalid_argument("power fit needs strictly positive x");
        if (!(pt.y > 0)) throw std::invalid_argument("fit needs strictly positive y");
        const double w = weights.empty() ? 1.0 : weights[k];
        if (!(w >= 0)) throw std::invalid_argument("weights must be nonnegative");
        t.x.push_back(family == FitFamily::power ? std::log(pt.x) : pt.x);
        t.y.push_back(std::log(pt.y));
        t.w.push_back(w);
    }
    return t;
}

// Weighted OLS in the transformed plane; R^2 against the weighted mean model.
FitResult ols(const Transformed& t, FitFamily family) {
    double wsum = 0;
    for (double w : t.w) wsum += w;
    if (!(wsum > 0)) throw std::invalid_argument("weights sum to zero");
    double xm = 0, ym = 0;
    for (std::size_t k = 0; k < t.x.size(); ++k) {
        xm += t.w[k] * t.x[k];
        ym += t.w[k] * t.y[k];
    }
    xm /= wsum;
    ym /= wsum;
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < t.x.size(); ++k) {
        sxx += t.w[k] * (t.x[k] - xm) * (t.x[k] - xm);
        sxy += t.w[k] * (t.x[k] - xm) * (t.y[k] - ym);
    }
    if (!(sxx > 0)) throw std::invalid_argument("fit is degenerate: x has zero variance");
    const double b = sxy / sxx;
    const double a = ym - b * xm;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t k = 0; k < t.x.size(); ++k) {
        const double r = t.y[k] - (a + b * t.x[k]);
        ss_res += t.w[k] * r * r;
        ss_tot += t.w[k] * (t.y[k] - ym) * (t.y[k] - ym);
    }
    FitResult out;
    out.family = family;
    out.amplitude = std::exp(a);
    out.exponent = b;
    out.points = static_cast<int>(t.x.size());
    out.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot
                               : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace

FitResult fit_power(std::span<const PointXY> points, std::span<const double> weights) {
    return ols(transform(points, weights, FitFamily::power), FitFamily::power);
}

FitResult fit_exponential(std::span<const PointXY> points, std::span<const double> weights) {
    return ols(transform(points, weights, FitFamily::exponential), FitFamily::exponential);
}

double r_squared(std::span<const PointXY> points, const FitResult& model) {
    if (points.size() < 2) throw std::invalid_argument("r_squared needs at least 2 points");
    double ym = 0;
    std::vector<double> ty;
    ty.reserve(points.size());
    const double la = std::log(model.amplitude);
    std::vector<double> pred;
    pred.reserve(points.size());
    for (const auto& pt : points) {
        if (!(pt.y > 0)) throw std::invalid_argument("r_squared needs strictly positive y");
        if (model.family == FitFamily::power && !(pt.x > 0))
            throw std::invalid_argument("r_squared needs strictly positive x for power models");
        ty.push_back(std::log(pt.y));
        ym += ty.back();
        pred.push_back(model.family == FitFamily::power ? la + model.exponent * std::log(pt.x)
                                                        : la + model.exponent * pt.x);
    }
    ym /= static_cast<double>(points.size());
    double ss_res = 0, ss_tot = 0;
    for (std::size_t k = 0; k < ty.size(); ++k) {
        ss_res += (ty[k] - pred[k]) * (ty[k] - pred[k]);
        ss_tot += (ty[k] - ym) * (ty[k] - ym);
    }
    if (!(ss_tot > 0)) return std::numeric_limits<double>::quiet_NaN();
    return 1.0 - ss_res / ss_tot;
}

}  // namespace likednet
