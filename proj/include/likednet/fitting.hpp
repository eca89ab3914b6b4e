#pragma once

#include <span>
#include <vector>

namespace likednet {

struct PointXY {
    double x = 0;
    double y = 0;
};

enum class FitFamily { power, exponential };

const char* to_string(FitFamily f);

struct FitResult {
    FitFamily family;
    double amplitude = 0;   // a in y = a x^b  or  y = a exp(b x)
    double exponent = 0;    // b (power exponent or exponential decay)
    double r_squared = 0;   // in the fit's transformed space; NaN if undefined
    int points = 0;
};

/// Least squares on (log x, log y); y = a x^b. Weights are optional per-point
/// multipliers (e.g. bin populations); empty means unweighted.
/// Throws std::invalid_argument on nonpositive coordinates or <3 points.
FitResult fit_power(std::span<const PointXY> points, std::span<const double> weights = {});

/// Least squares on (x, log y); y = a exp(b x).
/// Throws std::invalid_argument on nonpositive y or <3 points.
FitResult fit_exponential(std::span<const PointXY> points, std::span<const double> weights = {});

/// 1 - SS_res/SS_tot for `model` evaluated on `points`, in the model family's
/// transformed space. Returns NaN when y has zero variance there.
double r_squared(std::span<const PointXY> points, const FitResult& model);

}  // namespace likednet
