#pragma once

#include <vector>

#include "fracbern/errors.hpp"

namespace fracbern {

/// D = (center - radius, center + radius).
struct Interval {
    double center;
    double radius;

    Interval(double center_, double radius_) : center(center_), radius(radius_) {
        if (!(radius_ > 0.0)) throw DomainError("interval radius must be positive");
    }
    double lo() const { return center - radius; }
    double hi() const { return center + radius; }
    bool contains(double x) const { return x > lo() && x < hi(); }
};

/// Minimum of a rate function over its reference parameter interval (0, 1),
/// rescaled to a target domain.
struct BernoulliResult {
    double constant;
    double argmin_a;
    int evaluations;
    double bracket_width;
};

struct ProfileSample {
    double x;
    double u;
};

/// One solved instance: the free boundary, the level and a sampled profile
/// of u on the real line.
struct FreeBoundarySolution {
    Interval domain;
    std::vector<double> free_points;
    double k_lo;  // K = (k_lo, k_hi)
    double k_hi;
    double level;
    double parameter_a;  // reference-coordinate parameter of this solution
    std::vector<ProfileSample> profile;
};

/// (a, value) sample of R or Psi.
struct CurveSample {
    double a;
    double value;
};

}  // namespace fracbern
