#include "fracbern/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fracbern/errors.hpp"

namespace fracbern {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule.
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208553626422, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Transform { power_left, power_right, tail };

// A piece of the integration range together with the substitution that maps
// the working variable s onto it.
struct Piece {
    Transform kind;
    double lo;
    double hi;
    double base_lo;  // distance from the global lower limit to `lo`
    double base_hi;  // distance from `hi` to the global upper limit
    double power = 1.0;      // power_left / power_right
    double tail_scale = 0;   // tail: y = tail_scale * s^(-1/tail_rate)
    double tail_rate = 1.0;
    double s_lo = 0.0;
    double s_hi = 1.0;
};

double substitution_power(double exponent) {
    return exponent < 0.0 ? 1.0 / (1.0 + exponent) : 1.0;
}

// Maps s to a sample point and returns the Jacobian.
double map_point(const Piece& p, double s, QuadPoint& q) {
    const double len = p.hi - p.lo;
    switch (p.kind) {
    case Transform::power_left: {
        const double d = p.power == 1.0 ? len * s : len * std::pow(s, p.power);
        q.x = p.lo + d;
        q.from_lo = p.base_lo + d;
        q.from_hi = p.base_hi + (len - d);
        return p.power == 1.0 ? len : len * p.power * std::pow(s, p.power - 1.0);
    }
    case Transform::power_right: {
        const double e = p.power == 1.0 ? len * s : len * std::pow(s, p.power);
        q.x = p.hi - e;
        q.from_hi = p.base_hi + e;
        q.from_lo = p.base_lo + (len - e);
        return p.power == 1.0 ? len : len * p.power * std::pow(s, p.power - 1.0);
    }
    case Transform::tail: {
        const double inv = 1.0 / p.tail_rate;
        const double y = p.tail_scale * std::pow(s, -inv);
        q.x = y;
        q.from_lo = p.base_lo + (y - p.lo);
        q.from_hi = kInf;
        return p.tail_scale * inv * std::pow(s, -inv - 1.0);
    }
    }
    return 0.0;
}

struct Segment {
    int piece;
    double s0;
    double s1;
    double value;
    double error;
};

Segment evaluate(const OffsetIntegrand& f, const std::vector<Piece>& pieces, int piece, double s0, double s1) {
    const Piece& p = pieces[static_cast<std::size_t>(piece)];
    const double center = 0.5 * (s0 + s1);
    const double half = 0.5 * (s1 - s0);
    QuadPoint q{};

    auto sample = [&](double s) {
        const double jac = map_point(p, s, q);
        if (jac == 0.0) return 0.0;
        const double v = f(q);
        return v * jac;
    };

    double fv1[10];
    double fv2[10];
    const double fc = sample(center);
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = std::abs(resk);
    for (int j = 0; j < 5; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double f1 = sample(center - dx);
        const double f2 = sample(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 5; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double f1 = sample(center - dx);
        const double f2 = sample(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (int j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    const double result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    if (!std::isfinite(result)) {
        throw AccuracyError("integrand produced a non-finite value", result, kInf);
    }
    return Segment{piece, s0, s1, result, err};
}

IntegralResult run_adaptive(const OffsetIntegrand& f, const std::vector<Piece>& pieces, const QuadratureSpec& spec) {
    auto worse = [](const Segment& a, const Segment& b) { return a.error < b.error; };
    std::vector<Segment> heap;
    heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + pieces.size() + 1);
    long evaluations = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        heap.push_back(evaluate(f, pieces, static_cast<int>(i), pieces[i].s_lo, pieces[i].s_hi));
        evaluations += 21;
    }
    std::make_heap(heap.begin(), heap.end(), worse);

    auto totals = [&heap]() {
        double v = 0.0, e = 0.0;
        for (const Segment& s : heap) {
            v += s.value;
            e += s.error;
        }
        return std::pair{v, e};
    };

    auto [value, error] = totals();
    int subdivisions = 0;
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
        if (subdivisions >= spec.max_subdivisions) {
            throw AccuracyError("quadrature tolerance not met within " + std::to_string(spec.max_subdivisions) +
                                    " subdivisions",
                                value, error);
        }
        std::pop_heap(heap.begin(), heap.end(), worse);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.s0 + worst.s1);
        if (!(mid > worst.s0 && mid < worst.s1) ||
            (worst.s1 - worst.s0) <= 8.0 * kEps * std::max(std::abs(worst.s0), std::abs(worst.s1))) {
            throw AccuracyError("quadrature interval cannot be split further", value, error);
        }
        const Segment left = evaluate(f, pieces, worst.piece, worst.s0, mid);
        const Segment right = evaluate(f, pieces, worst.piece, mid, worst.s1);
        evaluations += 42;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), worse);
        ++subdivisions;
        // Running update, re-summed exactly at the end.
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        if (subdivisions % 64 == 0) std::tie(value, error) = totals();
    }
    std::tie(value, error) = totals();
    return IntegralResult{value, error, evaluations};
}

// Builds pieces for [lo, hi] relative to global limits glo / ghi.
void add_finite_pieces(std::vector<Piece>& out, double lo, double hi, double glo, double ghi, double exp_left,
                       double exp_right) {
    const double pl = substitution_power(exp_left);
    const double pr = substitution_power(exp_right);
    if (pl != 1.0 && pr != 1.0) {
        const double mid = 0.5 * (lo + hi);
        out.push_back(Piece{Transform::power_left, lo, mid, lo - glo, ghi - mid, pl});
        out.push_back(Piece{Transform::power_right, mid, hi, mid - glo, ghi - hi, pr});
    } else if (pr != 1.0) {
        out.push_back(Piece{Transform::power_right, lo, hi, lo - glo, ghi - hi, pr});
    } else {
        out.push_back(Piece{Transform::power_left, lo, hi, lo - glo, ghi - hi, pl});
    }
}

void check_exponent(double e, const char* which) {
    if (!(e > -1.0)) {
        throw DomainError(std::string("quadrature: ") + which + " endpoint exponent must exceed -1");
    }
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature: tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be positive");
    check_exponent(endpoint_exponent_left, "left");
    check_exponent(endpoint_exponent_right, "right");
}

IntegralResult integrate_finite(const Integrand& f, double lo, double hi, const QuadratureSpec& spec) {
    return integrate_finite(OffsetIntegrand([&f](const QuadPoint& q) { return f(q.x); }), lo, hi, spec);
}

IntegralResult integrate_finite(const OffsetIntegrand& f, double lo, double hi, const QuadratureSpec& spec) {
    const double bp[2] = {lo, hi};
    return integrate_pieces(f, bp, spec);
}

IntegralResult integrate_pieces(const OffsetIntegrand& f, std::span<const double> breakpoints,
                                const QuadratureSpec& spec) {
    spec.validate();
    if (breakpoints.size() < 2) throw DomainError("quadrature: need at least two breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i - 1] < breakpoints[i])) {
            throw DomainError("quadrature: breakpoints must be strictly increasing (lo < hi)");
        }
    }
    const double glo = breakpoints.front();
    const double ghi = breakpoints.back();
    std::vector<Piece> pieces;
    const std::size_t n = breakpoints.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        add_finite_pieces(pieces, breakpoints[i], breakpoints[i + 1], glo, ghi,
                          i == 0 ? spec.endpoint_exponent_left : 0.0,
                          i + 1 == n ? spec.endpoint_exponent_right : 0.0);
    }
    return run_adaptive(f, pieces, spec);
}

IntegralResult integrate_semi_infinite(const Integrand& f, double lo, double tail_exponent,
                                       const QuadratureSpec& spec) {
    return integrate_semi_infinite(OffsetIntegrand([&f](const QuadPoint& q) { return f(q.x); }), lo,
                                   tail_exponent, spec);
}

IntegralResult integrate_semi_infinite(const OffsetIntegrand& f, double lo, double tail_exponent,
                                       const QuadratureSpec& spec) {
    return integrate_semi_infinite(f, lo, std::span<const double>{}, tail_exponent, spec);
}

IntegralResult integrate_semi_infinite(const OffsetIntegrand& f, double lo, std::span<const double> breakpoints,
                                       double tail_exponent, const QuadratureSpec& spec) {
    spec.validate();
    if (!(tail_exponent < -1.0)) throw DomainError("quadrature: tail exponent must be below -1");
    if (!std::isfinite(lo)) throw DomainError("quadrature: lower limit must be finite");

    std::vector<double> cuts{lo};
    for (double b : breakpoints) {
        if (!(b > cuts.back())) throw DomainError("quadrature: breakpoints must be strictly increasing (lo < hi)");
        cuts.push_back(b);
    }
    // Start of the power-substituted tail piece.
    const double scale = std::max(1.0, std::abs(lo));
    double y0 = std::max(cuts.back(), lo) + scale;
    if (lo < 0.0 && y0 < 1.0) y0 = 1.0;
    cuts.push_back(y0);

    // Tail amplitude c from two far probes, f(y) ~ c * y^e.
    const double probe1 = 64.0 * std::max(y0, 1.0);
    const double probe2 = 2.0 * probe1;
    QuadPoint q1{probe1, probe1 - lo, kInf};
    QuadPoint q2{probe2, probe2 - lo, kInf};
    const double c1 = f(q1) * std::pow(probe1, -tail_exponent);
    const double c2 = f(q2) * std::pow(probe2, -tail_exponent);
    // Richardson step on the leading 1/y correction of the amplitude.
    double amplitude = 2.0 * c2 - c1;
    if (!std::isfinite(amplitude)) amplitude = c2;
    const double rate = -1.0 - tail_exponent;  // > 0

    double cut = y0;
    if (amplitude != 0.0) {
        const double target = 0.5 * spec.abs_tol * rate / std::abs(amplitude);
        cut = std::max(y0, std::pow(target, -1.0 / rate));
    }
    // Keep the cut where the tail variable stays well conditioned.
    cut = std::min(cut, 1e250);
    const double tail = amplitude * std::pow(cut, -rate) / rate;

    const double glo = lo;
    std::vector<Piece> pieces;
    const std::size_t n = cuts.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        add_finite_pieces(pieces, cuts[i], cuts[i + 1], glo, kInf, i == 0 ? spec.endpoint_exponent_left : 0.0, 0.0);
    }
    for (Piece& p : pieces) p.base_hi = kInf;
    if (cut > y0) {
        Piece t{Transform::tail, y0, cut, y0 - glo, kInf};
        t.tail_scale = y0;
        t.tail_rate = rate;
        t.s_lo = std::pow(y0 / cut, rate);
        t.s_hi = 1.0;
        pieces.push_back(t);
    }
    QuadratureSpec inner = spec;
    inner.abs_tol = 0.5 * spec.abs_tol;
    IntegralResult r = run_adaptive(f, pieces, inner);
    r.value += tail;
    // The leading-order tail is exact up to a relative O(1/cut) correction.
    r.error_estimate += std::abs(tail) * std::min(1.0, 8.0 * scale / cut);
    r.evaluations += 2;
    return r;
}

}  // namespace fracbern
