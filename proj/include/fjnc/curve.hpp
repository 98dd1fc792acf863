#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fjnc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnboundedDelayError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnreachableLevelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Segment {
    double start = 0.0;   // seconds
    double value = 0.0;   // work-units at `start` (right value at the breakpoint)
    double slope = 0.0;   // work-units per second, >= 0

    friend bool operator==(const Segment&, const Segment&) = default;
};

/*!
 * A non-negative, non-decreasing piecewise-linear function of time t >= 0.
 *
 * Representation: an ordered list of segments; segment i is the affine piece
 * on [start_i, start_{i+1}], the last one extends to +infinity unless
 * `inf_from` is set, in which case the curve equals +infinity for t > inf_from
 * (and the last segment covers [start_n, inf_from]).
 *
 * Conventions:
 *  - f(0) is the first segment's `value`; a token bucket (sigma, rho) is the
 *    single segment {0, sigma, rho}, so f(0) = sigma.
 *  - at an interior breakpoint with a jump, evaluation is left-continuous:
 *    f(start_i) comes from segment i-1, the new `value` applies for t > start_i.
 *  - once infinite, stays infinite; the value at inf_from itself is finite.
 */
class Curve {
public:
    explicit Curve(std::vector<Segment> segments,
                   std::optional<double> inf_from = std::nullopt)
        : segments_(std::move(segments)), inf_from_(inf_from) {
        validate_and_canonicalize();
    }

    static Curve constant(double c) { return Curve({{0.0, c, 0.0}}); }
    static Curve rate(double rho) { return Curve({{0.0, 0.0, rho}}); }
    static Curve token_bucket(double sigma, double rho) {
        return Curve({{0.0, sigma, rho}});
    }
    static Curve rate_latency(double rate, double latency) {
        if (latency > 0.0)
            return Curve({{0.0, 0.0, 0.0}, {latency, 0.0, rate}});
        return Curve({{0.0, 0.0, rate}});
    }
    // The delay operator applied to the convolution identity: 0 on [0, d],
    // +infinity beyond.  delayed_step(0) is the identity itself.
    static Curve delayed_step(double d) {
        if (d < 0.0) throw std::domain_error("delayed_step: negative delay");
        return Curve({{0.0, 0.0, 0.0}}, d);
    }
    static Curve identity() { return delayed_step(0.0); }

    const std::vector<Segment>& segments() const { return segments_; }
    std::optional<double> inf_from() const { return inf_from_; }
    bool finite_everywhere() const { return !inf_from_.has_value(); }
    double final_slope() const { return segments_.back().slope; }

    // f(t) under the left-continuity convention; +infinity inside an
    // infinite region; throws on t < 0.
    double value(double t) const {
        if (t < 0.0) throw std::domain_error("Curve::value: negative time");
        if (inf_from_ && t > *inf_from_) return kInf;
        const Segment& s = segment_left(t);
        return s.value + s.slope * (t - s.start);
    }

    // lim_{x -> t+} f(x): at a jump this is the upper value; equals +infinity
    // from inf_from onward.
    double value_right(double t) const {
        if (t < 0.0) throw std::domain_error("Curve::value_right: negative time");
        if (inf_from_ && t >= *inf_from_) return kInf;
        const Segment& s = segment_right(t);
        return s.value + s.slope * (t - s.start);
    }

    // sup over t of f(t); +infinity unless the curve is bounded.
    double supremum() const {
        if (inf_from_) return kInf;
        const Segment& s = segments_.back();
        return s.slope > 0.0 ? kInf : s.value;
    }

    // inf{ t >= 0 : f(t) >= v }.  Throws UnreachableLevelError if v exceeds
    // the supremum of the curve.
    double pseudo_inverse(double v) const {
        if (v < 0.0) throw std::domain_error("Curve::pseudo_inverse: negative level");
        if (v == 0.0) return 0.0;
        double prev_end = segments_.front().value;  // f(0)
        if (prev_end >= v) return 0.0;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const Segment& s = segments_[i];
            // jump at s.start covering v: infimum is the breakpoint itself
            if (s.value >= v && prev_end < v && i > 0) return s.start;
            const double end_t = segment_end(i);
            const double end_v =
                std::isinf(end_t) ? (s.slope > 0.0 ? kInf : s.value)
                                  : s.value + s.slope * (end_t - s.start);
            if (end_v >= v) {
                if (s.slope <= 0.0) return s.start;  // v == s.value
                return s.start + (v - s.value) / s.slope;
            }
            prev_end = end_v;
        }
        // beyond the last segment: only the infinite region can reach v
        if (inf_from_) return *inf_from_;
        throw UnreachableLevelError("pseudo_inverse: unreachable level");
    }

    // sup{ u : f_ext(u) <= c } where f_ext = 0 for u < 0; may be +infinity.
    // This is the upper pseudo-inverse used by the horizontal deviation.
    double upper_pseudo_inverse(double c) const {
        if (c < segments_.front().value) return 0.0;  // only u <= 0 qualifies
        const double cap = inf_from_ ? *inf_from_ : kInf;
        double best = 0.0;
        double prev_end = segments_.front().value;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const Segment& s = segments_[i];
            const double end_t = segment_end(i);
            if (s.value > c) break;  // f exceeds c from s.start on (jump)
            const double end_v =
                std::isinf(end_t) ? (s.slope > 0.0 ? kInf : s.value)
                                  : s.value + s.slope * (end_t - s.start);
            if (end_v <= c) {
                best = end_t;  // whole piece at or below c
            } else {
                best = s.slope > 0.0 ? s.start + (c - s.value) / s.slope : end_t;
                break;
            }
            prev_end = end_v;
        }
        (void)prev_end;
        return std::min(best, cap);
    }

    friend bool operator==(const Curve& a, const Curve& b) {
        return a.segments_ == b.segments_ && a.inf_from_ == b.inf_from_;
    }

private:
    std::vector<Segment> segments_;
    std::optional<double> inf_from_;

    double segment_end(std::size_t i) const {
        if (i + 1 < segments_.size()) return segments_[i + 1].start;
        return inf_from_ ? *inf_from_ : kInf;
    }

    // segment governing f(t) under left-continuity: the last one with start < t,
    // or the first segment when t == 0.
    const Segment& segment_left(double t) const {
        if (t <= segments_.front().start) return segments_.front();
        auto it = std::upper_bound(
            segments_.begin(), segments_.end(), t,
            [](double x, const Segment& s) { return x <= s.start; });
        return *(it - 1);
    }

    // segment governing the right limit at t: the last one with start <= t.
    const Segment& segment_right(double t) const {
        auto it = std::upper_bound(
            segments_.begin(), segments_.end(), t,
            [](double x, const Segment& s) { return x < s.start; });
        if (it == segments_.begin()) return segments_.front();
        return *(it - 1);
    }

    void validate_and_canonicalize() {
        if (segments_.empty())
            throw std::invalid_argument("Curve: segment list is empty");
        if (segments_.front().start != 0.0)
            throw std::invalid_argument("Curve: first segment must start at t = 0");
        for (Segment& s : segments_) {
            if (!std::isfinite(s.start) || !std::isfinite(s.value) || !std::isfinite(s.slope))
                throw std::invalid_argument("Curve: non-finite segment field");
            if (s.value < 0.0) {
                if (s.value < -1e-9) throw std::invalid_argument("Curve: negative value");
                s.value = 0.0;
            }
            if (s.slope < 0.0) {
                if (s.slope < -1e-12) throw std::invalid_argument("Curve: negative slope");
                s.slope = 0.0;
            }
        }
        for (std::size_t i = 1; i < segments_.size(); ++i) {
            if (!(segments_[i].start > segments_[i - 1].start))
                throw std::invalid_argument("Curve: start times must be strictly increasing");
            const Segment& p = segments_[i - 1];
            const double left = p.value + p.slope * (segments_[i].start - p.start);
            if (segments_[i].value < left) {
                if (segments_[i].value < left - 1e-9)
                    throw std::invalid_argument("Curve: negative jump (not non-decreasing)");
                segments_[i].value = left;  // snap rounding noise
            }
        }
        if (inf_from_) {
            if (!std::isfinite(*inf_from_) || *inf_from_ < 0.0)
                throw std::invalid_argument("Curve: inf_from must be finite and non-negative");
            if (*inf_from_ < segments_.back().start)
                throw std::invalid_argument("Curve: inf_from before last segment start");
        }
        // merge adjacent collinear segments
        std::vector<Segment> out;
        out.reserve(segments_.size());
        for (const Segment& s : segments_) {
            if (!out.empty()) {
                const Segment& p = out.back();
                const double left = p.value + p.slope * (s.start - p.start);
                const double scale = std::max({1.0, std::abs(left), std::abs(s.value)});
                if (p.slope == s.slope && std::abs(s.value - left) <= 1e-12 * scale)
                    continue;
            }
            out.push_back(s);
        }
        segments_ = std::move(out);
    }
};

// (Delta_d f)(t) = f(t - d) for t >= d, f(0) for t < d.
inline Curve delay_shift(const Curve& f, double d) {
    if (d < 0.0) throw std::domain_error("delay_shift: negative delay");
    if (d == 0.0) return f;
    std::vector<Segment> segs;
    segs.reserve(f.segments().size() + 1);
    segs.push_back({0.0, f.segments().front().value, 0.0});
    for (const Segment& s : f.segments())
        segs.push_back({s.start + d, s.value, s.slope});
    std::optional<double> inf_from = f.inf_from();
    if (inf_from) inf_from = *inf_from + d;
    return Curve(std::move(segs), inf_from);
}

// Value-level comparison at breakpoints, midpoints and one probe beyond the
// last breakpoint.  Intended for tests and verification code.
inline bool approx_equal(const Curve& a, const Curve& b, double tol = 1e-9) {
    if (a.inf_from().has_value() != b.inf_from().has_value()) return false;
    if (a.inf_from() && std::abs(*a.inf_from() - *b.inf_from()) > tol) return false;
    std::vector<double> ts;
    for (const Segment& s : a.segments()) ts.push_back(s.start);
    for (const Segment& s : b.segments()) ts.push_back(s.start);
    if (a.inf_from()) ts.push_back(*a.inf_from());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<double> probes = ts;
    for (std::size_t i = 1; i < ts.size(); ++i)
        probes.push_back(0.5 * (ts[i - 1] + ts[i]));
    probes.push_back(ts.back() + 1.0);
    probes.push_back(ts.back() + 2.0);
    for (double t : probes) {
        const double va = a.value(t), vb = b.value(t);
        if (std::isinf(va) != std::isinf(vb)) return false;
        if (!std::isinf(va) && std::abs(va - vb) > tol) return false;
    }
    return true;
}

}  // namespace fjnc
