#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fjnc/curve.hpp"

namespace fjnc {

enum class Interp {
    Step,    // discrete arrivals: jumps at event times, flat in between
    Linear,  // fluid: linear interpolation between event points
};

struct Event {
    double time = 0.0;
    double cumulative = 0.0;  // total work by `time`

    friend bool operator==(const Event&, const Event&) = default;
};

/*!
 * An event-indexed cumulative work function of time.
 *
 * Left-continuous by convention: the work of an event at time tau counts for
 * t > tau (Step mode), and value(0) == 0 always.  In Linear mode the process
 * interpolates through (0,0) and the event points; an event at time 0 with
 * positive cumulative is the one permitted jump.  Beyond the last event the
 * process is constant.
 */
class CumulativeProcess {
public:
    CumulativeProcess() = default;
    CumulativeProcess(std::vector<Event> events, Interp interp)
        : events_(std::move(events)), interp_(interp) {
        validate();
    }

    const std::vector<Event>& events() const { return events_; }
    Interp interp() const { return interp_; }
    bool empty() const { return events_.empty(); }
    double total() const { return events_.empty() ? 0.0 : events_.back().cumulative; }
    double horizon() const { return events_.empty() ? 0.0 : events_.back().time; }

    double value(double t) const {
        if (t < 0.0) throw std::domain_error("CumulativeProcess::value: negative time");
        if (events_.empty() || t == 0.0) return 0.0;
        if (interp_ == Interp::Step) {
            // last event strictly before t
            auto it = std::lower_bound(
                events_.begin(), events_.end(), t,
                [](const Event& e, double x) { return e.time < x; });
            if (it == events_.begin()) return 0.0;
            return (it - 1)->cumulative;
        }
        // Linear
        auto it = std::lower_bound(
            events_.begin(), events_.end(), t,
            [](const Event& e, double x) { return e.time < x; });
        if (it == events_.end()) return events_.back().cumulative;
        if (it->time == t) return it->cumulative;
        const double t0 = (it == events_.begin()) ? 0.0 : (it - 1)->time;
        const double v0 = (it == events_.begin()) ? 0.0 : (it - 1)->cumulative;
        if (it->time == t0) return v0;
        const double w = (t - t0) / (it->time - t0);
        return v0 + w * (it->cumulative - v0);
    }

    // inf{ t >= 0 : value(t) >= v }.
    double pseudo_inverse(double v) const {
        if (v <= 0.0) {
            if (v < 0.0) throw std::domain_error("pseudo_inverse: negative level");
            return 0.0;
        }
        if (events_.empty() || v > total() * (1.0 + 1e-12) + 1e-12)
            throw UnreachableLevelError("pseudo_inverse: unreachable level");
        auto it = std::lower_bound(
            events_.begin(), events_.end(), v,
            [](const Event& e, double x) { return e.cumulative < x; });
        if (it == events_.end()) it = events_.end() - 1;  // fp slack at the top
        if (interp_ == Interp::Step) return it->time;
        const double t0 = (it == events_.begin()) ? 0.0 : (it - 1)->time;
        const double v0 = (it == events_.begin()) ? 0.0 : (it - 1)->cumulative;
        if (it->cumulative == v0) return it->time;
        const double w = (v - v0) / (it->cumulative - v0);
        return t0 + w * (it->time - t0);
    }

    CumulativeProcess scaled(double factor) const {
        if (factor < 0.0) throw std::domain_error("scaled: negative factor");
        std::vector<Event> ev = events_;
        for (Event& e : ev) e.cumulative *= factor;
        return CumulativeProcess(std::move(ev), interp_);
    }

    friend bool operator==(const CumulativeProcess& a, const CumulativeProcess& b) {
        return a.interp_ == b.interp_ && a.events_ == b.events_;
    }

private:
    std::vector<Event> events_;
    Interp interp_ = Interp::Step;

    void validate() const {
        double pt = -1.0, pc = 0.0;
        for (const Event& e : events_) {
            if (!std::isfinite(e.time) || !std::isfinite(e.cumulative))
                throw std::invalid_argument("CumulativeProcess: non-finite event");
            if (e.time < 0.0)
                throw std::invalid_argument("CumulativeProcess: negative time");
            if (e.time <= pt)
                throw std::invalid_argument("CumulativeProcess: times must be strictly increasing");
            if (e.cumulative < pc - 1e-12)
                throw std::invalid_argument("CumulativeProcess: cumulative work decreases");
            if (e.cumulative < 0.0)
                throw std::invalid_argument("CumulativeProcess: negative cumulative work");
            pt = e.time;
            pc = e.cumulative;
        }
    }
};

struct Conformance {
    bool conformant = false;
    double worst_violation = 0.0;  // max over windows of a(t)-a(v)-b(t-v); may be negative
};

// Does `a` conform to the envelope `b`, i.e. a(t) - a(v) <= b(t - v) for all
// v <= t?  For Step processes the supremum over real windows is approached by
// jump-inclusive windows against the right limit of b; for Linear processes
// window extrema sit at event points and envelope-breakpoint offsets.
inline Conformance conforms(const CumulativeProcess& a, const Curve& b) {
    const auto& ev = a.events();
    double worst = -kInf;
    if (ev.empty()) return {true, 0.0};

    if (a.interp() == Interp::Step) {
        // fast path for concave finite envelopes: per-line token buckets
        bool concave = !b.inf_from().has_value();
        if (concave) {
            const auto& segs = b.segments();
            for (std::size_t i = 0; i + 1 < segs.size() && concave; ++i) {
                const Segment& p = segs[i];
                const Segment& n = segs[i + 1];
                if (n.slope > p.slope) concave = false;
                if (std::abs(n.value - (p.value + p.slope * (n.start - p.start))) >
                    1e-12 * (1.0 + n.value))
                    concave = false;  // jump: not a min of lines
            }
        }
        if (concave) {
            for (const Segment& seg : b.segments()) {
                const double sigma = seg.value - seg.slope * seg.start;
                double w = 0.0, pt = ev.front().time, pc = 0.0, line_worst = -kInf;
                for (const Event& e : ev) {
                    w = std::max(0.0, w - seg.slope * (e.time - pt)) + (e.cumulative - pc);
                    line_worst = std::max(line_worst, w - sigma);
                    pt = e.time;
                    pc = e.cumulative;
                }
                worst = std::max(worst, line_worst);
            }
        } else {
            for (std::size_t i = 0; i < ev.size(); ++i) {
                for (std::size_t j = 0; j <= i; ++j) {
                    const double mass =
                        ev[i].cumulative - (j > 0 ? ev[j - 1].cumulative : 0.0);
                    const double gap = ev[i].time - ev[j].time;
                    const double env = b.value_right(gap);
                    if (std::isinf(env)) continue;
                    worst = std::max(worst, mass - env);
                }
            }
            if (std::isinf(worst)) worst = 0.0;  // b infinite everywhere relevant
        }
    } else {
        std::vector<double> offsets;
        for (const Segment& seg : b.segments()) offsets.push_back(seg.start);
        if (b.inf_from()) offsets.push_back(*b.inf_from());
        auto window = [&](double v, double t) {
            if (v < 0.0 || t < v) return;
            const double env = b.value(t - v);
            if (std::isinf(env)) return;
            worst = std::max(worst, a.value(t) - a.value(v) - env);
        };
        const double h = a.horizon();
        for (const Event& e : ev) {
            for (const Event& e2 : ev)
                if (e2.time <= e.time) window(e2.time, e.time);
            window(0.0, e.time);
            for (double off : offsets) {
                if (e.time + off <= h) window(e.time, e.time + off);
                window(e.time - off, e.time);
            }
        }
        if (std::isinf(worst)) worst = 0.0;
    }
    return {worst <= 1e-12, worst};
}

// (s * a)(t) = min_{v<=t} { a(v) + s(t-v) } evaluated at one time point.
inline double min_plus_conv_eval(const CumulativeProcess& a, const Curve& s, double t) {
    double best = kInf;
    auto probe = [&](double v) {
        if (v < 0.0 || v > t) return;
        const double sv = s.value(t - v);
        if (std::isinf(sv)) return;
        best = std::min(best, a.value(v) + sv);
    };
    probe(0.0);
    probe(t);
    for (const Event& e : a.events()) {
        if (e.time > t) break;
        probe(e.time);
    }
    for (const Segment& seg : s.segments()) probe(t - seg.start);
    if (s.inf_from()) probe(t - *s.inf_from());
    return best;
}

// d has at least the service curve s for arrivals a:
// d(t) >= (s*a)(t) at every event time.  Throws on a causality violation.
inline bool check_service_curve(const CumulativeProcess& a, const CumulativeProcess& d,
                                const Curve& s, double tol = 1e-9) {
    std::vector<double> times{0.0};
    for (const Event& e : a.events()) times.push_back(e.time);
    for (const Event& e : d.events()) times.push_back(e.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    for (double t : times) {
        if (d.value(t) > a.value(t) + tol)
            throw std::invalid_argument("check_service_curve: departures exceed arrivals");
    }
    for (double t : times) {
        if (d.value(t) < min_plus_conv_eval(a, s, t) - tol) return false;
    }
    return true;
}

}  // namespace fjnc
