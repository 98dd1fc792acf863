#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fjnc/curve.hpp"
#include "fjnc/curve_algebra.hpp"
#include "fjnc/process.hpp"

namespace fjnc {

enum class SplitPolicy {
    FluidProportional,      // a_k = (mu_k / M) A exactly
    QuantizedProportional,  // work dispatched in grains of at most `quantum`
    CustomWeights,
};

struct SplitSpec {
    SplitPolicy policy = SplitPolicy::FluidProportional;
    double quantum = 1.0;         // QuantizedProportional only
    std::vector<double> weights;  // CustomWeights only, must sum to 1
};

/*!
 * K parallel queues fed by a proportional splitter and drained into a join
 * barrier.  Service curve defaults are the exact-rate curves v*mu_k; epsilon
 * defaults are the split-deviation bounds implied by the split policy
 * (0 for fluid, `quantum` for the quantized splitter).
 */
struct ForkJoinSystem {
    std::vector<double> mu;
    SplitSpec split;
    std::vector<double> epsilon;
    std::vector<Curve> service_curves;  // empty => rate curves
    std::vector<Curve> envelopes;       // empty => measured at verification time
    double aggregate_rate = 0.0;        // M = sum mu_k

    ForkJoinSystem(std::vector<double> rates, SplitSpec split_spec = {},
                   std::vector<Curve> service = {}, std::vector<Curve> env = {},
                   std::vector<double> eps = {})
        : mu(std::move(rates)),
          split(std::move(split_spec)),
          epsilon(std::move(eps)),
          service_curves(std::move(service)),
          envelopes(std::move(env)) {
        if (mu.empty()) throw std::invalid_argument("ForkJoinSystem: K must be >= 1");
        for (double m : mu)
            if (!(m > 0.0) || !std::isfinite(m))
                throw std::invalid_argument("ForkJoinSystem: service rates must be positive");
        for (double r : mu) aggregate_rate += r;
        const std::size_t K = mu.size();
        if (split.policy == SplitPolicy::QuantizedProportional && !(split.quantum > 0.0))
            throw std::invalid_argument("ForkJoinSystem: quantum must be positive");
        if (split.policy == SplitPolicy::CustomWeights) {
            if (split.weights.size() != K)
                throw std::invalid_argument("ForkJoinSystem: weights size mismatch");
            double sum = 0.0;
            for (double w : split.weights) {
                if (!(w > 0.0)) throw std::invalid_argument("ForkJoinSystem: weights must be positive");
                sum += w;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw std::invalid_argument("ForkJoinSystem: weights must sum to 1");
        }
        if (epsilon.empty()) {
            epsilon.assign(K, 0.0);
            if (split.policy == SplitPolicy::QuantizedProportional && K > 1)
                epsilon.assign(K, split.quantum);
            if (split.policy == SplitPolicy::CustomWeights)
                epsilon.assign(K, kInf);  // no A2 bound for arbitrary weights
        }
        if (epsilon.size() != K)
            throw std::invalid_argument("ForkJoinSystem: epsilon size mismatch");
        for (double e : epsilon)
            if (e < 0.0) throw std::invalid_argument("ForkJoinSystem: epsilon must be >= 0");
        if (!service_curves.empty() && service_curves.size() != K)
            throw std::invalid_argument("ForkJoinSystem: service curve count mismatch");
        for (const Curve& s : service_curves)
            if (s.value(0.0) != 0.0)
                throw std::invalid_argument("ForkJoinSystem: service curves must have s(0) = 0");
        if (!envelopes.empty() && envelopes.size() != K)
            throw std::invalid_argument("ForkJoinSystem: envelope count mismatch");
    }

    std::size_t K() const { return mu.size(); }
    std::vector<double> shares() const {
        std::vector<double> p(mu.size());
        for (std::size_t k = 0; k < mu.size(); ++k) p[k] = mu[k] / aggregate_rate;
        return p;
    }
    Curve service_curve(std::size_t k) const {
        return service_curves.empty() ? Curve::rate(mu[k]) : service_curves[k];
    }
};

/*!
 * The split policy as a function of cumulative work level: queue k's
 * allocation out of the first x units of work.  The quantized map partitions
 * the level axis into periods of length `quantum`; inside each period queue k
 * owns a contiguous sub-interval of length share_k * quantum, which caps the
 * windowed deviation from the fluid split at share_k*(1-share_k)*quantum.
 */
class LevelMap {
public:
    static LevelMap proportional(std::vector<double> shares) {
        return LevelMap(std::move(shares), 0.0);
    }
    static LevelMap quantized(std::vector<double> shares, double quantum) {
        if (!(quantum > 0.0)) throw std::invalid_argument("LevelMap: quantum must be positive");
        return LevelMap(std::move(shares), quantum);
    }

    std::size_t K() const { return shares_.size(); }
    double quantum() const { return quantum_; }
    const std::vector<double>& shares() const { return shares_; }

    double alloc(std::size_t k, double x) const {
        if (x <= 0.0) return 0.0;
        if (quantum_ == 0.0) return shares_[k] * x;
        const double n = std::floor(x / quantum_);
        const double r = x - n * quantum_;
        const double width = shares_[k] * quantum_;
        const double ramp = std::min(std::max(r - offsets_[k], 0.0), width);
        return n * width + ramp;
    }

    // sup{ L : alloc(k, L) <= y }
    double inverse(std::size_t k, double y) const {
        if (y <= 0.0) {
            // alloc stays zero until queue k's first sub-interval begins
            return quantum_ == 0.0 ? 0.0 : offsets_[k];
        }
        if (quantum_ == 0.0) return y / shares_[k];
        const double width = shares_[k] * quantum_;
        double n = std::floor(y / width);
        double rem = y - n * width;
        if (std::abs(rem - width) <= 1e-9 * (1.0 + std::abs(y))) {
            n += 1.0;
            rem = 0.0;
        } else if (rem <= 1e-9 * (1.0 + std::abs(y))) {
            rem = 0.0;
        }
        return n * quantum_ + offsets_[k] + rem;
    }

    // level breakpoints of the allocation map within (x0, x1), ascending
    std::vector<double> breakpoints(double x0, double x1) const {
        std::vector<double> out;
        if (quantum_ == 0.0) return out;
        double period = std::floor(x0 / quantum_) * quantum_;
        for (; period < x1; period += quantum_) {
            for (double o : offsets_) {
                const double L = period + o;
                if (L > x0 && L < x1) out.push_back(L);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    LevelMap(std::vector<double> shares, double quantum)
        : shares_(std::move(shares)), quantum_(quantum) {
        offsets_.resize(shares_.size(), 0.0);
        double acc = 0.0;
        for (std::size_t k = 0; k < shares_.size(); ++k) {
            offsets_[k] = acc * quantum_;
            acc += shares_[k];
        }
    }

    std::vector<double> shares_;
    std::vector<double> offsets_;
    double quantum_ = 0.0;
};

struct SplitResult {
    std::vector<CumulativeProcess> parts;
    LevelMap level_map = LevelMap::proportional({1.0});
    std::vector<double> epsilon;
};

inline SplitResult split(const CumulativeProcess& A, const ForkJoinSystem& sys) {
    const std::size_t K = sys.K();
    const std::vector<double> p =
        sys.split.policy == SplitPolicy::CustomWeights ? sys.split.weights : sys.shares();

    SplitResult res;
    res.epsilon = sys.epsilon;
    if (K == 1) {
        res.parts = {A};
        res.level_map = LevelMap::proportional({1.0});
        res.epsilon = {0.0};
        return res;
    }
    if (sys.split.policy != SplitPolicy::QuantizedProportional) {
        res.level_map = LevelMap::proportional(p);
        res.parts.reserve(K);
        for (std::size_t k = 0; k < K; ++k) res.parts.push_back(A.scaled(p[k]));
        return res;
    }

    const LevelMap map = LevelMap::quantized(p, sys.split.quantum);
    res.level_map = map;
    std::vector<std::vector<Event>> ev(K);
    if (A.interp() == Interp::Step) {
        for (const Event& e : A.events())
            for (std::size_t k = 0; k < K; ++k)
                ev[k].push_back({e.time, map.alloc(k, e.cumulative)});
    } else {
        // insert events where the allocation map kinks inside a fluid segment
        double t0 = 0.0, x0 = 0.0;
        for (const Event& e : A.events()) {
            if (e.time > t0 && e.cumulative > x0) {
                const double rate = (e.cumulative - x0) / (e.time - t0);
                for (double L : map.breakpoints(x0, e.cumulative)) {
                    const double t = t0 + (L - x0) / rate;
                    for (std::size_t k = 0; k < K; ++k)
                        ev[k].push_back({t, map.alloc(k, L)});
                }
            }
            for (std::size_t k = 0; k < K; ++k)
                ev[k].push_back({e.time, map.alloc(k, e.cumulative)});
            t0 = e.time;
            x0 = e.cumulative;
        }
    }
    res.parts.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        // drop duplicate times that fp-collapsed
        std::vector<Event>& v = ev[k];
        std::vector<Event> clean;
        clean.reserve(v.size());
        for (const Event& e : v) {
            if (!clean.empty() && e.time <= clean.back().time)
                clean.back().cumulative = std::max(clean.back().cumulative, e.cumulative);
            else
                clean.push_back(e);
        }
        res.parts.emplace_back(std::move(clean), A.interp());
    }
    return res;
}

// Exact work-conserving fluid server at rate mu: d = a * (rate curve),
// computed by the Lindley workload recursion, event by event.
inline CumulativeProcess simulate_queue(const CumulativeProcess& a, double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::domain_error("simulate_queue: rate must be positive");
    std::vector<Event> out;
    auto emit = [&](double time, double val) {
        if (!out.empty() && time <= out.back().time) {
            out.back().cumulative = std::max(out.back().cumulative, val);
            return;
        }
        out.push_back({time, val});
    };
    double t = 0.0, d = 0.0, backlog = 0.0, prev_cum = 0.0, prev_t = 0.0;

    if (a.interp() == Interp::Step) {
        for (const Event& e : a.events()) {
            if (backlog > 0.0) {
                const double t_empty = t + backlog / mu;
                if (t_empty < e.time) {
                    d += backlog;
                    backlog = 0.0;
                    emit(t_empty, d);
                } else {
                    const double served = mu * (e.time - t);
                    d += served;
                    backlog = std::max(0.0, backlog - served);
                }
            }
            t = e.time;
            emit(t, d);
            backlog += e.cumulative - prev_cum;
            prev_cum = e.cumulative;
        }
    } else {
        for (const Event& e : a.events()) {
            const double len = e.time - prev_t;
            if (len <= 0.0) {  // jump at time zero
                backlog += e.cumulative - prev_cum;
                prev_cum = e.cumulative;
                emit(e.time, d);
                continue;
            }
            const double r = (e.cumulative - prev_cum) / len;
            if (backlog > 0.0 && mu > r) {
                const double t_empty = prev_t + backlog / (mu - r);
                if (t_empty < e.time) {
                    d += mu * (t_empty - prev_t);
                    emit(t_empty, d);
                    d += r * (e.time - t_empty);
                    backlog = 0.0;
                    emit(e.time, d);
                } else {
                    d += mu * len;
                    backlog = std::max(0.0, backlog + (r - mu) * len);
                    emit(e.time, d);
                }
            } else if (backlog <= 0.0 && r <= mu) {
                d = e.cumulative;  // server keeps up exactly
                backlog = 0.0;
                emit(e.time, d);
            } else {  // backlogged or overloaded: serve at full rate
                d += mu * len;
                backlog = std::max(0.0, backlog + (r - mu) * len);
                emit(e.time, d);
            }
            prev_t = e.time;
            prev_cum = e.cumulative;
        }
        t = prev_t;
    }
    if (backlog > 0.0) {
        d += backlog;
        emit(t + backlog / mu, d);
    }
    return CumulativeProcess(std::move(out), Interp::Linear);
}

inline CumulativeProcess shift_process(const CumulativeProcess& a, double delay) {
    if (delay < 0.0) throw std::domain_error("shift_process: negative delay");
    if (delay == 0.0) return a;
    std::vector<Event> ev = a.events();
    for (Event& e : ev) e.time += delay;
    return CumulativeProcess(std::move(ev), a.interp());
}

// Departures of the slowest server still compliant with service curve s.
// Rate and rate-latency curves get the exact O(n) path; anything else is
// sampled on the provided grid (min-plus evaluation is exact pointwise).
inline CumulativeProcess minimal_server(const CumulativeProcess& a, const Curve& s,
                                        const std::vector<double>& fallback_times) {
    const auto& segs = s.segments();
    if (!s.inf_from()) {
        if (segs.size() == 1 && segs[0].value == 0.0 && segs[0].slope > 0.0)
            return simulate_queue(a, segs[0].slope);
        if (segs.size() == 2 && segs[0].value == 0.0 && segs[0].slope == 0.0 &&
            segs[1].value == 0.0 && segs[1].slope > 0.0)
            return simulate_queue(shift_process(a, segs[1].start), segs[1].slope);
    }
    if (segs.size() == 1 && segs[0].value == 0.0 && segs[0].slope == 0.0 && s.inf_from())
        return shift_process(a, *s.inf_from());  // pure delay element
    std::vector<Event> ev;
    ev.reserve(fallback_times.size());
    for (double t : fallback_times) {
        if (t < 0.0) continue;
        double v = min_plus_conv_eval(a, s, t);
        if (std::isinf(v)) v = 0.0;  // service curve identically +inf after 0
        if (!ev.empty() && t <= ev.back().time) continue;
        if (!ev.empty()) v = std::max(v, ev.back().cumulative);
        ev.push_back({t, v});
    }
    return CumulativeProcess(std::move(ev), Interp::Linear);
}

// delta_k(t) = t - a^{-1}(d(t)): the delay of the work departing at t.
inline double virtual_delay(const CumulativeProcess& a, const CumulativeProcess& d,
                            double t) {
    const double dt = d.value(t);
    if (dt > a.value(t) + 1e-9)
        throw std::invalid_argument("virtual_delay: departures exceed arrivals");
    if (dt <= 0.0) return 0.0;  // nothing has departed (or arrived) yet
    return std::max(0.0, t - a.pseudo_inverse(dt));
}

namespace detail {

// forward cursor for evaluating a process at ascending sample times
class ProcessCursor {
public:
    explicit ProcessCursor(const CumulativeProcess& p) : p_(&p) {}
    double value(double t) {
        const auto& ev = p_->events();
        while (i_ < ev.size() && advance_condition(ev, t)) ++i_;
        if (p_->interp() == Interp::Step) {
            return i_ == 0 ? 0.0 : ev[i_ - 1].cumulative;
        }
        if (i_ >= ev.size()) return ev.empty() ? 0.0 : ev.back().cumulative;
        const double t0 = i_ == 0 ? 0.0 : ev[i_ - 1].time;
        const double v0 = i_ == 0 ? 0.0 : ev[i_ - 1].cumulative;
        if (ev[i_].time == t0) return v0;
        if (t <= t0) return v0;
        const double w = (t - t0) / (ev[i_].time - t0);
        return v0 + w * (ev[i_].cumulative - v0);
    }

private:
    bool advance_condition(const std::vector<Event>& ev, double t) const {
        return p_->interp() == Interp::Step ? ev[i_].time < t : ev[i_].time < t;
    }
    const CumulativeProcess* p_;
    std::size_t i_ = 0;
};

}  // namespace detail

// Join barrier: the output level at time t is the largest prefix of arrived
// work every queue has finished, judged through the split's level map.  For
// continuous A this equals the paper's A(min_k a_k^{-1}(d_k(t))).
inline CumulativeProcess join_departures(const CumulativeProcess& A,
                                         const LevelMap& map,
                                         const std::vector<CumulativeProcess>& d,
                                         const std::vector<double>& sample_times) {
    const std::size_t K = map.K();
    if (d.size() != K) throw std::invalid_argument("join_departures: size mismatch");
    std::vector<detail::ProcessCursor> dc;
    dc.reserve(K);
    for (const auto& proc : d) dc.emplace_back(proc);
    detail::ProcessCursor ac(A);

    std::vector<Event> out;
    out.reserve(sample_times.size());
    double prev = 0.0;
    for (double t : sample_times) {
        if (t < 0.0) continue;
        double level = kInf;
        for (std::size_t k = 0; k < K; ++k)
            level = std::min(level, map.inverse(k, dc[k].value(t)));
        level = std::min(level, ac.value(t));
        level = std::max(level, prev);  // D is non-decreasing
        prev = level;
        if (!out.empty() && t <= out.back().time) continue;
        out.push_back({t, level});
    }
    return CumulativeProcess(std::move(out), Interp::Linear);
}

// Spec-form join from realized parts: the level map is reconstructed by
// linear interpolation of each queue's share inside every batch of A.
inline CumulativeProcess join_departures(const CumulativeProcess& A,
                                         const std::vector<CumulativeProcess>& a,
                                         const std::vector<CumulativeProcess>& d,
                                         double grid_step = 1e-2) {
    const std::size_t K = a.size();
    if (d.size() != K || K == 0)
        throw std::invalid_argument("join_departures: inconsistent split");
    // conservation check
    double horizon = A.horizon();
    for (const auto& proc : d) horizon = std::max(horizon, proc.horizon());
    for (double t : {0.5 * horizon, horizon}) {
        double sum = 0.0;
        for (const auto& part : a) sum += part.value(t);
        if (std::abs(sum - A.value(t)) > 1e-6 * (1.0 + A.value(t)))
            throw std::invalid_argument("join_departures: parts do not sum to A");
    }

    auto level_of = [&](std::size_t k, double y) {
        const auto& pe = a[k].events();
        const auto& Ae = A.events();
        // last event with part-cumulative <= y, then interpolate inside batch
        std::size_t lo = 0, hi = pe.size();
        while (lo < hi) {  // first index with cumulative > y
            std::size_t mid = (lo + hi) / 2;
            if (pe[mid].cumulative > y)
                hi = mid;
            else
                lo = mid + 1;
        }
        if (lo == 0) {
            const double c0 = pe.empty() ? 0.0 : pe[0].cumulative;
            if (c0 <= 0.0) return 0.0;
            return (y / c0) * Ae[0].cumulative;
        }
        if (lo >= pe.size()) return A.total();
        const double y0 = pe[lo - 1].cumulative, y1 = pe[lo].cumulative;
        const double L0 = Ae[lo - 1].cumulative, L1 = Ae[lo].cumulative;
        if (y1 <= y0) return L0;
        return L0 + (y - y0) / (y1 - y0) * (L1 - L0);
    };

    std::vector<double> times{0.0};
    for (const auto& proc : d)
        for (const Event& e : proc.events()) times.push_back(e.time);
    for (double t = 0.0; t <= horizon + grid_step; t += grid_step) times.push_back(t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<Event> out;
    out.reserve(times.size());
    double prev = 0.0;
    for (double t : times) {
        double level = kInf;
        for (std::size_t k = 0; k < K; ++k) level = std::min(level, level_of(k, d[k].value(t)));
        level = std::min(level, A.value(t));
        level = std::max(level, prev);
        prev = level;
        if (!out.empty() && t <= out.back().time) continue;
        out.push_back({t, level});
    }
    return CumulativeProcess(std::move(out), Interp::Linear);
}

// max_k of the per-queue horizontal deviations; the end-to-end service curve
// is then at least the shifted convolution identity.
inline std::vector<double> claim1_per_queue_bounds(const ForkJoinSystem& sys) {
    if (sys.envelopes.empty())
        throw std::invalid_argument("claim1_delay_bound: envelopes required");
    std::vector<double> out;
    out.reserve(sys.K());
    for (std::size_t k = 0; k < sys.K(); ++k) {
        try {
            out.push_back(horizontal_deviation(sys.envelopes[k], sys.service_curve(k)));
        } catch (const UnboundedDelayError&) {
            throw UnboundedDelayError("unbounded delay: queue " + std::to_string(k));
        }
    }
    return out;
}

inline double claim1_delay_bound(const ForkJoinSystem& sys) {
    double d = 0.0;
    for (double v : claim1_per_queue_bounds(sys)) d = std::max(d, v);
    return d;
}

struct BoundReportRow {
    double t = 0.0, arrivals = 0.0, departures = 0.0, bound = 0.0, slack = 0.0;
};

struct BoundReport {
    bool hypothesis_ok = true;
    std::vector<std::size_t> violated_queues;
    double delay_bound = 0.0;
    std::vector<double> per_queue_bound;
    std::vector<BoundReportRow> rows;
    double min_slack = kInf;
};

struct VerifyClaim1Options {
    double grid = 1e-2;        // sampling step for D and the slack rows
    double horizon_margin = 0.0;  // extra time past the last arrival (auto if 0)
};

struct ForkJoinRun {
    SplitResult split;
    std::vector<CumulativeProcess> departures;
    CumulativeProcess joined;
    std::vector<double> sample_times;
};

inline std::vector<double> make_grid(double t_end, double step) {
    std::vector<double> ts;
    const std::size_t n = static_cast<std::size_t>(std::ceil(t_end / step)) + 1;
    ts.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) ts.push_back(std::min(i * step, t_end));
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

// Simulate the fork-join system on input A: split, serve each queue with the
// slowest compliant server, join on a grid united with departure events.
inline ForkJoinRun simulate_forkjoin(const ForkJoinSystem& sys, const CumulativeProcess& A,
                                     double grid = 1e-2, double horizon_margin = 0.0) {
    ForkJoinRun run;
    run.split = split(A, sys);
    const std::size_t K = sys.K();
    double mu_min = sys.mu[0];
    for (double m : sys.mu) mu_min = std::min(mu_min, m);
    double latency = 0.0;
    for (std::size_t k = 0; k < K && !sys.service_curves.empty(); ++k)
        latency = std::max(latency, sys.service_curves[k].pseudo_inverse(0.0));
    if (horizon_margin <= 0.0)
        horizon_margin = A.total() / mu_min + latency + 10.0 * grid;
    const double t_end = A.horizon() + horizon_margin;
    std::vector<double> grid_times = make_grid(t_end, grid);

    run.departures.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<double> fallback = grid_times;
        for (const Event& e : run.split.parts[k].events()) fallback.push_back(e.time);
        std::sort(fallback.begin(), fallback.end());
        fallback.erase(std::unique(fallback.begin(), fallback.end()), fallback.end());
        run.departures.push_back(minimal_server(run.split.parts[k], sys.service_curve(k), fallback));
    }

    std::vector<double> times = grid_times;
    for (const auto& dproc : run.departures)
        for (const Event& e : dproc.events()) times.push_back(e.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    run.sample_times = std::move(times);
    run.joined = join_departures(A, run.split.level_map, run.departures, run.sample_times);
    return run;
}

inline BoundReport verify_claim1(const ForkJoinSystem& sys, const CumulativeProcess& A,
                                 VerifyClaim1Options opt = {}) {
    BoundReport rep;
    ForkJoinSystem work = sys;

    ForkJoinRun run = simulate_forkjoin(work, A, opt.grid, opt.horizon_margin);

    if (work.envelopes.empty()) {
        // measured per-queue envelopes: tight token buckets at the queues'
        // proportional share of the long-run input rate
        const double rho_hat = A.horizon() > 0.0 ? A.total() / A.horizon() : 0.0;
        std::vector<Curve> env;
        env.reserve(work.K());
        const std::vector<double>& p = run.split.level_map.shares();
        for (std::size_t k = 0; k < work.K(); ++k) {
            const double rho_k = p[k] * rho_hat;
            const double sigma_k = tight_burst(run.split.parts[k], rho_k);
            env.push_back(Curve::token_bucket(sigma_k, rho_k));
        }
        work.envelopes = std::move(env);
    }

    for (std::size_t k = 0; k < work.K(); ++k) {
        const Conformance c = conforms(run.split.parts[k], work.envelopes[k]);
        if (!c.conformant) {
            rep.hypothesis_ok = false;
            rep.violated_queues.push_back(k);
        }
    }

    rep.per_queue_bound = claim1_per_queue_bounds(work);
    for (double v : rep.per_queue_bound) rep.delay_bound = std::max(rep.delay_bound, v);

    detail::ProcessCursor Dc(run.joined);
    for (double t : run.sample_times) {
        BoundReportRow row;
        row.t = t;
        row.arrivals = A.value(t);
        row.departures = Dc.value(t);
        row.bound = A.value(std::max(0.0, t - rep.delay_bound));
        row.slack = row.departures - row.bound;
        rep.min_slack = std::min(rep.min_slack, row.slack);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace fjnc
