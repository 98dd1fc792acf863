#pragma once

#include <cassert>
#include <vector>

#include "fjnc/curve.hpp"

namespace fjnc {
namespace detail {

// One affine piece on a closed domain [lo, hi] (hi may be +infinity).
struct Piece {
    double lo = 0.0, hi = 0.0;
    double v0 = 0.0;     // value at lo
    double slope = 0.0;

    double at(double x) const { return v0 + slope * (x - lo); }
    bool contains(double x, double eps) const {
        return x >= lo - eps && x <= hi + eps;
    }
};

inline std::vector<Piece> pieces_of(const Curve& f) {
    std::vector<Piece> ps;
    const auto& segs = f.segments();
    ps.reserve(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const double hi = (i + 1 < segs.size())
                              ? segs[i + 1].start
                              : (f.inf_from() ? *f.inf_from() : kInf);
        ps.push_back({segs[i].start, hi, segs[i].value, segs[i].slope});
    }
    return ps;
}

// Min-plus convolution of two affine pieces: the smaller slope runs first,
// for the length of its piece, then the larger one.
inline void convolve_pieces(const Piece& p, const Piece& q, std::vector<Piece>& out) {
    const double lo = p.lo + q.lo;
    const double v0 = p.v0 + q.v0;
    double s1 = p.slope, l1 = p.hi - p.lo;
    double s2 = q.slope, l2 = q.hi - q.lo;
    if (s2 < s1) {
        std::swap(s1, s2);
        std::swap(l1, l2);
    }
    if (s1 == s2) {
        out.push_back({lo, lo + l1 + l2, v0, s1});
        return;
    }
    if (std::isinf(l1)) {
        out.push_back({lo, kInf, v0, s1});
        return;
    }
    if (l1 > 0.0) out.push_back({lo, lo + l1, v0, s1});
    if (l2 > 0.0) out.push_back({lo + l1, lo + l1 + l2, v0 + s1 * l1, s2});
    if (l1 == 0.0 && l2 == 0.0) out.push_back({lo, lo, v0, 0.0});
}

}  // namespace detail

// Exact min-plus convolution: (f*g)(t) = min_{v<=t} { f(v) + g(t-v) }.
//
// The result is the lower envelope of the pairwise piece convolutions.  The
// envelope's breakpoints lie at piece endpoints and pairwise line crossings;
// between consecutive breakpoints a single candidate is minimal, identified
// by probing the interval midpoint.
inline Curve convolve(const Curve& f, const Curve& g) {
    using detail::Piece;
    std::vector<Piece> cand;
    {
        const auto pf = detail::pieces_of(f);
        const auto pg = detail::pieces_of(g);
        cand.reserve(2 * pf.size() * pg.size());
        for (const Piece& p : pf)
            for (const Piece& q : pg) detail::convolve_pieces(p, q, cand);
    }

    std::vector<double> xs;
    bool unbounded = false;
    double xmax = 0.0;
    for (const Piece& c : cand) {
        xs.push_back(c.lo);
        if (std::isinf(c.hi)) {
            unbounded = true;
        } else {
            xs.push_back(c.hi);
            xmax = std::max(xmax, c.hi);
        }
    }
    // pairwise crossings of the supporting lines, restricted to both domains
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const double mi = cand[i].slope, bi = cand[i].v0 - mi * cand[i].lo;
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
            const double mj = cand[j].slope, bj = cand[j].v0 - mj * cand[j].lo;
            const double dm = mi - mj;
            if (std::abs(dm) < 1e-12) continue;
            const double x = (bj - bi) / dm;
            const double lo = std::max(cand[i].lo, cand[j].lo);
            const double hi = std::min(cand[i].hi, cand[j].hi);
            if (x >= lo && x <= hi && x >= 0.0 && std::isfinite(x)) xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> ux;
    for (double x : xs) {
        if (ux.empty() || x - ux.back() > 1e-12 * (1.0 + std::abs(x))) ux.push_back(x);
    }

    auto min_candidate_at = [&](double x) -> const Piece* {
        const Piece* best = nullptr;
        double bestv = kInf;
        const double eps = 1e-12 * (1.0 + std::abs(x));
        for (const Piece& c : cand) {
            if (!c.contains(x, eps)) continue;
            const double v = c.at(x);
            if (best == nullptr || v < bestv - 1e-12 * (1.0 + std::abs(v)) ||
                (std::abs(v - bestv) <= 1e-12 * (1.0 + std::abs(v)) &&
                 (c.slope < best->slope ||
                  (c.slope == best->slope && c.lo < best->lo)))) {
                best = &c;
                bestv = v;
            }
        }
        return best;
    };

    std::vector<Segment> segs;
    if (ux.size() == 1 && !unbounded) {
        // point-domain result (e.g. convolving two shifted identities)
        const Piece* c = min_candidate_at(ux[0]);
        assert(c != nullptr);
        return Curve({{0.0, c->at(ux[0]), 0.0}}, xmax);
    }
    for (std::size_t i = 0; i + 1 < ux.size(); ++i) {
        const double probe = 0.5 * (ux[i] + ux[i + 1]);
        const Piece* c = min_candidate_at(probe);
        assert(c != nullptr);
        segs.push_back({ux[i], c->at(ux[i]), c->slope});
    }
    if (unbounded) {
        const double x0 = ux.back();
        const Piece* c = min_candidate_at(x0 + 1.0);
        assert(c != nullptr);
        segs.push_back({x0, c->at(x0), c->slope});
        return Curve(std::move(segs));
    }
    return Curve(std::move(segs), xmax);
}

// Largest horizontal distance from the envelope b to the service curve s:
// min{ z >= 0 : for all x >= 0, s(x) >= b(x - z) } with b = 0 on negatives.
// Throws UnboundedDelayError when no finite shift works.
inline double horizontal_deviation(const Curve& b, const Curve& s) {
    const bool b_inf = b.inf_from().has_value();
    const bool s_inf = s.inf_from().has_value();
    if (b_inf && !s_inf)
        throw UnboundedDelayError(
            "unbounded delay: envelope reaches +infinity, service curve never does");
    if (!b_inf && !s_inf) {
        if (b.final_slope() > s.final_slope())
            throw UnboundedDelayError(
                "unbounded delay: envelope long-run slope exceeds service slope");
        if (b.final_slope() == s.final_slope() && b.final_slope() == 0.0 &&
            b.supremum() > s.supremum())
            throw UnboundedDelayError(
                "unbounded delay: flat envelope exceeds flat service curve");
    }

    // Candidate x for the supremum of x - upinv_b(s(x)): s breakpoints, points
    // where s crosses a breakpoint value of b, and a probe in the affine tail.
    std::vector<double> xs{0.0};
    for (const Segment& seg : s.segments()) xs.push_back(seg.start);
    if (s_inf) xs.push_back(*s.inf_from());
    auto push_crossing = [&](double v) {
        if (!std::isfinite(v)) return;
        try {
            xs.push_back(s.pseudo_inverse(v));
        } catch (const UnreachableLevelError&) {
        }
    };
    for (const Segment& seg : b.segments()) {
        push_crossing(seg.value);
        push_crossing(b.value(seg.start));
    }
    if (b_inf) push_crossing(b.value(*b.inf_from()));
    if (!s_inf) {
        double xbig = 1.0;
        for (double x : xs)
            if (std::isfinite(x)) xbig = std::max(xbig, x + 1.0);
        xs.push_back(xbig);
    }

    double d = 0.0;
    for (double x : xs) {
        if (!std::isfinite(x) || x < 0.0) continue;
        if (s_inf && x > *s.inf_from()) continue;  // s is infinite: no constraint
        const double sx = s.value(x);
        if (std::isinf(sx)) continue;
        const double u = b.upper_pseudo_inverse(sx);
        if (std::isinf(u)) continue;  // satisfied for every shift at this x
        d = std::max(d, x - u);
    }
    return d;
}

}  // namespace fjnc
