#include "volcp/lstv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "volcp/error.hpp"

namespace volcp {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kTieTol = 1e-10;

// Homotopy state. With active breakpoints a_1 < ... < a_k and signs s_m the
// solution for penalty scale L = n*lambda/2 is
//   theta = segment mean - L * v_m,  v_m = (s_m - s_{m+1}) / len_m,
// with s_0 = s_{k+1} = 0.
class Homotopy {
public:
    explicit Homotopy(const std::vector<double>& y) : n_(y.size()) {
        long double total = 0.0L;
        for (double v : y) total += v;
        center_ = static_cast<double>(total / static_cast<long double>(n_));
        prefix_.assign(n_ + 1, 0.0L);
        long double abs_sum = 0.0L;
        for (std::size_t i = 0; i < n_; ++i) {
            prefix_[i + 1] = prefix_[i] + (static_cast<long double>(y[i]) - center_);
            abs_sum += std::abs(static_cast<long double>(y[i]));
        }
        zero_tol_ = kRelTol * static_cast<double>(abs_sum);
    }

    std::size_t n() const { return n_; }
    double scale() const { return scale_; }
    const std::vector<std::size_t>& active() const { return active_; }

    // Advances to the next event. Returns false when none remains (the
    // solution path then continues unchanged down to L = 0).
    bool next_event(PathEvent& ev) {
        Candidate best = next_candidate();
        if (best.index == 0) return false;
        if (best.remove) {
            const auto pos = std::lower_bound(active_.begin(), active_.end(), best.index);
            const auto off = pos - active_.begin();
            active_.erase(pos);
            signs_.erase(signs_.begin() + off);
            last_removed_ = best.index;
        } else {
            const auto pos = std::lower_bound(active_.begin(), active_.end(), best.index);
            const auto off = pos - active_.begin();
            active_.insert(pos, best.index);
            signs_.insert(signs_.begin() + off, best.sign);
            last_removed_ = 0;
        }
        scale_ = best.scale;
        ev.action = best.remove ? PathAction::Remove : PathAction::Add;
        ev.breakpoint = best.index;
        ev.lambda = to_lambda(scale_);
        return true;
    }

    // Scale at which the next event would occur, without applying it.
    double peek_scale() { return next_candidate().scale; }

    std::vector<double> fit_at(double scale) const {
        std::vector<double> out(n_);
        const std::size_t k = active_.size();
        for (std::size_t m = 0; m <= k; ++m) {
            const std::size_t a = m == 0 ? 0 : active_[m - 1];
            const std::size_t b = m == k ? n_ : active_[m];
            const double len = static_cast<double>(b - a);
            const double s_left = m == 0 ? 0.0 : signs_[m - 1];
            const double s_right = m == k ? 0.0 : signs_[m];
            const double level = segment_mean(a, b) - scale * (s_left - s_right) / len;
            std::fill(out.begin() + static_cast<std::ptrdiff_t>(a),
                      out.begin() + static_cast<std::ptrdiff_t>(b), level);
        }
        return out;
    }

    double to_lambda(double scale) const { return 2.0 * scale / static_cast<double>(n_); }
    double to_scale(double lambda) const { return lambda * static_cast<double>(n_) / 2.0; }

private:
    struct Candidate {
        std::size_t index = 0;  // 0 = none
        double sign = 0.0;
        double scale = 0.0;
        bool remove = false;
    };

    double segment_mean(std::size_t a, std::size_t b) const {
        return static_cast<double>((prefix_[b] - prefix_[a]) / static_cast<long double>(b - a) +
                                   center_);
    }

    Candidate next_candidate() const {
        const double cap = scale_ * (1.0 + kRelTol);
        Candidate best;
        std::vector<Candidate> entries;
        const std::size_t k = active_.size();

        for (std::size_t m = 0; m <= k; ++m) {
            const std::size_t a = m == 0 ? 0 : active_[m - 1];
            const std::size_t b = m == k ? n_ : active_[m];
            const long double len = static_cast<long double>(b - a);
            const long double seg_sum = prefix_[b] - prefix_[a];
            const long double mean = seg_sum / len;
            const double s_left = m == 0 ? 0.0 : signs_[m - 1];
            const double s_right = m == k ? 0.0 : signs_[m];
            for (std::size_t j = a + 1; j < b; ++j) {
                if (j == last_removed_) continue;
                // Residual tail sum from j at the unpenalized segment fit.
                const long double tail = prefix_[b] - prefix_[j];
                const double c = static_cast<double>(tail - static_cast<long double>(b - j) * mean);
                // Tail sum of the direction vector, a convex combination of the
                // neighbouring signs.
                const double u = s_right + static_cast<double>(b - j) * (s_left - s_right) /
                                               static_cast<double>(len);
                for (double sg : {1.0, -1.0}) {
                    const double denom = sg - u;
                    if (std::abs(denom) <= kRelTol) continue;
                    const double lam = c / denom;
                    if (!(lam > zero_tol_) || lam > cap) continue;
                    entries.push_back(Candidate{j, sg, lam, false});
                }
            }
        }
        // Near-ties go to the smallest index; j is visited in increasing order.
        double top = 0.0;
        for (const auto& c : entries) top = std::max(top, c.scale);
        for (const auto& c : entries) {
            if (c.scale >= top * (1.0 - kTieTol)) {
                best = c;
                break;
            }
        }

        // Zero crossings of active jumps strictly below the current scale.
        for (std::size_t m = 0; m < k; ++m) {
            const std::size_t a = m == 0 ? 0 : active_[m - 1];
            const std::size_t b = active_[m];
            const std::size_t e = m + 1 == k ? n_ : active_[m + 1];
            const double s_ll = m == 0 ? 0.0 : signs_[m - 1];
            const double s_m = signs_[m];
            const double s_rr = m + 1 == k ? 0.0 : signs_[m + 1];
            const double v_left = (s_ll - s_m) / static_cast<double>(b - a);
            const double v_right = (s_m - s_rr) / static_cast<double>(e - b);
            const double dv = v_right - v_left;
            if (std::abs(dv) <= kRelTol) continue;
            const double dmean = segment_mean(b, e) - segment_mean(a, b);
            const double lam = dmean / dv;
            if (!(lam > zero_tol_) || lam >= scale_ * (1.0 - kRelTol)) continue;
            if (lam > best.scale) {
                best = Candidate{b, s_m, lam, true};
            }
        }
        return best;
    }

    std::size_t n_;
    double center_ = 0.0;
    std::vector<long double> prefix_;
    double zero_tol_ = 0.0;
    double scale_ = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> active_;
    std::vector<double> signs_;
    std::size_t last_removed_ = 0;
};

void check_series(const std::vector<double>& y) {
    detail::require_data(y.size() >= 2, "series needs at least two values");
    for (double v : y) detail::require_data(std::isfinite(v), "series contains non-finite values");
}

}  // namespace

LstvPath lstv_path(const std::vector<double>& y, std::size_t k_max, bool keep_fits) {
    check_series(y);
    detail::require(k_max >= 1 && k_max <= y.size() - 1,
                    "k_max must be in [1, n-1], got " + std::to_string(k_max));

    Homotopy h(y);
    LstvPath path;
    path.n = y.size();

    // Every event either adds or drops one breakpoint; the bound only guards
    // against cycling on degenerate input.
    const std::size_t max_steps = 4 * y.size() + 16;
    PathEvent ev;
    std::size_t step = 0;
    while (h.active().size() < k_max && step < max_steps) {
        if (!h.next_event(ev)) break;
        ev.step = step++;
        path.events.push_back(ev);
        // Clamp so the knots stay nonincreasing under round-off.
        path.knots.push_back(path.knots.empty() ? ev.lambda : std::min(ev.lambda, path.knots.back()));
        if (keep_fits) path.fits.push_back(h.fit_at(h.scale()));
    }
    if (!path.events.empty()) {
        const double end_scale = std::min(h.peek_scale(), h.scale());
        path.knots.push_back(h.to_lambda(end_scale));
        if (keep_fits) path.fits.push_back(h.fit_at(end_scale));
    }
    path.candidates = h.active();
    return path;
}

LstvPath lstv_path(const ProxySeries& p, std::size_t k_max, bool keep_fits) {
    return lstv_path(p.values, k_max, keep_fits);
}

FusedFit fused_fit_at(const std::vector<double>& y, double lambda) {
    check_series(y);
    detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");

    Homotopy h(y);
    const double target = h.to_scale(lambda);
    PathEvent ev;
    const std::size_t max_steps = 4 * y.size() + 16;
    for (std::size_t step = 0; step < max_steps; ++step) {
        if (h.peek_scale() <= target) break;
        if (!h.next_event(ev)) break;
    }
    FusedFit out;
    out.lambda = lambda;
    out.active = h.active();
    out.fit = h.fit_at(std::min(target, h.scale()));
    return out;
}

FusedFit fused_fit_at(const ProxySeries& p, double lambda) { return fused_fit_at(p.values, lambda); }

std::vector<std::size_t> jumps_of(const std::vector<double>& fit) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < fit.size(); ++i) {
        if (fit[i] != fit[i - 1]) out.push_back(i);
    }
    return out;
}

KktReport kkt_check(const std::vector<double>& y, const FusedFit& fit) {
    detail::require_data(y.size() == fit.fit.size(), "kkt_check: length mismatch");
    detail::require_data(!y.empty(), "kkt_check: empty series");
    const std::size_t n = y.size();
    const double scale = fit.lambda * static_cast<double>(n) / 2.0;
    // Jumps below round-off of the data carry no sign.
    double y_max = 0.0;
    for (double v : y) y_max = std::max(y_max, std::abs(v));
    const double jump_tol = 1e-10 * y_max;

    std::vector<long double> tail(n + 1, 0.0L);
    for (std::size_t i = n; i-- > 0;) {
        tail[i] = tail[i + 1] + (static_cast<long double>(y[i]) - fit.fit[i]);
    }

    KktReport rep;
    rep.max_violation = std::abs(static_cast<double>(tail[0]));
    std::vector<bool> is_active(n, false);
    for (std::size_t b : fit.active) {
        detail::require_data(b >= 1 && b < n, "kkt_check: active breakpoint out of range");
        is_active[b] = true;
    }
    for (std::size_t b = 1; b < n; ++b) {
        const double c = static_cast<double>(tail[b]);
        const double jump = fit.fit[b] - fit.fit[b - 1];
        double viol = std::max(0.0, std::abs(c) - scale);
        if (jump != 0.0 || is_active[b]) {
            const double sg = jump > jump_tol ? 1.0 : (jump < -jump_tol ? -1.0 : 0.0);
            double slack = std::abs(c - scale * sg);
            if (sg == 0.0) slack = viol;
            if (is_active[b]) rep.active_slack.push_back(slack);
            viol = std::max(viol, slack);
        }
        rep.max_violation = std::max(rep.max_violation, viol);
    }
    return rep;
}

std::vector<double> screen_statistic(const std::vector<double>& y, std::size_t bw) {
    const std::size_t n = y.size();
    detail::require(bw >= 1 && bw <= n / 2,
                    "screen bandwidth must be in [1, n/2], got " + std::to_string(bw));
    std::vector<long double> prefix(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + y[i];
    std::vector<double> f;
    f.reserve(n - 2 * bw + 1);
    for (std::size_t b = bw; b + bw <= n; ++b) {
        const long double right = prefix[b + bw] - prefix[b];
        const long double left = prefix[b] - prefix[b - bw];
        f.push_back(static_cast<double>((right - left) / static_cast<long double>(bw)));
    }
    return f;
}

std::vector<std::size_t> screen_filter(const std::vector<double>& y, std::size_t bw, double threshold) {
    detail::require(std::isfinite(threshold) && threshold > 0.0, "screen threshold must be > 0");
    const std::vector<double> f = screen_statistic(y, bw);
    std::vector<std::size_t> out;
    std::size_t i = 0;
    while (i < f.size()) {
        std::size_t j = i;
        while (j + 1 < f.size() && std::abs(f[j + 1]) == std::abs(f[i])) ++j;
        const double v = std::abs(f[i]);
        const bool left_ok = i == 0 || std::abs(f[i - 1]) < v;
        const bool right_ok = j + 1 == f.size() || std::abs(f[j + 1]) < v;
        if (left_ok && right_ok && v >= threshold) out.push_back(bw + i);
        i = j + 1;
    }
    return out;
}

std::vector<std::size_t> screen_filter(const std::vector<double>& y, std::size_t bw, double threshold,
                                       const std::vector<std::size_t>& candidates) {
    detail::require(std::isfinite(threshold) && threshold > 0.0, "screen threshold must be > 0");
    const std::vector<double> f = screen_statistic(y, bw);
    std::vector<std::size_t> out;
    for (std::size_t c : candidates) {
        if (c < bw || c + bw > y.size()) continue;
        if (std::abs(f[c - bw]) >= threshold) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> jump_filter(const std::vector<double>& d, double lambda, std::size_t n) {
    detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
    const double count = static_cast<double>(n == 0 ? d.size() : n);
    const double thr = count * lambda / 2.0;
    std::vector<double> u(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double mag = std::abs(d[i]) - thr;
        u[i] = mag > 0.0 ? std::copysign(mag, d[i]) : 0.0;
    }
    return u;
}

JumpEstimate jump_filter(const ReturnSeries& r, double lambda) {
    detail::require_data(r.size() >= 2, "jump_filter: need at least two returns");
    JumpEstimate est;
    auto boundary = r.session_boundaries.begin();
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        while (boundary != r.session_boundaries.end() && *boundary < i + 1) ++boundary;
        if (boundary != r.session_boundaries.end() && *boundary == i + 1) continue;
        const double next = r.returns[i + 1];
        const double bv = std::numbers::pi / 2.0 * std::abs(r.returns[i]) * std::abs(next);
        est.difference.push_back(next * next - bv);
        est.index.push_back(i + 1);
    }
    est.jumps = jump_filter(est.difference, lambda, r.size());
    return est;
}

}  // namespace volcp
