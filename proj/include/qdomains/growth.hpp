#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "fluxes.hpp"
#include "verify.hpp"

namespace qdom {

// One injection interval with constant monopole rate q > 0 and multipole rates q_j.
struct SchedulePiece {
    Rat t0, t1;
    Rat q;
    std::vector<GaussRat> qj;
};

struct SourceSchedule {
    GaussRat z1;
    std::vector<SchedulePiece> pieces;

    int ktilde() const {
        size_t k = 0;
        for (auto& p : pieces) k = std::max(k, p.qj.size());
        return static_cast<int>(k);
    }

    void validate() const {
        Rat prev_end(0);
        bool first = true;
        for (auto& p : pieces) {
            if (!(p.t0 < p.t1)) throw ValidationError("schedule piece must have t0 < t1");
            if (!first && p.t0 < prev_end) throw ValidationError("schedule pieces overlap");
            if (!(p.q > 0)) throw ValidationError("injection requires q > 0 on every piece");
            prev_end = p.t1;
            first = false;
        }
    }

    // Exact piecewise integration of the rates up to time t.
    Rat cumulative_q(const Rat& t) const {
        Rat acc(0);
        for (auto& p : pieces) {
            Rat hi = std::min(t, p.t1), lo = p.t0;
            if (hi > lo) acc += p.q * (hi - lo);
        }
        return acc;
    }
    std::vector<GaussRat> cumulative_qj(const Rat& t) const {
        std::vector<GaussRat> acc(ktilde());
        for (auto& p : pieces) {
            Rat hi = std::min(t, p.t1), lo = p.t0;
            if (hi > lo)
                for (size_t j = 0; j < p.qj.size(); ++j) acc[j] += p.qj[j] * GaussRat(hi - lo);
        }
        return acc;
    }
};

struct Frame {
    Rat t;
    ConformalMap map;
    FluxVector homog;        // cumulative fluxes of the homogeneous description
    FluxSolveReport medium;  // exact fluxes of the non-homogeneous medium
};

struct EvolveResult {
    std::vector<Frame> frames;
    std::optional<double> breakdown_time; // set when a requested time is past breakdown
};

namespace detail {

inline std::vector<Cplx> moment_targets(const Rat& Qt, const std::vector<GaussRat>& Qjt) {
    // Homogeneous moments are exactly linear in fluxes: M_p = pi p! Q_p.
    std::vector<Cplx> t(Qjt.size() + 1);
    t[0] = to_double(Qt);
    Rat fact(1);
    for (size_t p = 1; p <= Qjt.size(); ++p) {
        fact *= static_cast<int>(p);
        t[p] = (GaussRat(fact) * Qjt[p - 1]).to_complex();
    }
    return t;
}

} // namespace detail

// Domain evolution as a sequence of static inverse problems (the boundary at
// time t depends only on the cumulative fluxes, not the schedule history).
// Times with zero cumulative flux are skipped. On loss of univalence the
// breakdown time is bisected to 1e-6 and reported with the frames found so far.
inline EvolveResult evolve(const SourceSchedule& schedule, const IntertwinerBundle& bundle,
                           const std::vector<Rat>& times) {
    schedule.validate();
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw ValidationError("output times must be increasing");

    EvolveResult out;
    ConformalMap warm;
    bool have_warm = false;
    int kt = schedule.ktilde();

    auto solve_at = [&](const Rat& t) {
        Rat Qt = schedule.cumulative_q(t);
        auto Qjt = schedule.cumulative_qj(t);
        auto targets = detail::moment_targets(Qt, Qjt);
        ConformalMap guess = have_warm ? warm : disk_guess(schedule.z1, targets[0].real(), kt);
        ConformalMap map = solve_map_from_moments(targets, guess);
        FluxVector homog;
        homog.Q = Qt;
        homog.Qj = Qjt;
        return Frame{t, map, homog, fluxes_for_map(bundle, map)};
    };

    Rat last_ok(0);
    for (const Rat& t : times) {
        if (schedule.cumulative_q(t) == 0) continue; // empty domain, nothing to emit
        bool bisect = false;
        try {
            Frame f = solve_at(t);
            warm = f.map;
            have_warm = true;
            last_ok = t;
            out.frames.push_back(std::move(f));
        } catch (const NonUnivalent&) {
            bisect = true;
        } catch (const NoConvergence&) {
            // Newton divergence past the breakdown time; treated the same way.
            bisect = true;
        }
        if (bisect) {
            double lo = to_double(last_ok), hi = to_double(t);
            while (hi - lo > 1e-6) {
                double mid = 0.5 * (lo + hi);
                try {
                    Frame f = solve_at(rationalize(mid, 1e-12));
                    warm = f.map;
                    have_warm = true;
                    lo = mid;
                } catch (const NonUnivalent&) {
                    hi = mid;
                } catch (const NoConvergence&) {
                    hi = mid;
                }
            }
            out.breakdown_time = 0.5 * (lo + hi);
            break;
        }
    }
    return out;
}

struct PathReport {
    bool totals_match = false;
    double max_map_diff = 0;
    double max_flux_diff = 0;
    bool maps_agree = false;
    bool fluxes_agree = false;
    bool pass() const { return totals_match && maps_agree && fluxes_agree; }
};

// The final domain is a function of the cumulative fluxes only: two schedules
// with equal totals must reconstruct the same map and medium fluxes.
inline PathReport path_independence_check(const SourceSchedule& A, const SourceSchedule& B,
                                          const IntertwinerBundle& bundle, const Rat& t_final,
                                          double tol = 1e-10) {
    PathReport rep;
    Rat qa = A.cumulative_q(t_final), qb = B.cumulative_q(t_final);
    auto qja = A.cumulative_qj(t_final), qjb = B.cumulative_qj(t_final);
    size_t kt = std::max(qja.size(), qjb.size());
    qja.resize(kt);
    qjb.resize(kt);
    rep.totals_match = qa == qb;
    for (size_t j = 0; j < kt; ++j)
        if (!(qja[j] == qjb[j])) rep.totals_match = false;
    if (!(A.z1 == B.z1)) rep.totals_match = false;

    auto fa = evolve(A, bundle, {t_final});
    auto fb = evolve(B, bundle, {t_final});
    if (fa.frames.empty() || fb.frames.empty())
        throw NoConvergence("path check reached breakdown before the final time");
    const Frame &x = fa.frames.back(), &y = fb.frames.back();

    rep.max_map_diff = std::abs(to_double(x.map.r) - to_double(y.map.r));
    size_t nu = std::max(x.map.u.size(), y.map.u.size());
    for (size_t i = 0; i < nu; ++i) {
        Cplx ui = i < x.map.u.size() ? x.map.u[i].to_complex() : Cplx(0);
        Cplx vi = i < y.map.u.size() ? y.map.u[i].to_complex() : Cplx(0);
        rep.max_map_diff = std::max(rep.max_map_diff, std::abs(ui - vi));
    }
    rep.max_flux_diff =
        std::abs(to_double(x.medium.fluxes.Q) - to_double(y.medium.fluxes.Q));
    size_t nq = std::max(x.medium.fluxes.Qj.size(), y.medium.fluxes.Qj.size());
    for (size_t i = 0; i < nq; ++i) {
        Cplx ui = i < x.medium.fluxes.Qj.size() ? x.medium.fluxes.Qj[i].to_complex() : Cplx(0);
        Cplx vi = i < y.medium.fluxes.Qj.size() ? y.medium.fluxes.Qj[i].to_complex() : Cplx(0);
        rep.max_flux_diff = std::max(rep.max_flux_diff, std::abs(ui - vi));
    }
    rep.maps_agree = rep.max_map_diff <= tol;
    rep.fluxes_agree = rep.max_flux_diff <= tol;
    return rep;
}

} // namespace qdom
