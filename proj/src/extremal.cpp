#include "pluripot/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "pluripot/lp.hpp"
#include "pluripot/parallel.hpp"

namespace pluripot::extremal {

namespace {

constexpr double kViolationTol = 1e-9;
constexpr int kMaxCutRounds = 200;

// Sample sets confined to the real axis (or, in two dimensions, to a real
// box) get the Chebyshev family on their own span per axis; everything
// else keeps scaled monomials.  Both the cutting-plane solver and the
// reported estimate must route through here so the stored certificate is
// expressed in the basis it was solved in.
BasisSpec pick_basis(const region::SampledRegion& reg, std::size_t n) {
    if (!reg.points.empty() && (reg.dim == 1 || reg.dim == 2)) {
        const double im_tol = 1e-9 * std::max(1.0, reg.R);
        double lo1 = reg.points[0].z1.real(), hi1 = lo1;
        double lo2 = reg.points[0].z2.real(), hi2 = lo2;
        bool real_box = true;
        for (const Pt& p : reg.points) {
            if (std::fabs(p.z1.imag()) > im_tol ||
                (reg.dim == 2 && std::fabs(p.z2.imag()) > im_tol)) {
                real_box = false;
                break;
            }
            lo1 = std::min(lo1, p.z1.real());
            hi1 = std::max(hi1, p.z1.real());
            lo2 = std::min(lo2, p.z2.real());
            hi2 = std::max(hi2, p.z2.real());
        }
        if (real_box && hi1 - lo1 > 1e-12) {
            if (reg.dim == 1)
                return BasisSpec::chebyshev(n, 0.5 * (hi1 - lo1), 0.5 * (hi1 + lo1));
            if (hi2 - lo2 > 1e-12)
                return BasisSpec::chebyshev2(n, 0.5 * (hi1 - lo1), 0.5 * (hi1 + lo1),
                                             0.5 * (hi2 - lo2), 0.5 * (hi2 + lo2));
        }
    }
    return BasisSpec::standard(n, reg.dim, std::max(reg.R, 1e-12));
}

// Cutting-plane driver for one evaluation point.  The modulus constraint
// |P(p)| <= 1 is linearized as Re(e^{2 pi i k/K} P(p)) <= 1 over the
// K-phase grid; only four axis phases are installed up front and further
// tangents are appended where the current certificate actually violates
// them, warm-starting the LP each round.  The optimum is e^{n v}, so the
// program mixes magnitudes 1..e^{n v} and double precision supports it up
// to n v of roughly 30; degrees past that wall need a smaller v (a point
// nearer the region) or a split into shorter degree steps.
struct CutSolver {
    const region::SampledRegion& reg;
    Pt z0;
    std::size_t n, K;
    BasisSpec basis;

    std::vector<double> pc, ps;             // cos/sin of the phase grid
    std::vector<std::vector<cx>> momo;      // per-sample basis values
    std::vector<cx> momo0;                  // basis values at z0
    std::vector<std::vector<std::uint32_t>> added;  // installed phases per sample
    lp::LinearProgram prog;
    lp::LpSolution sol;
    long iterations = 0;
    bool converged = true;

    CutSolver(const region::SampledRegion& r, const Pt& z, std::size_t deg,
              std::size_t phases)
        : reg(r), z0(z), n(deg), K(phases) {
        basis = pick_basis(reg, n);
        momo.reserve(reg.points.size());
        for (const Pt& p : reg.points) momo.push_back(basis.eval(p));
        momo0 = basis.eval(z0);
        pc.resize(K);
        ps.resize(K);
        for (std::size_t k = 0; k < K; ++k) {
            pc[k] = std::cos(2.0 * PI * static_cast<double>(k) / static_cast<double>(K));
            ps[k] = std::sin(2.0 * PI * static_cast<double>(k) / static_cast<double>(K));
        }
        added.assign(reg.points.size(), {});
    }

    std::vector<double> make_row(std::size_t i, std::size_t k) const {
        const std::size_t cnt = basis.count();
        std::vector<double> row(2 * cnt);
        for (std::size_t j = 0; j < cnt; ++j) {
            cx rot = cx(pc[k], ps[k]) * momo[i][j];
            row[2 * j] = rot.real();
            row[2 * j + 1] = -rot.imag();
        }
        return row;
    }

    std::vector<cx> coefficients() const {
        const std::size_t cnt = basis.count();
        std::vector<cx> c(cnt);
        for (std::size_t j = 0; j < cnt; ++j)
            c[j] = cx(sol.point[2 * j], sol.point[2 * j + 1]);
        return c;
    }

    cx value_at_sample(const std::vector<cx>& c, std::size_t i) const {
        cx w{0.0, 0.0};
        for (std::size_t j = 0; j < c.size(); ++j) w += c[j] * momo[i][j];
        return w;
    }

    void run() {
        const std::size_t cnt = basis.count();
        prog.dim = 2 * cnt;
        prog.objective.resize(prog.dim);
        prog.maximize = true;
        for (std::size_t j = 0; j < cnt; ++j) {
            prog.objective[2 * j] = momo0[j].real();
            prog.objective[2 * j + 1] = -momo0[j].imag();
        }
        const std::uint32_t quarter = static_cast<std::uint32_t>(K / 4);
        for (std::size_t i = 0; i < momo.size(); ++i)
            for (std::uint32_t q = 0; q < 4; ++q) {
                std::uint32_t k = q * quarter;
                prog.add_constraint(make_row(i, k), 1.0);
                added[i].push_back(k);
            }

        sol = lp::solve(prog);
        iterations += sol.iterations;
        check_status();
        if (!converged) return;

        for (int round = 0; round < kMaxCutRounds; ++round) {
            std::vector<std::pair<std::vector<double>, double>> cuts;
            std::vector<cx> c = coefficients();
            for (std::size_t i = 0; i < momo.size(); ++i) {
                cx w = value_at_sample(c, i);
                double aw = std::abs(w);
                if (aw <= 1.0 + kViolationTol) continue;
                double frac = -std::arg(w) * static_cast<double>(K) / (2.0 * PI);
                long base = static_cast<long>(std::floor(frac));
                for (long dk = 0; dk <= 1; ++dk) {
                    long kk = (base + dk) % static_cast<long>(K);
                    if (kk < 0) kk += static_cast<long>(K);
                    std::uint32_t k = static_cast<std::uint32_t>(kk);
                    double re = pc[k] * w.real() - ps[k] * w.imag();
                    if (re <= 1.0 + kViolationTol) continue;
                    auto& lst = added[i];
                    if (std::find(lst.begin(), lst.end(), k) != lst.end()) continue;
                    lst.push_back(k);
                    cuts.emplace_back(make_row(i, k), 1.0);
                }
            }
            if (cuts.empty()) return;
            sol = lp::resolve_with_added_constraints(sol, prog, cuts);
            iterations += sol.iterations;
            check_status();
            if (!converged) return;
        }
        converged = false;  // cut budget exhausted
    }

    void check_status() {
        switch (sol.status) {
            case lp::LpStatus::optimal:
                return;
            case lp::LpStatus::iteration_limit:
                converged = false;
                return;
            default:
                fail(Error::Kind::numeric,
                     "sample set fails to pin the certificate (degenerate geometry)");
        }
    }
};

}  // namespace

BasisSpec BasisSpec::chebyshev(std::size_t n, double scale, double center) {
    require(n >= 1, Error::Kind::invalid_input, "degree must be at least 1");
    require(scale > 0.0 && std::isfinite(scale), Error::Kind::invalid_input,
            "basis scale must be positive");
    BasisSpec b;
    b.n = n;
    b.m = 1;
    b.center = Pt::c1(cx(center, 0.0));
    b.scale = scale;
    b.kind = BasisKind::chebyshev;
    for (int p = 0; p <= static_cast<int>(n); ++p) b.exponents.emplace_back(p, 0);
    return b;
}

BasisSpec BasisSpec::chebyshev2(std::size_t n, double scale1, double center1,
                                double scale2, double center2) {
    require(n >= 1, Error::Kind::invalid_input, "degree must be at least 1");
    require(scale1 > 0.0 && std::isfinite(scale1) && scale2 > 0.0 && std::isfinite(scale2),
            Error::Kind::invalid_input, "basis scale must be positive");
    BasisSpec b;
    b.n = n;
    b.m = 2;
    b.center = Pt::c2(cx(center1, 0.0), cx(center2, 0.0));
    b.scale = scale1;
    b.scale2 = scale2;
    b.kind = BasisKind::chebyshev;
    for (int p = 0; p <= static_cast<int>(n); ++p)
        for (int q = 0; p + q <= static_cast<int>(n); ++q) b.exponents.emplace_back(p, q);
    return b;
}

BasisSpec BasisSpec::standard(std::size_t n, std::size_t m, double scale, Pt center) {
    require(n >= 1, Error::Kind::invalid_input, "degree must be at least 1");
    require(m == 1 || m == 2, Error::Kind::invalid_input, "dimension must be 1 or 2");
    require(scale > 0.0 && std::isfinite(scale), Error::Kind::invalid_input,
            "basis scale must be positive");
    BasisSpec b;
    b.n = n;
    b.m = m;
    b.center = center;
    b.scale = scale;
    if (m == 1) {
        for (int p = 0; p <= static_cast<int>(n); ++p) b.exponents.emplace_back(p, 0);
    } else {
        for (int p = 0; p <= static_cast<int>(n); ++p)
            for (int q = 0; p + q <= static_cast<int>(n); ++q) b.exponents.emplace_back(p, q);
    }
    return b;
}

std::vector<cx> BasisSpec::eval(const Pt& z) const {
    cx w1 = (z.z1 - center.z1) / scale;
    cx w2 = m == 2 ? (z.z2 - center.z2) / (scale2 > 0.0 ? scale2 : scale) : cx{0.0, 0.0};
    std::vector<cx> pow1(n + 1), pow2(n + 1);
    pow1[0] = pow2[0] = cx(1.0, 0.0);
    if (kind == BasisKind::chebyshev) {
        if (n >= 1) {
            pow1[1] = w1;
            pow2[1] = w2;
        }
        for (std::size_t p = 2; p <= n; ++p) {
            pow1[p] = 2.0 * w1 * pow1[p - 1] - pow1[p - 2];
            pow2[p] = 2.0 * w2 * pow2[p - 1] - pow2[p - 2];
        }
    } else {
        for (std::size_t p = 1; p <= n; ++p) {
            pow1[p] = pow1[p - 1] * w1;
            pow2[p] = pow2[p - 1] * w2;
        }
    }
    std::vector<cx> out;
    out.reserve(exponents.size());
    for (const auto& [p, q] : exponents) out.push_back(pow1[p] * pow2[q]);
    return out;
}

double phase_slack(std::size_t K, std::size_t n) {
    return std::log(1.0 / std::cos(PI / static_cast<double>(K))) / static_cast<double>(n);
}

cx eval_certificate(const GreenEstimate& e, const Pt& z) {
    std::vector<cx> mv = e.basis.eval(z);
    cx w{0.0, 0.0};
    for (std::size_t j = 0; j < mv.size(); ++j) w += e.coeffs[j] * mv[j];
    return w;
}

GreenEstimate extremal_value(const region::SampledRegion& reg, const Pt& z0,
                             std::size_t n, std::size_t K) {
    require(n >= 1, Error::Kind::invalid_input, "degree must be at least 1");
    require(K >= 4 && K % 4 == 0, Error::Kind::invalid_input,
            "phase budget must be a positive multiple of 4");
    require(z0.m == reg.dim, Error::Kind::invalid_input,
            "evaluation point dimension mismatch");
    BasisSpec basis = pick_basis(reg, n);
    require(reg.points.size() >= 2 * basis.count(), Error::Kind::invalid_input,
            "sample too small: need at least twice the basis size");

    GreenEstimate est;
    est.z0 = z0;
    est.n = n;
    est.K = K;
    est.slack = phase_slack(K, n);
    est.basis = basis;

    const double match_tol = 1e-12 * std::max(1.0, z0.norm());
    for (const Pt& p : reg.points) {
        double d2 = std::norm(z0.z1 - p.z1) + std::norm(z0.z2 - p.z2);
        if (d2 <= match_tol * match_tol) {
            // constrained point: the constant certificate already settles it
            est.coeffs.assign(basis.count(), cx{0.0, 0.0});
            est.coeffs[0] = cx(1.0, 0.0);
            est.raw = 0.0;
            est.value = 0.0;
            return est;
        }
    }

    CutSolver cs(reg, z0, n, K);
    cs.run();
    est.coeffs = cs.coefficients();
    est.lp_iterations = cs.iterations;
    est.converged = cs.converged;
    cx w0 = eval_certificate(est, z0);
    double lg = safe_log(std::abs(w0));
    est.raw = std::isfinite(lg) ? lg / static_cast<double>(n) : 0.0;
    est.value = std::max(est.raw, 0.0);
    return est;
}

std::vector<GridPointResult> green_grid(const region::SampledRegion& reg,
                                        const std::vector<Pt>& grid, std::size_t n,
                                        std::size_t K, std::size_t threads) {
    std::vector<GridPointResult> out(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        try {
            out[i].estimate = extremal_value(reg, grid[i], n, K);
            out[i].ok = true;
        } catch (const std::exception& e) {
            out[i].ok = false;
            out[i].error = e.what();
        }
    });
    return out;
}

GreenEstimate refine_phases(const GreenEstimate& e, const region::SampledRegion& reg,
                            double target_slack) {
    require(target_slack > 0.0 && std::isfinite(target_slack), Error::Kind::invalid_input,
            "target slack must be positive");
    if (e.slack <= target_slack) return e;
    std::size_t K = e.K;
    while (phase_slack(K, e.n) > target_slack) {
        require(K <= (std::size_t{1} << 22), Error::Kind::numeric,
                "phase budget explosion while chasing the slack target");
        K *= 2;
    }
    return extremal_value(reg, e.z0, e.n, K);
}

}  // namespace pluripot::extremal
