#include "pluripot/region.hpp"

#include <algorithm>
#include <cmath>

namespace pluripot::region {

namespace {

constexpr double kMemberTol = 1e-12;

// Kronecker lattice generators: inverse powers of the smallest Pisot-like
// roots of x^(d+1) = x + 1, the standard choice for d-dimensional
// low-discrepancy point sets.
constexpr double kAlpha1[1] = {0.6180339887498949};
constexpr double kAlpha2[2] = {0.7548776662466927, 0.5698402909980532};
constexpr double kAlpha3[3] = {0.8191725133961645, 0.6710436067037893,
                               0.5497004779019703};
constexpr double kAlpha4[4] = {0.8566748838545029, 0.7338918566271255,
                               0.6287067210378086, 0.5385972572236101};

double lat(std::size_t j, const double* alphas, std::size_t i) {
    return frac((static_cast<double>(j) + 0.5) * alphas[i]);
}

double clip_lo(double x, double lo) { return x < lo ? lo : x; }

// Chebyshev nodes on [lo, hi] plus the two endpoints; clusters where the
// equilibrium measure of an interval does.
std::vector<double> interval_nodes(double lo, double hi, std::size_t n) {
    std::vector<double> xs;
    if (n >= 2) {
        xs.push_back(lo);
        xs.push_back(hi);
    }
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const std::size_t inner = n > 2 ? n - 2 : n;
    for (std::size_t k = 0; k < inner; ++k) {
        double t = std::cos(PI * (2.0 * static_cast<double>(k) + 1.0) /
                            (2.0 * static_cast<double>(inner)));
        xs.push_back(std::clamp(mid + half * t, lo, hi));
    }
    return xs;
}

double dist_to_interval(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

// Distance from a complex value to a real interval embedded in C.
double dist_cx_interval(cx w, double lo, double hi) {
    return std::hypot(dist_to_interval(w.real(), lo, hi), w.imag());
}

bool supports_distance(const RegionSpec& s) {
    if (s.kind == SpecKind::cone) return false;
    for (const auto& c : s.children)
        if (!supports_distance(c)) return false;
    return true;
}

// Orthonormal frame adapted to a linear form on C^2: ell(e1) = |a|,
// ell(e2) = 0, and e1, e2 are Hermitian-orthonormal.
struct FormFrame {
    Pt e1, e2;
    double norm;
};

FormFrame form_frame(const LinearForm& f) {
    const double n = f.coeff_norm();
    FormFrame fr;
    fr.norm = n;
    fr.e1 = Pt::c2(std::conj(f.a1) / n, std::conj(f.a2) / n);
    fr.e2 = Pt::c2(-f.a2 / n, f.a1 / n);
    return fr;
}

Pt combine2(const FormFrame& fr, cx alpha, cx beta) {
    return Pt::c2(alpha * fr.e1.z1 + beta * fr.e2.z1,
                  alpha * fr.e1.z2 + beta * fr.e2.z2);
}

cx unit_phase(double t) { return cx(std::cos(2.0 * PI * t), std::sin(2.0 * PI * t)); }

struct Builder {
    std::vector<Pt> boundary;
    std::vector<Pt> interior;

    void bnd(Pt p) { boundary.push_back(p); }
    void inn(Pt p) { interior.push_back(p); }
};

void sample_into(const RegionSpec& spec, double R, const Density& d, Builder& out);

void sample_disk(const RegionSpec& s, double R, const Density& d, Builder& out) {
    const double rguard = R * (1.0 + kMemberTol);
    const bool pokes_out = std::abs(s.center) + s.radius > R;
    for (std::size_t j = 0; j < d.boundary; ++j) {
        double th = 2.0 * PI * (static_cast<double>(j) + 0.5) /
                    static_cast<double>(d.boundary);
        cx z = s.center + s.radius * cx(std::cos(th), std::sin(th));
        if (std::abs(z) <= rguard) out.bnd(Pt::c1(z));
    }
    if (pokes_out) {
        // arc of the truncation circle that lies inside the disk
        for (std::size_t j = 0; j < d.boundary; ++j) {
            double th = 2.0 * PI * (static_cast<double>(j) + 0.5) /
                        static_cast<double>(d.boundary);
            cx z = R * cx(std::cos(th), std::sin(th));
            if (std::abs(z - s.center) <= s.radius * (1.0 + kMemberTol))
                out.bnd(Pt::c1(z));
        }
    }
    for (std::size_t k = 0; k < d.interior; ++k) {
        double rho = s.radius * std::sqrt((static_cast<double>(k) + 0.5) /
                                          static_cast<double>(d.interior));
        cx z = s.center + rho * unit_phase(lat(k, kAlpha1, 0));
        if (std::abs(z) <= rguard) out.inn(Pt::c1(z));
    }
}

Pt sphere_point(double r, double u1, double u2, double u3) {
    double eta = std::asin(std::sqrt(std::clamp(u3, 0.0, 1.0)));
    return Pt::c2(r * std::cos(eta) * unit_phase(u1), r * std::sin(eta) * unit_phase(u2));
}

void sample_ball(const RegionSpec& s, double R, const Density& d, Builder& out) {
    const double re = std::min(s.radius, R);
    for (std::size_t j = 0; j < d.boundary; ++j)
        out.bnd(sphere_point(re, lat(j, kAlpha3, 0), lat(j, kAlpha3, 1),
                             lat(j, kAlpha3, 2)));
    for (std::size_t j = 0; j < d.interior; ++j) {
        double rho = re * std::pow(lat(j, kAlpha4, 3), 0.25);
        out.inn(sphere_point(rho, lat(j, kAlpha4, 0), lat(j, kAlpha4, 1),
                             lat(j, kAlpha4, 2)));
    }
}

void sample_polydisk(const RegionSpec& s, double R, const Density& d, Builder& out) {
    const double rguard2 = R * R * (1.0 + 2.0 * kMemberTol);
    auto keep = [&](const Pt& p) { return p.norm2() <= rguard2; };
    const std::size_t nt = d.boundary / 2, nf = d.boundary / 4;
    for (std::size_t j = 0; j < nt; ++j) {
        Pt p = Pt::c2(s.r1 * unit_phase(lat(j, kAlpha2, 0)),
                      s.r2 * unit_phase(lat(j, kAlpha2, 1)));
        if (keep(p)) out.bnd(p);
    }
    for (std::size_t j = 0; j < nf; ++j) {
        Pt p = Pt::c2(s.r1 * unit_phase(lat(j, kAlpha3, 0)),
                      s.r2 * std::sqrt(lat(j, kAlpha3, 2)) * unit_phase(lat(j, kAlpha3, 1)));
        if (keep(p)) out.bnd(p);
        Pt q = Pt::c2(s.r1 * std::sqrt(lat(j, kAlpha3, 2)) * unit_phase(lat(j, kAlpha3, 0)),
                      s.r2 * unit_phase(lat(j, kAlpha3, 1)));
        if (keep(q)) out.bnd(q);
    }
    for (std::size_t j = 0; j < d.interior; ++j) {
        Pt p = Pt::c2(s.r1 * std::sqrt(lat(j, kAlpha4, 2)) * unit_phase(lat(j, kAlpha4, 0)),
                      s.r2 * std::sqrt(lat(j, kAlpha4, 3)) * unit_phase(lat(j, kAlpha4, 1)));
        if (keep(p)) out.inn(p);
    }
}

void sample_segment(const RegionSpec& s, double R, const Density& d, Builder& out) {
    double lo = std::max(s.a, -R), hi = std::min(s.b, R);
    if (lo > hi) return;
    for (double x : interval_nodes(lo, hi, std::max<std::size_t>(d.total(), 2)))
        out.bnd(Pt::c1(cx(x, 0.0)));
}

void sample_halfline(const RegionSpec& s, double R, const Density& d, Builder& out) {
    const double A = std::norm(s.direction);
    const double B = (std::conj(s.direction) * s.origin).real();
    const double C = std::norm(s.origin) - R * R;
    const double disc = B * B - A * C;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    double t_hi = (-B + sq) / A;
    double t_lo = std::max(0.0, (-B - sq) / A);
    if (t_hi < t_lo) return;
    for (double t : interval_nodes(t_lo, t_hi, std::max<std::size_t>(d.total(), 2)))
        out.bnd(Pt::c1(s.origin + t * s.direction));
}

void sample_slab(const RegionSpec& s, double R, const Density& d, Builder& out) {
    const FormFrame fr = form_frame(s.form);
    const double wcap = fr.norm * R;
    double lo = std::max(s.a, -wcap), hi = std::min(s.b, wcap);
    if (lo > hi) return;
    const std::size_t nw = 48;
    const std::size_t ns = std::max<std::size_t>(d.total() / nw, 6);
    std::size_t j = 0;
    for (double w : interval_nodes(lo, hi, nw)) {
        double sigma2 = R * R - (w / fr.norm) * (w / fr.norm);
        double sigma = std::sqrt(clip_lo(sigma2, 0.0));
        for (std::size_t k = 0; k < ns; ++k, ++j) {
            double u = lat(j, kAlpha2, 0), th = lat(j, kAlpha2, 1);
            double rho = (k % 3 == 0) ? sigma : sigma * std::sqrt(u);
            out.bnd(combine2(fr, cx(w / fr.norm, 0.0), rho * unit_phase(th)));
        }
    }
}

void sample_cone(const RegionSpec& s, double R, const Density& d, Builder& out) {
    const FormFrame fr = form_frame(s.form);
    const double ac = std::min(1.0, s.aperture / fr.norm);
    const double bc = std::sqrt(clip_lo(1.0 - ac * ac, 0.0));
    out.bnd(Pt::c2(cx(0.0, 0.0), cx(0.0, 0.0)));
    if (ac < 1.0) {
        for (std::size_t j = 0; j < d.boundary; ++j) {
            double rho = R * std::pow(lat(j, kAlpha3, 2), 0.25);
            cx alpha = ac * unit_phase(lat(j, kAlpha3, 0));
            cx beta = bc * unit_phase(lat(j, kAlpha3, 1));
            Pt p = combine2(fr, alpha, beta);
            out.bnd(Pt::c2(rho * p.z1, rho * p.z2));
        }
    }
    for (std::size_t j = 0; j < d.interior; ++j) {
        double rho = R * std::pow(lat(j, kAlpha4, 3), 0.25);
        double am = ac * std::sqrt(lat(j, kAlpha4, 2));
        cx alpha = am * unit_phase(lat(j, kAlpha4, 0));
        cx beta = std::sqrt(clip_lo(1.0 - am * am, 0.0)) * unit_phase(lat(j, kAlpha4, 1));
        Pt p = combine2(fr, alpha, beta);
        Pt q = Pt::c2(rho * p.z1, rho * p.z2);
        if (ac < 1.0)
            out.inn(q);
        else
            out.bnd(q);  // aperture covers every direction: nothing is interior-free
    }
}

void sample_example1(const RegionSpec&, double R, const Density& d, Builder& out) {
    const std::size_t nb_tube = (d.boundary * 7) / 10;
    const std::size_t nb_slice = d.boundary - nb_tube;
    const double rt2 = R * R - 1.0;
    if (rt2 >= 0.0) {
        const double rt = std::sqrt(rt2);
        for (std::size_t j = 0; j < nb_tube; ++j) {
            cx z1 = rt * std::sqrt(lat(j, kAlpha3, 0)) * unit_phase(lat(j, kAlpha3, 1));
            out.bnd(Pt::c2(z1, unit_phase(lat(j, kAlpha3, 2))));
        }
    }
    for (std::size_t j = 0; j < d.interior; ++j) {
        double s2 = std::sqrt(lat(j, kAlpha4, 2));
        double rad1 = std::sqrt(clip_lo(R * R - s2 * s2, 0.0));
        cx z1 = rad1 * std::sqrt(lat(j, kAlpha4, 3)) * unit_phase(lat(j, kAlpha4, 0));
        out.inn(Pt::c2(z1, s2 * unit_phase(lat(j, kAlpha4, 1))));
    }
    // singular slice {z1 = 0}: ring at the truncation radius plus a spiral fill
    const std::size_t nring = nb_slice / 3, nfill = nb_slice - nring;
    for (std::size_t j = 0; j < nring; ++j) {
        Pt p = Pt::c2(cx(0.0, 0.0),
                      R * unit_phase((static_cast<double>(j) + 0.5) / static_cast<double>(nring)));
        if (R >= 1.0)
            out.bnd(p);
        else
            out.inn(p);
    }
    for (std::size_t j = 0; j < nfill; ++j) {
        double rho = R * std::sqrt((static_cast<double>(j) + 0.5) / static_cast<double>(nfill));
        Pt p = Pt::c2(cx(0.0, 0.0), rho * unit_phase(lat(j, kAlpha1, 0)));
        if (rho >= 1.0)
            out.bnd(p);
        else
            out.inn(p);
    }
}

void sample_product(const RegionSpec& s, double R, const Density& d, Builder& out) {
    // square-root budget per factor so the tensor grid lands near the
    // requested total
    const std::size_t fb = std::max<std::size_t>(
        24, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d.total())))));
    Density fd{fb, fb / 4};
    Builder b1, b2;
    sample_into(s.children[0], R, fd, b1);
    sample_into(s.children[1], R, fd, b2);
    auto all1 = b1.boundary;
    all1.insert(all1.end(), b1.interior.begin(), b1.interior.end());
    auto all2 = b2.boundary;
    all2.insert(all2.end(), b2.interior.begin(), b2.interior.end());
    const double rguard2 = R * R * (1.0 + 2.0 * kMemberTol);
    std::vector<Pt> kept_b, kept_i;
    for (std::size_t i = 0; i < all1.size(); ++i) {
        bool bi = i < b1.boundary.size();
        for (std::size_t j = 0; j < all2.size(); ++j) {
            Pt p = Pt::c2(all1[i].z1, all2[j].z1);
            if (p.norm2() > rguard2) continue;
            bool bj = j < b2.boundary.size();
            (bi || bj ? kept_b : kept_i).push_back(p);
        }
    }
    // a full tensor grid keeps the product structure exact (certificates
    // factor); fall back to striding only when the cross blows up
    constexpr std::size_t kTensorCap = 20000;
    auto stride_take = [](const std::vector<Pt>& v, std::size_t want,
                          std::vector<Pt>& dst) {
        if (v.empty() || want == 0) return;
        std::size_t step = std::max<std::size_t>(1, v.size() / std::max<std::size_t>(want, 1));
        for (std::size_t i = 0; i < v.size(); i += step) dst.push_back(v[i]);
    };
    if (kept_b.size() + kept_i.size() <= kTensorCap) {
        out.boundary.insert(out.boundary.end(), kept_b.begin(), kept_b.end());
        out.interior.insert(out.interior.end(), kept_i.begin(), kept_i.end());
    } else {
        stride_take(kept_b, std::max(d.boundary, kTensorCap / 2), out.boundary);
        stride_take(kept_i, d.interior, out.interior);
    }
}

void sample_union(const RegionSpec& s, double R, const Density& d, Builder& out) {
    const std::size_t k = s.children.size();
    for (const auto& child : s.children) {
        Builder cb;
        Density share{std::max<std::size_t>(d.boundary / k, 1),
                      d.interior / k};
        sample_into(child, R, share, cb);
        for (const auto& p : cb.boundary) {
            bool swallowed = false;
            for (const auto& other : s.children) {
                if (&other == &child) continue;
                if (member_interior(other, p)) { swallowed = true; break; }
            }
            (swallowed ? out.interior : out.boundary).push_back(p);
        }
        for (const auto& p : cb.interior) out.inn(p);
    }
}

// Points on {dist(., inner) == epsilon} are found by walking a ray from a
// seed until the 1-Lipschitz distance field crosses epsilon, then bisecting.
void sample_fatten(const RegionSpec& s, double R, const Density& d, Builder& out) {
    const RegionSpec& inner = s.children[0];
    Builder seeds;
    sample_into(inner, R, default_density(inner, R), seeds);
    std::vector<Pt> pool = seeds.boundary;
    pool.insert(pool.end(), seeds.interior.begin(), seeds.interior.end());
    if (pool.empty()) return;
    const double rguard = R * (1.0 + kMemberTol);
    const std::size_t attempts = 6 * std::max<std::size_t>(d.boundary, 1);
    std::size_t got = 0;
    for (std::size_t k = 0; k < attempts && got < d.boundary; ++k) {
        const Pt& p = pool[k % pool.size()];
        Pt u = p.m == 1 ? Pt::c1(unit_phase(lat(k, kAlpha1, 0)))
                        : sphere_point(1.0, lat(k, kAlpha3, 0), lat(k, kAlpha3, 1),
                                       lat(k, kAlpha3, 2));
        auto at = [&](double t) {
            return p.m == 1 ? Pt::c1(p.z1 + t * u.z1)
                            : Pt::c2(p.z1 + t * u.z1, p.z2 + t * u.z2);
        };
        double hi = 4.0 * s.epsilon;
        if (distance(inner, at(hi)) < s.epsilon) {
            // ray stays inside the fattening; keep a mid point as interior
            if (out.interior.size() < d.interior) out.inn(at(0.5 * s.epsilon));
            continue;
        }
        double lo = 0.0;
        for (int it = 0; it < 60 && hi - lo > 1e-14 * s.epsilon; ++it) {
            double mid = 0.5 * (lo + hi);
            (distance(inner, at(mid)) < s.epsilon ? lo : hi) = mid;
        }
        Pt q = at(hi);  // dist(q) >= epsilon by the bisection invariant
        if (q.norm() > rguard) continue;
        out.bnd(q);
        ++got;
    }
    for (const auto& p : pool) out.inn(p);
}

void sample_into(const RegionSpec& spec, double R, const Density& d, Builder& out) {
    switch (spec.kind) {
        case SpecKind::disk: sample_disk(spec, R, d, out); break;
        case SpecKind::ball: sample_ball(spec, R, d, out); break;
        case SpecKind::polydisk: sample_polydisk(spec, R, d, out); break;
        case SpecKind::segment: sample_segment(spec, R, d, out); break;
        case SpecKind::halfline: sample_halfline(spec, R, d, out); break;
        case SpecKind::slab: sample_slab(spec, R, d, out); break;
        case SpecKind::cone: sample_cone(spec, R, d, out); break;
        case SpecKind::example1: sample_example1(spec, R, d, out); break;
        case SpecKind::product: sample_product(spec, R, d, out); break;
        case SpecKind::union_of: sample_union(spec, R, d, out); break;
        case SpecKind::fatten: sample_fatten(spec, R, d, out); break;
        case SpecKind::remove_slice:
            sample_into(spec.children[0], R, d, out);
            break;
    }
}

}  // namespace

std::string to_string(SpecKind k) {
    switch (k) {
        case SpecKind::disk: return "disk";
        case SpecKind::ball: return "ball";
        case SpecKind::polydisk: return "polydisk";
        case SpecKind::segment: return "segment";
        case SpecKind::halfline: return "halfline";
        case SpecKind::slab: return "slab";
        case SpecKind::cone: return "cone";
        case SpecKind::example1: return "example1";
        case SpecKind::product: return "product";
        case SpecKind::union_of: return "union";
        case SpecKind::fatten: return "fatten";
        case SpecKind::remove_slice: return "remove_slice";
    }
    return "unknown";
}

RegionSpec RegionSpec::disk(cx center, double radius) {
    require(radius > 0.0 && std::isfinite(radius), Error::Kind::invalid_input,
            "disk radius must be positive");
    RegionSpec s;
    s.kind = SpecKind::disk;
    s.center = center;
    s.radius = radius;
    return s;
}

RegionSpec RegionSpec::ball(double radius) {
    require(radius > 0.0 && std::isfinite(radius), Error::Kind::invalid_input,
            "ball radius must be positive");
    RegionSpec s;
    s.kind = SpecKind::ball;
    s.radius = radius;
    return s;
}

RegionSpec RegionSpec::polydisk(double r1, double r2) {
    require(r1 > 0.0 && r2 > 0.0 && std::isfinite(r1) && std::isfinite(r2),
            Error::Kind::invalid_input, "polydisk radii must be positive");
    RegionSpec s;
    s.kind = SpecKind::polydisk;
    s.r1 = r1;
    s.r2 = r2;
    return s;
}

RegionSpec RegionSpec::segment(double a, double b) {
    require(std::isfinite(a) && std::isfinite(b) && a < b,
            Error::Kind::invalid_input, "segment needs a < b");
    RegionSpec s;
    s.kind = SpecKind::segment;
    s.a = a;
    s.b = b;
    return s;
}

RegionSpec RegionSpec::halfline(cx origin, cx direction) {
    require(std::abs(direction) > 0.0, Error::Kind::invalid_input,
            "halfline direction must be nonzero");
    RegionSpec s;
    s.kind = SpecKind::halfline;
    s.origin = origin;
    s.direction = direction / std::abs(direction);
    return s;
}

RegionSpec RegionSpec::slab(LinearForm ell, double lo, double hi) {
    require(!ell.is_zero(), Error::Kind::invalid_input, "slab form must be nonzero");
    require(ell.m == 2, Error::Kind::invalid_input, "slab lives in dimension 2");
    require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi,
            Error::Kind::invalid_input, "slab interval is empty");
    RegionSpec s;
    s.kind = SpecKind::slab;
    s.form = ell;
    s.a = lo;
    s.b = hi;
    return s;
}

RegionSpec RegionSpec::cone(LinearForm ell, double aperture) {
    require(!ell.is_zero(), Error::Kind::invalid_input, "cone form must be nonzero");
    require(ell.m == 2, Error::Kind::invalid_input, "cone lives in dimension 2");
    require(aperture > 0.0 && std::isfinite(aperture), Error::Kind::invalid_input,
            "cone aperture must be positive");
    RegionSpec s;
    s.kind = SpecKind::cone;
    s.form = ell;
    s.aperture = aperture;
    return s;
}

RegionSpec RegionSpec::example1() {
    RegionSpec s;
    s.kind = SpecKind::example1;
    return s;
}

RegionSpec RegionSpec::product(RegionSpec e1, RegionSpec e2) {
    require(e1.dim() == 1 && e2.dim() == 1, Error::Kind::invalid_input,
            "product factors must be one-dimensional (ambient dimension cap is 2)");
    RegionSpec s;
    s.kind = SpecKind::product;
    s.children.push_back(std::move(e1));
    s.children.push_back(std::move(e2));
    return s;
}

RegionSpec RegionSpec::union_of(std::vector<RegionSpec> members) {
    require(!members.empty(), Error::Kind::invalid_input, "union needs members");
    for (const auto& m : members)
        require(m.dim() == members.front().dim(), Error::Kind::invalid_input,
                "union members must share a dimension");
    RegionSpec s;
    s.kind = SpecKind::union_of;
    s.children = std::move(members);
    return s;
}

RegionSpec RegionSpec::fatten(RegionSpec inner, double epsilon) {
    require(epsilon > 0.0 && std::isfinite(epsilon), Error::Kind::invalid_input,
            "fatten thickness must be positive");
    require(supports_distance(inner), Error::Kind::unsupported,
            "fatten needs a distance oracle for the inner spec");
    RegionSpec s;
    s.kind = SpecKind::fatten;
    s.epsilon = epsilon;
    s.children.push_back(std::move(inner));
    return s;
}

RegionSpec RegionSpec::remove_slice(RegionSpec inner, LinearForm ell) {
    require(!ell.is_zero(), Error::Kind::invalid_input, "slice form must be nonzero");
    require(ell.m == inner.dim(), Error::Kind::invalid_input,
            "slice form dimension must match the spec");
    RegionSpec s;
    s.kind = SpecKind::remove_slice;
    s.form = ell;
    s.children.push_back(std::move(inner));
    return s;
}

std::size_t RegionSpec::dim() const {
    switch (kind) {
        case SpecKind::disk:
        case SpecKind::segment:
        case SpecKind::halfline:
            return 1;
        case SpecKind::ball:
        case SpecKind::polydisk:
        case SpecKind::slab:
        case SpecKind::cone:
        case SpecKind::example1:
        case SpecKind::product:
            return 2;
        case SpecKind::union_of:
        case SpecKind::fatten:
        case SpecKind::remove_slice:
            return children.front().dim();
    }
    return 1;
}

bool RegionSpec::bounded() const {
    switch (kind) {
        case SpecKind::disk:
        case SpecKind::ball:
        case SpecKind::polydisk:
        case SpecKind::segment:
            return true;
        case SpecKind::halfline:
        case SpecKind::slab:
        case SpecKind::cone:
        case SpecKind::example1:
            return false;
        case SpecKind::product:
        case SpecKind::union_of: {
            for (const auto& c : children)
                if (!c.bounded()) return false;
            return true;
        }
        case SpecKind::fatten:
        case SpecKind::remove_slice:
            return children.front().bounded();
    }
    return false;
}

double RegionSpec::circumradius() const {
    require(bounded(), Error::Kind::unsupported,
            "circumradius of an unbounded spec");
    switch (kind) {
        case SpecKind::disk: return std::abs(center) + radius;
        case SpecKind::ball: return radius;
        case SpecKind::polydisk: return std::hypot(r1, r2);
        case SpecKind::segment: return std::max(std::abs(a), std::abs(b));
        case SpecKind::product:
            return std::hypot(children[0].circumradius(), children[1].circumradius());
        case SpecKind::union_of: {
            double r = 0.0;
            for (const auto& c : children) r = std::max(r, c.circumradius());
            return r;
        }
        case SpecKind::fatten:
            return children.front().circumradius() + epsilon;
        case SpecKind::remove_slice:
            return children.front().circumradius();
        default:
            break;
    }
    fail(Error::Kind::unsupported, "circumradius unavailable");
}

bool member(const RegionSpec& spec, const Pt& z) {
    switch (spec.kind) {
        case SpecKind::disk:
            return std::abs(z.z1 - spec.center) <= spec.radius * (1.0 + kMemberTol);
        case SpecKind::ball:
            return z.norm() <= spec.radius * (1.0 + kMemberTol);
        case SpecKind::polydisk:
            return std::abs(z.z1) <= spec.r1 * (1.0 + kMemberTol) &&
                   std::abs(z.z2) <= spec.r2 * (1.0 + kMemberTol);
        case SpecKind::segment:
            return std::abs(z.z1.imag()) <= kMemberTol * std::max(1.0, std::abs(z.z1)) &&
                   z.z1.real() >= spec.a - kMemberTol && z.z1.real() <= spec.b + kMemberTol;
        case SpecKind::halfline: {
            cx w = z.z1 - spec.origin;
            double t = (std::conj(spec.direction) * w).real();
            double off = std::abs(w - std::max(t, 0.0) * spec.direction);
            return off <= kMemberTol * std::max(1.0, std::abs(w));
        }
        case SpecKind::slab: {
            cx w = spec.form.eval(z);
            return dist_cx_interval(w, spec.a, spec.b) <=
                   kMemberTol * spec.form.coeff_norm() * std::max(1.0, z.norm());
        }
        case SpecKind::cone:
            return std::abs(spec.form.eval(z)) <=
                   spec.aperture * z.norm() * (1.0 + kMemberTol) + 1e-300;
        case SpecKind::example1:
            return std::abs(z.z2) <= 1.0 + kMemberTol ||
                   std::abs(z.z1) <= kMemberTol * std::max(1.0, z.norm());
        case SpecKind::product:
            return member(spec.children[0], Pt::c1(z.z1)) &&
                   member(spec.children[1], Pt::c1(z.z2));
        case SpecKind::union_of:
            for (const auto& c : spec.children)
                if (member(c, z)) return true;
            return false;
        case SpecKind::fatten:
            return distance(spec.children[0], z) <= spec.epsilon * (1.0 + kMemberTol);
        case SpecKind::remove_slice:
            return member(spec.children[0], z);
    }
    return false;
}

bool member_interior(const RegionSpec& spec, const Pt& z) {
    switch (spec.kind) {
        case SpecKind::disk:
            return std::abs(z.z1 - spec.center) < spec.radius * (1.0 - kMemberTol);
        case SpecKind::ball:
            return z.norm() < spec.radius * (1.0 - kMemberTol);
        case SpecKind::polydisk:
            return std::abs(z.z1) < spec.r1 * (1.0 - kMemberTol) &&
                   std::abs(z.z2) < spec.r2 * (1.0 - kMemberTol);
        case SpecKind::segment:
        case SpecKind::halfline:
        case SpecKind::slab:
            return false;  // no interior in the ambient space
        case SpecKind::cone: {
            double n = z.norm();
            return n > 0.0 && std::abs(spec.form.eval(z)) < spec.aperture * n * (1.0 - kMemberTol);
        }
        case SpecKind::example1:
            return std::abs(z.z2) < 1.0 - kMemberTol;
        case SpecKind::product:
            return member_interior(spec.children[0], Pt::c1(z.z1)) &&
                   member_interior(spec.children[1], Pt::c1(z.z2));
        case SpecKind::union_of:
            for (const auto& c : spec.children)
                if (member_interior(c, z)) return true;
            return false;
        case SpecKind::fatten:
            return distance(spec.children[0], z) < spec.epsilon * (1.0 - kMemberTol);
        case SpecKind::remove_slice:
            return member_interior(spec.children[0], z);
    }
    return false;
}

double distance(const RegionSpec& spec, const Pt& z) {
    switch (spec.kind) {
        case SpecKind::disk:
            return clip_lo(std::abs(z.z1 - spec.center) - spec.radius, 0.0);
        case SpecKind::ball:
            return clip_lo(z.norm() - spec.radius, 0.0);
        case SpecKind::polydisk:
            return std::hypot(clip_lo(std::abs(z.z1) - spec.r1, 0.0),
                              clip_lo(std::abs(z.z2) - spec.r2, 0.0));
        case SpecKind::segment:
            return dist_cx_interval(z.z1, spec.a, spec.b);
        case SpecKind::halfline: {
            cx w = z.z1 - spec.origin;
            double t = clip_lo((std::conj(spec.direction) * w).real(), 0.0);
            return std::abs(w - t * spec.direction);
        }
        case SpecKind::slab:
            return dist_cx_interval(spec.form.eval(z), spec.a, spec.b) /
                   spec.form.coeff_norm();
        case SpecKind::cone:
            fail(Error::Kind::unsupported, "no distance oracle for cone specs");
        case SpecKind::example1:
            return std::min(clip_lo(std::abs(z.z2) - 1.0, 0.0), std::abs(z.z1));
        case SpecKind::product:
            return std::hypot(distance(spec.children[0], Pt::c1(z.z1)),
                              distance(spec.children[1], Pt::c1(z.z2)));
        case SpecKind::union_of: {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : spec.children)
                best = std::min(best, distance(c, z));
            return best;
        }
        case SpecKind::fatten:
            return clip_lo(distance(spec.children[0], z) - spec.epsilon, 0.0);
        case SpecKind::remove_slice:
            return distance(spec.children[0], z);
    }
    return 0.0;
}

Density default_density(const RegionSpec& spec, double R) {
    const double r = std::max(1.0, R);
    switch (spec.kind) {
        case SpecKind::disk: return {256, 64};
        case SpecKind::ball: return {3072, 768};
        case SpecKind::polydisk: return {1024, 256};
        case SpecKind::segment: return {384, 0};
        case SpecKind::halfline:
            return {std::max<std::size_t>(192, static_cast<std::size_t>(24.0 * r)), 0};
        case SpecKind::slab:
            return {48 * std::max<std::size_t>(16, static_cast<std::size_t>(4.0 * r)), 0};
        case SpecKind::cone: return {2048, 512};
        case SpecKind::example1:
            return {std::max<std::size_t>(768, static_cast<std::size_t>(112.0 * r)) +
                        std::max<std::size_t>(256, static_cast<std::size_t>(32.0 * r)),
                    std::max<std::size_t>(128, static_cast<std::size_t>(24.0 * r))};
        case SpecKind::product:
            return {std::max<std::size_t>(1024, static_cast<std::size_t>(96.0 * r)), 256};
        case SpecKind::union_of: {
            Density d{0, 0};
            for (const auto& c : spec.children) {
                Density cd = default_density(c, R);
                d.boundary += cd.boundary;
                d.interior += cd.interior;
            }
            return d;
        }
        case SpecKind::fatten: {
            Density di = default_density(spec.children[0], R);
            return {di.boundary, di.boundary / 2 + di.interior};
        }
        case SpecKind::remove_slice:
            return default_density(spec.children[0], R);
    }
    return {256, 64};
}

SampledRegion sample(const RegionSpec& spec, double R, const Density& density) {
    require(R > 0.0 && std::isfinite(R), Error::Kind::invalid_input,
            "truncation radius must be positive");
    Builder b;
    sample_into(spec, R, density, b);
    require(!b.boundary.empty() || !b.interior.empty(), Error::Kind::empty_region,
            "spec does not meet the truncation ball");
    if (!b.boundary.empty() && b.interior.size() > b.boundary.size()) {
        // keep the boundary-heavy balance: stride the interior down to at
        // most one interior point per boundary point
        std::vector<Pt> kept;
        std::size_t want = b.boundary.size();
        double step = static_cast<double>(b.interior.size()) / static_cast<double>(want);
        for (std::size_t i = 0; i < want; ++i)
            kept.push_back(b.interior[static_cast<std::size_t>(static_cast<double>(i) * step)]);
        b.interior = std::move(kept);
    }
    SampledRegion out;
    out.spec = spec;
    out.R = R;
    out.dim = spec.dim();
    out.requested = density;
    out.boundary_count = b.boundary.size();
    out.points = std::move(b.boundary);
    out.points.insert(out.points.end(), b.interior.begin(), b.interior.end());
    return out;
}

SampledRegion sample(const RegionSpec& spec, double R) {
    return sample(spec, R, default_density(spec, R));
}

TruncationSchedule TruncationSchedule::geometric(double first, double factor,
                                                 std::size_t count) {
    require(first > 0.0 && factor > 1.0, Error::Kind::invalid_input,
            "geometric schedule needs first > 0 and factor > 1");
    TruncationSchedule ts;
    double r = first;
    for (std::size_t i = 0; i < count; ++i, r *= factor) ts.radii.push_back(r);
    ts.validate(count < 3 ? count : 3);
    return ts;
}

void TruncationSchedule::validate(std::size_t min_count) const {
    require(radii.size() >= min_count, Error::Kind::invalid_input,
            "truncation schedule too short");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        require(std::isfinite(radii[i]) && radii[i] > 0.0, Error::Kind::invalid_input,
                "truncation radii must be positive");
        require(i == 0 || radii[i] > radii[i - 1], Error::Kind::invalid_input,
                "truncation radii must increase");
    }
}

std::vector<SampledRegion> truncate_schedule(const RegionSpec& spec,
                                             const TruncationSchedule& schedule,
                                             const Density& density) {
    schedule.validate(1);
    std::vector<SampledRegion> out;
    out.reserve(schedule.radii.size());
    for (double r : schedule.radii) out.push_back(sample(spec, r, density));
    return out;
}

std::vector<SampledRegion> truncate_schedule(const RegionSpec& spec,
                                             const TruncationSchedule& schedule) {
    schedule.validate(1);
    std::vector<SampledRegion> out;
    out.reserve(schedule.radii.size());
    for (double r : schedule.radii) out.push_back(sample(spec, r));
    return out;
}

double joukowski_green(cx u) {
    cx w = u + std::sqrt(u - cx(1.0, 0.0)) * std::sqrt(u + cx(1.0, 0.0));
    return clip_lo(std::log(std::abs(w)), 0.0);
}

std::optional<double> closed_form_green(const RegionSpec& spec, const Pt& z) {
    switch (spec.kind) {
        case SpecKind::disk:
            return clip_lo(std::log(std::abs(z.z1 - spec.center) / spec.radius), 0.0);
        case SpecKind::ball:
            return clip_lo(std::log(z.norm() / spec.radius), 0.0);
        case SpecKind::polydisk:
            return std::max(clip_lo(std::log(std::abs(z.z1) / spec.r1), 0.0),
                            clip_lo(std::log(std::abs(z.z2) / spec.r2), 0.0));
        case SpecKind::segment: {
            cx u = (2.0 * z.z1 - cx(spec.a + spec.b, 0.0)) / (spec.b - spec.a);
            return joukowski_green(u);
        }
        case SpecKind::halfline:
            return 0.0;
        case SpecKind::remove_slice: {
            const RegionSpec& inner = spec.children[0];
            if (inner.kind == SpecKind::example1 && spec.form.m == 2 &&
                spec.form.a2 == cx(0.0, 0.0))
                return clip_lo(std::log(z.norm()), 0.0);
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

}  // namespace pluripot::region
