#pragma once

// Minkowski vector and affine primitives: inner product, causal
// classification, index moving, hyperplane reflections, light-cone
// intersections and radar (Einstein) simultaneity geometry.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relkit {

enum class Variance { Contra, Co };

// Signature (+,-,...,-) with explicit light speed. c does not enter the
// plain component formulas below; modules that convert between velocities,
// proper time and coordinates read it from here instead of assuming 1.
struct Metric {
    int n = 4;
    double c = 1.0;

    Metric() = default;
    Metric(int dim, double light_speed = 1.0) : n(dim), c(light_speed) {
        if (n < 2) throw std::invalid_argument("Metric: dimension must be >= 2");
        if (!(c > 0.0)) throw std::invalid_argument("Metric: c must be positive");
    }

    double sign(int i) const { return i == 0 ? 1.0 : -1.0; }
};

struct SpacetimeVector {
    std::vector<double> x;
    Variance var = Variance::Contra;

    SpacetimeVector() = default;
    SpacetimeVector(std::vector<double> comps, Variance v = Variance::Contra)
        : x(std::move(comps)), var(v) {}

    std::size_t dim() const { return x.size(); }
    double& operator[](std::size_t i) { return x[i]; }
    double operator[](std::size_t i) const { return x[i]; }
};

// Affine point in one fixed inertial chart.
struct Event {
    std::vector<double> x;

    Event() = default;
    explicit Event(std::vector<double> coords) : x(std::move(coords)) {}

    std::size_t dim() const { return x.size(); }
    double& operator[](std::size_t i) { return x[i]; }
    double operator[](std::size_t i) const { return x[i]; }
};

inline SpacetimeVector operator-(const Event& p, const Event& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("Event difference: dimension mismatch");
    std::vector<double> d(p.dim());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = p[i] - q[i];
    return SpacetimeVector{std::move(d)};
}

inline Event operator+(const Event& p, const SpacetimeVector& v) {
    if (p.dim() != v.dim()) throw std::invalid_argument("Event translate: dimension mismatch");
    std::vector<double> d(p.dim());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = p[i] + v[i];
    return Event{std::move(d)};
}

inline SpacetimeVector operator*(double s, const SpacetimeVector& v) {
    std::vector<double> d(v.dim());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = s * v[i];
    return SpacetimeVector{std::move(d), v.var};
}

inline SpacetimeVector operator+(const SpacetimeVector& a, const SpacetimeVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("vector sum: dimension mismatch");
    std::vector<double> d(a.dim());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] + b[i];
    return SpacetimeVector{std::move(d), a.var};
}

inline SpacetimeVector operator-(const SpacetimeVector& a, const SpacetimeVector& b) {
    return a + (-1.0 * b);
}

enum class CausalKind { Timelike, Lightlike, Spacelike };
enum class TimeOrientation { Future, Past };

struct CausalClass {
    CausalKind kind;
    // Present only for non-spacelike vectors classified against a reference.
    std::optional<TimeOrientation> orientation;
};

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

inline double inner(const SpacetimeVector& u, const SpacetimeVector& v, const Metric& m) {
    if (static_cast<int>(u.dim()) != m.n || static_cast<int>(v.dim()) != m.n)
        throw std::invalid_argument("inner: dimension mismatch");
    double s = u[0] * v[0];
    for (int i = 1; i < m.n; ++i) s -= u[i] * v[i];
    return s;
}

inline double norm_g(const SpacetimeVector& v, const Metric& m) {
    return std::sqrt(std::abs(inner(v, v, m)));
}

// Scale-aware degeneracy threshold: |v^2| below this counts as lightlike.
inline double lightlike_tol(const SpacetimeVector& v) {
    double s = inf_norm(v.x);
    return 1e-12 * std::max(1.0, s * s);
}

inline CausalClass causal_class(const SpacetimeVector& v, const Metric& m,
                                const std::optional<SpacetimeVector>& v_star = std::nullopt) {
    if (static_cast<int>(v.dim()) != m.n)
        throw std::invalid_argument("causal_class: dimension mismatch");
    if (inf_norm(v.x) == 0.0)
        throw std::domain_error("causal_class: zero vector has no causal class");

    const double v2 = inner(v, v, m);
    const double tol = lightlike_tol(v);
    CausalClass out{};
    if (std::abs(v2) < tol)
        out.kind = CausalKind::Lightlike;
    else
        out.kind = v2 > 0.0 ? CausalKind::Timelike : CausalKind::Spacelike;

    if (v_star && out.kind != CausalKind::Spacelike) {
        const double s2 = inner(*v_star, *v_star, m);
        if (!(s2 > lightlike_tol(*v_star)))
            throw std::invalid_argument("causal_class: reference vector must be timelike");
        out.orientation = inner(v, *v_star, m) > 0.0 ? TimeOrientation::Future
                                                     : TimeOrientation::Past;
    }
    return out;
}

inline SpacetimeVector raise_lower(const SpacetimeVector& v, const Metric& m) {
    if (static_cast<int>(v.dim()) != m.n)
        throw std::invalid_argument("raise_lower: dimension mismatch");
    SpacetimeVector out = v;
    for (int i = 1; i < m.n; ++i) out[i] = -out[i];
    out.var = v.var == Variance::Contra ? Variance::Co : Variance::Contra;
    return out;
}

// rho_v(x) = x - 2 v (v.x)/v^2, reflection at the hyperplane orthogonal to v.
inline SpacetimeVector reflect(const SpacetimeVector& v, const SpacetimeVector& x,
                               const Metric& m) {
    const double v2 = inner(v, v, m);
    if (std::abs(v2) < lightlike_tol(v))
        throw std::domain_error("reflect: degenerate (lightlike) mirror vector");
    const double f = 2.0 * inner(v, x, m) / v2;
    SpacetimeVector out = x;
    for (int i = 0; i < m.n; ++i) out[i] -= f * v[i];
    return out;
}

// Intersections of the line {r + lambda v} with the light doublecone at p.
// v must be causal and r off the cone; the result has 2, 1 or 0 points.
inline std::vector<Event> line_cone_intersection(const Event& p, const Event& r,
                                                 const SpacetimeVector& v, const Metric& m) {
    const SpacetimeVector d = r - p;
    const double v2 = inner(v, v, m);
    const double vd = inner(v, d, m);
    const double d2 = inner(d, d, m);

    if (std::abs(d2) < lightlike_tol(d))
        throw std::domain_error("line_cone_intersection: r lies on the cone at p");
    const CausalKind kind = causal_class(v, m).kind;
    if (kind == CausalKind::Spacelike)
        throw std::invalid_argument("line_cone_intersection: direction must be causal");

    std::vector<Event> out;
    if (kind == CausalKind::Timelike) {
        // lambda^2 v^2 + 2 lambda v.(r-p) + (r-p)^2 = 0; the discriminant is
        // positive by the strict inverted Cauchy-Schwarz inequality.
        const double disc = vd * vd - v2 * d2;
        const double s = std::sqrt(disc);
        out.push_back(r + ((-vd + s) / v2) * v);
        out.push_back(r + ((-vd - s) / v2) * v);
    } else {
        const double tol = 1e-12 * std::max(1.0, inf_norm(v.x) * inf_norm(d.x));
        if (std::abs(vd) > tol) out.push_back(r + (-d2 / (2.0 * vd)) * v);
    }
    return out;
}

struct RadarProducts {
    double norm_sq;       // |q-p|_g^2
    double echo_product;  // |q_+ - q|_g * |q - q_-|_g
    bool is_midpoint;     // (q-p).v = 0 within tolerance
};

// Radar identity along a timelike line (r, v) for an emission point p and a
// reception event q strictly between the two cone intersections.
inline RadarProducts radar_products(const Event& p, const Event& r, const SpacetimeVector& v,
                                    const Event& q, const Metric& m) {
    if (causal_class(v, m).kind != CausalKind::Timelike)
        throw std::invalid_argument("radar_products: line direction must be timelike");

    const double v2 = inner(v, v, m);
    const SpacetimeVector w = q - r;
    const double lam_q = inner(w, v, m) / v2;
    // q must sit on the line itself.
    const SpacetimeVector res = w - lam_q * v;
    if (inf_norm(res.x) > 1e-9 * std::max(1.0, inf_norm(q.x)))
        throw std::invalid_argument("radar_products: q is not on the given line");

    auto hits = line_cone_intersection(p, r, v, m);
    const double l1 = inner(hits[0] - r, v, m) / v2;
    const double l2 = inner(hits[1] - r, v, m) / v2;
    const double lo = std::min(l1, l2), hi = std::max(l1, l2);
    const double open_tol = 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi));
    if (!(lam_q > lo + open_tol && lam_q < hi - open_tol))
        throw std::domain_error("radar_products: q is not strictly between the cone hits");

    const Event& q_plus = l1 > l2 ? hits[0] : hits[1];
    const Event& q_minus = l1 > l2 ? hits[1] : hits[0];

    RadarProducts out{};
    const SpacetimeVector qp = q - p;
    out.norm_sq = std::abs(inner(qp, qp, m));
    out.echo_product = norm_g(q_plus - q, m) * norm_g(q - q_minus, m);
    const double mid = inner(qp, v, m);
    out.is_midpoint = std::abs(mid) <= 1e-9 * std::max(1.0, inf_norm(qp.x) * inf_norm(v.x));
    return out;
}

// Unique mutually Einstein-simultaneous pair on two non-parallel timelike
// lines: solve (v^2, -v.v'; v.v', -v'^2)(lam, lam') = ((r'-r).v, (r'-r).v').
inline std::pair<Event, Event> mutual_simultaneous_pair(const Event& r, const SpacetimeVector& v,
                                                        const Event& r2, const SpacetimeVector& v2,
                                                        const Metric& m) {
    if (causal_class(v, m).kind != CausalKind::Timelike ||
        causal_class(v2, m).kind != CausalKind::Timelike)
        throw std::invalid_argument("mutual_simultaneous_pair: both lines must be timelike");

    const double a = inner(v, v, m);
    const double b = inner(v, v2, m);
    const double d = inner(v2, v2, m);
    // det = b^2 - a d > 0 strictly for independent timelike directions.
    const double det = b * b - a * d;
    const double scale = std::max({1.0, a * d, b * b});
    if (det <= 1e-12 * scale)
        throw std::domain_error("mutual_simultaneous_pair: lines are parallel");

    const SpacetimeVector rhsv = r2 - r;
    const double c1 = inner(rhsv, v, m);
    const double c2 = inner(rhsv, v2, m);
    // Cramer on the 2x2 system.
    const double lam = (c1 * (-d) - (-b) * c2) / (a * (-d) - (-b) * b);
    const double lam2 = (a * c2 - c1 * b) / (a * (-d) - (-b) * b);
    return {r + lam * v, r2 + lam2 * v2};
}

}  // namespace relkit
