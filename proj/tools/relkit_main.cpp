// Command-line front end: batch verification runs over every module, figure
// data regeneration, and JSON/CSV report output. JSON reports are canonical
// (sorted keys, checks sorted by id); identical argv and seed give identical
// bytes. Exit 0 when all requested checks pass, 1 on a check failure, 2 on
// usage or I/O errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <relkit/boost_family.hpp>
#include <relkit/hyperbolic.hpp>
#include <relkit/json_io.hpp>
#include <relkit/lattice.hpp>
#include <relkit/lie.hpp>
#include <relkit/lorentz.hpp>
#include <relkit/rigid.hpp>
#include <relkit/rotating_frame.hpp>
#include <relkit/velocity.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace relkit;

struct RunConfig {
    double c = 1.0;
    std::optional<double> tol;  // global override for every check tolerance
    unsigned long long seed = 42;
    std::string out_dir;
    std::string format = "json";
};

struct CheckRow {
    std::string id;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

class Report {
  public:
    explicit Report(std::string command, const RunConfig& cfg)
        : command_(std::move(command)), cfg_(cfg) {}

    // pass iff value <= tolerance (after any global override)
    void residual(const std::string& id, double value, double default_tol) {
        const double tol = cfg_.tol.value_or(default_tol);
        checks_.push_back({id, value, tol, value <= tol});
    }

    // exact expectation; tolerance 0 by definition
    void exact(const std::string& id, bool ok) {
        checks_.push_back({id, ok ? 0.0 : 1.0, 0.0, ok});
    }

    void attach(const std::string& key, json value) { extra_[key] = std::move(value); }

    bool all_pass() const {
        for (const auto& c : checks_)
            if (!c.pass) return false;
        return true;
    }

    json to_json() const {
        json j;
        j["command"] = command_;
        j["c"] = cfg_.c;
        j["seed"] = cfg_.seed;
        auto rows = checks_;
        std::sort(rows.begin(), rows.end(),
                  [](const CheckRow& a, const CheckRow& b) { return a.id < b.id; });
        j["checks"] = json::array();
        for (const auto& c : rows)
            j["checks"].push_back({{"id", c.id},
                                   {"value", c.value},
                                   {"tolerance", c.tolerance},
                                   {"pass", c.pass}});
        j["pass"] = all_pass();
        for (auto it = extra_.begin(); it != extra_.end(); ++it) j[it.key()] = it.value();
        return j;
    }

  private:
    std::string command_;
    RunConfig cfg_;
    std::vector<CheckRow> checks_;
    json extra_;
};

json table_json(const CsvTable& t) {
    json j;
    j["header"] = t.header;
    j["rows"] = json::array();
    for (const auto& r : t.rows) j["rows"].push_back(r);
    return j;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// Prints the JSON report, writes files when an output directory was given,
// and converts the overall verdict into the process exit code.
int finish(const RunConfig& cfg, const Report& rep, const std::string& name,
           const std::vector<std::pair<std::string, std::string>>& csv_files = {}) {
    std::cout << rep.to_json().dump(2) << "\n";
    if (!cfg.out_dir.empty()) {
        write_file(cfg.out_dir, name + ".json", rep.to_json().dump(2) + "\n");
        if (cfg.format == "csv")
            for (const auto& [fname, text] : csv_files) write_file(cfg.out_dir, fname, text);
    }
    return rep.all_pass() ? 0 : 1;
}

// Deterministic local samplers; the engine is always freshly seeded per
// module so subcommand composition cannot shift the streams.
double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

Vec3 random_beta(std::mt19937_64& g, double max_speed = 0.9) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 dir;
    do {
        dir = Vec3(gauss(g), gauss(g), gauss(g));
    } while (dir.norm() < 1e-6);
    dir.normalize();
    return uniform(g, 0.0, max_speed) * dir;
}

Mat3 random_rotation(std::mt19937_64& g) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Quaterniond q(gauss(g), gauss(g), gauss(g), gauss(g));
    q.normalize();
    return q.toRotationMatrix();
}

Vec3 parse_vec3(const std::string& s) {
    Vec3 v;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &extra) != 3)
        throw std::invalid_argument("expected three comma-separated numbers, got '" + s +
                                    "'");
    return v;
}

Rat parse_rational(const std::string& s) {
    long long p = 0, q = 1;
    char extra = 0;
    const int n = std::sscanf(s.c_str(), "%lld/%lld%c", &p, &q, &extra);
    if (n == 1) q = 1;
    else if (n != 2)
        throw std::invalid_argument("expected integer or p/q rational, got '" + s + "'");
    return Rat(p, q);
}

std::string rat_str(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j;
    in >> j;
    return j;
}

// ---------------------------------------------------------------- compose

int run_compose(const RunConfig& cfg, int n) {
    Report rep("compose", cfg);
    std::mt19937_64 g(cfg.seed * 10 + 1);
    double comp = 0.0, inv = 0.0, gcomp = 0.0, ginv = 0.0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        const BoostRotationParams p1{random_beta(g), random_rotation(g)};
        const BoostRotationParams p2{random_beta(g), random_rotation(g)};
        const Mat4 L = to_matrix(p1) * to_matrix(p2);
        comp = std::max(comp, inf_norm(to_matrix(compose_params(p1, p2)) - L));
        inv = std::max(inv,
                       inf_norm(to_matrix(invert_params(p1)) - to_matrix(p1).inverse()));

        const GalileiParams q1{Vec3(gauss(g), gauss(g), gauss(g)), random_rotation(g)};
        const GalileiParams q2{Vec3(gauss(g), gauss(g), gauss(g)), random_rotation(g)};
        gcomp = std::max(gcomp, inf_norm(galilei_matrix(galilei_compose(q1, q2)) -
                                         galilei_matrix(q1) * galilei_matrix(q2)));
        ginv = std::max(ginv, inf_norm(galilei_matrix(galilei_invert(q1)) -
                                       galilei_matrix(q1).inverse()));
    }
    rep.residual("compose_params_vs_matrix_product", comp, 1e-11);
    rep.residual("invert_params_vs_matrix_inverse", inv, 1e-11);
    rep.residual("galilei_compose_vs_matrix_product", gcomp, 1e-13);
    rep.residual("galilei_invert_vs_matrix_inverse", ginv, 1e-13);
    return finish(cfg, rep, "compose");
}

// ------------------------------------------------------------------ polar

int run_polar(const RunConfig& cfg, int n, const std::string& beta_arg, double angle,
              const std::string& axis_arg) {
    Report rep("polar", cfg);
    std::mt19937_64 g(cfg.seed * 10 + 2);
    double recon = 0.0, sym = 0.0, eig = 0.0, recovery = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec3 beta = random_beta(g);
        const Mat3 D = random_rotation(g);
        Mat4 R = Mat4::Identity();
        R.block<3, 3>(1, 1) = D;
        const Mat4 L = relkit::boost(beta) * R;
        const auto pd = polar_decompose(L);
        recon = std::max(recon, inf_norm(pd.B * pd.R - L));
        sym = std::max(sym, inf_norm(pd.B - pd.B.transpose()));
        recovery = std::max(recovery, (pd.params.beta - beta).norm());
        recovery = std::max(recovery, inf_norm(pd.params.D - D));

        const double gamma = gamma_of(beta);
        const double s = std::sqrt(gamma * gamma - 1.0);
        std::array<double, 4> expect{gamma - s, 1.0, 1.0, gamma + s};
        Eigen::SelfAdjointEigenSolver<Mat4> es(pd.B);
        for (int k = 0; k < 4; ++k)
            eig = std::max(eig, std::abs(es.eigenvalues()[k] - expect[k]));
    }
    rep.residual("reconstruction", recon, 1e-11);
    rep.residual("boost_factor_symmetric", sym, 1e-12);
    rep.residual("boost_eigenvalue_set", eig, 1e-9);
    rep.residual("factor_recovery", recovery, 1e-10);

    // worked example for the requested transformation
    const Vec3 beta = parse_vec3(beta_arg);
    const Vec3 axis = parse_vec3(axis_arg).normalized();
    Mat4 R = Mat4::Identity();
    R.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
    const Mat4 L = relkit::boost(beta) * R;
    const auto pd = polar_decompose(L);
    json ex;
    ex["beta"] = {pd.params.beta[0], pd.params.beta[1], pd.params.beta[2]};
    ex["rotation"] = json::array();
    for (int r = 0; r < 3; ++r)
        ex["rotation"].push_back({pd.params.D(r, 0), pd.params.D(r, 1), pd.params.D(r, 2)});
    ex["reconstruction_residual"] = inf_norm(pd.B * pd.R - L);
    rep.attach("example", ex);
    return finish(cfg, rep, "polar");
}

// ----------------------------------------------------------------- thomas

int run_thomas(const RunConfig& cfg, double beta1, double beta2, bool perp, double phi,
               int samples, bool csv_stdout) {
    if (perp) phi = 0.5 * M_PI;
    if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0))
        throw std::invalid_argument("thomas: moduli must lie in (0, 1)");
    const Vec3 b1 = beta1 * Vec3::UnitX();
    const Vec3 b2 = perp ? Vec3(0.0, beta2, 0.0)
                         : beta2 * Vec3(std::cos(phi), std::sin(phi), 0.0);

    Report rep("thomas", cfg);
    std::mt19937_64 g(cfg.seed * 10 + 3);

    double closed_vs_matrix = 0.0;
    for (int i = 0; i < 400; ++i) {
        const Vec3 u = random_beta(g), v = random_beta(g);
        const double ang = std::atan2(u.cross(v).norm(), u.dot(v));
        closed_vs_matrix =
            std::max(closed_vs_matrix, std::abs(thomas_angle(gamma_of(u), gamma_of(v), ang) -
                                                std::abs(gyr_angle(u, v))));
    }
    rep.residual("closed_form_vs_matrix_oracle", closed_vs_matrix, 1e-10);

    // closed-form maximum against a direct scan
    const auto mx = thomas_angle_max(gamma_of(b1), gamma_of(b2));
    double best = 0.0;
    for (int k = 0; k <= 20000; ++k)
        best = std::max(best, thomas_angle(gamma_of(b1), gamma_of(b2), M_PI * k / 20000));
    rep.residual("max_angle_vs_scan", std::abs(best - mx.theta_m), 1e-6);

    // equal-speed modulus where the maximal angle crosses a right angle
    double lo = 0.9, hi = 0.999;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gamma = 1.0 / std::sqrt(1.0 - mid * mid);
        const double cosm =
            1.0 - 2.0 * (gamma - 1.0) * (gamma - 1.0) / ((gamma + 1.0) * (gamma + 1.0));
        (cosm > 0.0 ? lo : hi) = mid;
    }
    rep.residual("equal_speed_right_angle_root", std::abs(0.5 * (lo + hi) - 0.98517), 1e-5);

    if (std::abs(phi - 0.5 * M_PI) < 1e-12) {
        const Vec3 predict = b1 + b2 / gamma_of(b1);
        rep.residual("perpendicular_star_row", (star(b1, b2) - predict).norm(), 1e-12);
    }

    const CsvTable fig = composition_figure_table(b1, b2);
    const CsvTable angles = rotation_angle_table(gamma_of(b1), gamma_of(b2), samples);
    rep.attach("figure_table", table_json(fig));
    rep.attach("angle_table", table_json(angles));
    rep.attach("gyr_angle", gyr_angle(b1, b2));

    if (csv_stdout) {
        std::cout << fig.to_string();
        if (!cfg.out_dir.empty()) {
            write_file(cfg.out_dir, "thomas.json", rep.to_json().dump(2) + "\n");
            write_file(cfg.out_dir, "thomas_figure.csv", fig.to_string());
            write_file(cfg.out_dir, "thomas_angle_table.csv", angles.to_string());
        }
        return rep.all_pass() ? 0 : 1;
    }
    return finish(cfg, rep, "thomas",
                  {{"thomas_figure.csv", fig.to_string()},
                   {"thomas_angle_table.csv", angles.to_string()}});
}

// --------------------------------------------------------------- velocity

int run_velocity(const RunConfig& cfg, int n, const std::string& b1_arg,
                 const std::string& b2_arg) {
    Report rep("velocity", cfg);
    std::mt19937_64 g(cfg.seed * 10 + 4);
    double left = 0.0, right = 0.0, assoc = 0.0, loop = 0.0, unit = 0.0, speed = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec3 b1 = random_beta(g), b2 = random_beta(g), b3 = random_beta(g);
        left = std::max(left, (star(solve_left(b2, b3), b2) - b3).norm());
        right = std::max(right, (star(b1, solve_right(b1, b3)) - b3).norm());
        assoc = std::max(assoc, (star(b1, star(b2, b3)) -
                                 star(star(b1, b2), Vec3(gyr(b1, b2) * b3)))
                                    .norm());
        loop = std::max(loop, inf_norm(gyr(star(b1, b2), b2) - gyr(b1, b2)));
        unit = std::max(unit, (star(Vec3::Zero(), b1) - b1).norm());
        unit = std::max(unit, star(-b1, b1).norm());
        speed = std::max(speed, std::abs(star(b1, b2).norm() - composed_speed(b1, b2)));
    }
    rep.residual("left_solution_substitution", left, 1e-11);
    rep.residual("right_solution_substitution", right, 1e-11);
    rep.residual("gyroassociativity", assoc, 1e-10);
    rep.residual("loop_property", loop, 1e-10);
    rep.residual("unit_and_inverse", unit, 1e-13);
    rep.residual("composed_speed_consistency", speed, 1e-12);

    const Vec3 b1 = parse_vec3(b1_arg), b2 = parse_vec3(b2_arg);
    if (!in_unit_ball(b1) || !in_unit_ball(b2))
        throw std::invalid_argument("velocity: inputs must lie in the unit ball");
    json ex;
    const Vec3 s12 = star(b1, b2), s21 = star(b2, b1);
    ex["star12"] = {s12[0], s12[1], s12[2]};
    ex["star21"] = {s21[0], s21[1], s21[2]};
    ex["gyr_angle"] = gyr_angle(b1, b2);
    ex["relative_speed"] = relative_speed(b1, b2);
    rep.attach("example", ex);
    return finish(cfg, rep, "velocity");
}

// ------------------------------------------------------------- hyperbolic

// Iterated relative boosts around the loop; independent polygonal oracle for
// the transport holonomy.
Mat3 iterated_gyration(const Hodograph& h) {
    Mat4 frame = relkit::boost(h.beta.front());
    for (std::size_t k = 0; k + 1 < h.beta.size(); ++k) {
        const double gamma = gamma_of(h.beta[k + 1]);
        const Vec4 u_next(gamma, gamma * h.beta[k + 1][0], gamma * h.beta[k + 1][1],
                          gamma * h.beta[k + 1][2]);
        const Vec4 w = frame.inverse() * u_next;
        frame = frame * relkit::boost(Vec3(w[1], w[2], w[3]) / w[0]);
    }
    return polar_decompose(relkit::boost(-h.beta.front()) * frame).params.D;
}

double signed_plane_angle(const Mat3& R, const Vec3& normal) {
    const Vec3 u = std::abs(normal[2]) < 0.9 ? Vec3::UnitZ().cross(normal).normalized()
                                             : Vec3::UnitX();
    const Vec3 t = R * u;
    return std::atan2(normal.dot(u.cross(t)), u.dot(t));
}

int run_hyperbolic(const RunConfig& cfg, int n, double beta, double omega, int steps,
                   const std::string& input) {
    Report rep("hyperbolic", cfg);
    std::mt19937_64 g(cfg.seed * 10 + 5);

    double charts = 0.0, cosine = 0.0, collinear = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = uniform(g, 0.05, 0.95);
        const double theta = uniform(g, 0.1, M_PI - 0.1);
        const double dv = uniform(g, -0.1, 0.1);
        const double dth = uniform(g, -0.1, 0.1), dph = uniform(g, -0.1, 0.1);
        const RadialChart cb{RadialKind::Beta, v, theta, uniform(g, 0.0, 2.0 * M_PI)};
        const double ref = radial_form_eval(cb, dv, dth, dph);
        // same displacement pushed through the exact radial Jacobians
        const double s = std::sqrt(1.0 - v * v);
        const std::array<std::pair<RadialKind, double>, 3> charts_d{
            {{RadialKind::R, dv / (s * s * s)},
             {RadialKind::SmallR, dv / (s * (1.0 + s))},
             {RadialKind::Rho, dv / (s * s)}}};
        for (const auto& [kind, dr] : charts_d)
            charts = std::max(
                charts, std::abs(radial_form_eval(chart_convert(cb, kind), dr, dth, dph) -
                                 ref) /
                            std::abs(ref));

        const Vec3 b1 = random_beta(g), b2 = random_beta(g);
        const double law = hyperbolic_cosine_law(rapidity(b1.norm()), rapidity(b2.norm()),
                                                 std::atan2(b1.cross(b2).norm(), b1.dot(b2)));
        cosine = std::max(cosine, std::abs(rapidity(star(b1, b2).norm()) - law));
        cosine = std::max(cosine,
                          std::abs(geodesic_distance(HyperbolicPoint{b1},
                                                     HyperbolicPoint{Vec3(-b2)}) -
                                   law));

        const Vec3 dir = b1.normalized();
        const double r1 = uniform(g, 0.0, 2.0), r2 = uniform(g, 0.0, 2.0);
        const Vec3 c1 = std::tanh(r1) * dir, c2 = std::tanh(r2) * dir;
        collinear = std::max(collinear, std::abs(rapidity(star(c1, c2).norm()) - (r1 + r2)));
    }
    rep.residual("chart_forms_agree", charts, 1e-11);
    rep.residual("cosine_law_vs_star_modulus", cosine, 1e-11);
    rep.residual("collinear_rapidity_additivity", collinear, 1e-13);

    const Hodograph h = input.empty() ? circular_hodograph(beta, omega, steps, cfg.c)
                                      : hodograph_from_json(load_json_file(input));
    const Mat3 hol_transport = hodograph_holonomy(h);
    const Mat3 hol_gyration = iterated_gyration(h);
    rep.residual("holonomy_vs_iterated_gyration", inf_norm(hol_transport - hol_gyration),
                 1e-3);
    json hol;
    hol["angle"] = signed_plane_angle(hol_transport, Vec3::UnitZ());
    hol["gyration_angle"] = signed_plane_angle(hol_gyration, Vec3::UnitZ());
    hol["samples"] = h.tau.size();
    rep.attach("holonomy", hol);
    return finish(cfg, rep, "hyperbolic");
}

// --------------------------------------------------------------------- rp

int run_rp(const RunConfig& cfg, const std::vector<double>& ks, int grid) {
    Report rep("rp", cfg);
    json regimes = json::array();
    for (double k : ks) {
        const KRegime regime = classify_k(k);
        json r;
        r["k"] = k;
        r["kind"] = regime.kind == KinematicsKind::Lorentz ? "lorentz"
                    : regime.kind == KinematicsKind::Galilei ? "galilei"
                                                             : "euclidean_rotations";
        r["invariant_speed"] = regime.c;

        double law = 0.0;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                double v, vp;
                if (k < 0.0) {
                    const double vm = 0.95 / std::sqrt(-k);
                    v = vm * (2.0 * i / (grid - 1) - 1.0);
                    vp = vm * (2.0 * j / (grid - 1) - 1.0);
                } else {
                    v = 3.0 * (2.0 * i / (grid - 1) - 1.0);
                    vp = 3.0 * (2.0 * j / (grid - 1) - 1.0);
                }
                const double denom = 1.0 - k * v * vp;
                if (std::abs(denom) < 1e-6) continue;
                const double vpp = compose_velocity_k(v, vp, k);
                const double sign = denom > 0.0 ? 1.0 : -1.0;
                law = std::max(law, inf_norm(boost_matrix_k(v, k) * boost_matrix_k(vp, k) -
                                             sign * boost_matrix_k(vpp, k)));
            }
        const std::string suffix = "_k_" + format_double(k);
        rep.residual("matrix_vs_velocity_composition" + suffix, law, 1e-12);

        if (k > 0.0) {
            bool pole_throws = false;
            try {
                compose_velocity_k(2.0 / k, 0.5, k);
            } catch (const std::overflow_error&) {
                pole_throws = true;
            }
            rep.exact("pole_at_reciprocal_product" + suffix, pole_throws);
            const double v = 2.0 / std::sqrt(k);
            rep.exact("large_positive_pair_composes_negative" + suffix,
                      compose_velocity_k(v, v, k) < 0.0);
            r["paradoxes"] = {{"pole_throws", pole_throws},
                              {"example_negative", compose_velocity_k(v, v, k)}};
        }
        regimes.push_back(r);
    }
    rep.attach("regimes", regimes);
    return finish(cfg, rep, "rp");
}

// -------------------------------------------------------------------- lie

json structure_table_json(const StructureConstants& t) {
    json j;
    j["basis"] = t.names;
    j["entries"] = json::array();
    for (int a = 0; a < t.dimension; ++a)
        for (int b = 0; b < t.dimension; ++b)
            for (int k = 0; k < t.dimension; ++k)
                if (t.get(a, b, k) != Rat(0))
                    j["entries"].push_back({{"a", t.names[a]},
                                            {"b", t.names[b]},
                                            {"c", t.names[k]},
                                            {"value", rat_str(t.get(a, b, k))}});
    return j;
}

int run_lie(const RunConfig& cfg, int n, const std::string& mu_arg) {
    Report rep("lie", cfg);
    const Rat mu = parse_rational(mu_arg);
    const StructureConstants table = poincare_table(mu);

    // every basis-pair bracket against the defining representation
    const double dmu = boost::rational_cast<double>(mu);
    double rep_residual = 0.0;
    auto basis_vec = [dmu](int idx) {
        LieVector v;
        v.mu = dmu;
        v.coeff[idx] = 1.0;
        return v;
    };
    for (int a = 0; a < 10; ++a)
        for (int b = a + 1; b < 10; ++b) {
            const Mat5 A = defining_rep(basis_vec(a)), B = defining_rep(basis_vec(b));
            const Mat5 direct = defining_rep(bracket(basis_vec(a), basis_vec(b)));
            rep_residual = std::max(rep_residual, (A * B - B * A - direct).cwiseAbs().maxCoeff());
        }
    rep.residual("bracket_vs_defining_rep", rep_residual, 0.0);
    rep.exact("jacobi_identity", table.jacobi_max_residual() == Rat(0));

    // contraction limit over rotations and time translation
    std::vector<bool> keep_je(10, false);
    keep_je[kJ1] = keep_je[kJ2] = keep_je[kJ3] = keep_je[kE] = true;
    rep.exact("contraction_reaches_galilei",
              contract(poincare_table(Rat(1)), keep_je, Rat(0)).c == galilei_table().c);

    // central extension closes boosts on translations
    const StructureConstants ext = central_extend_mass(Rat(3, 2));
    bool central_ok = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            central_ok &= ext.get(kK1 + i, kP1 + j, kCentral) == (i == j ? Rat(3, 2) : Rat(0));
    for (int a = 0; a < ext.dimension; ++a)
        for (int k = 0; k < ext.dimension; ++k)
            central_ok &= ext.get(kCentral, a, k) == Rat(0);
    rep.exact("central_extension_mass_bracket", central_ok);

    std::mt19937_64 g(cfg.seed * 10 + 7);
    double det_exp = 0.0;
    for (int i = 0; i < n; ++i) {
        Mat4 x;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) x(r, c) = uniform(g, -1.0, 1.0);
        det_exp = std::max(det_exp, det_exp_trace_check(x));
    }
    rep.residual("det_exp_vs_exp_trace", det_exp, 1e-10);

    const ExpImageWitness w = exp_image_witness(1.0);
    rep.exact("exp_image_witness",
              w.valid && !w.is_minus_identity &&
                  std::abs(w.eigenvalues[0] + 1.0) < 1e-12 &&
                  std::abs(w.eigenvalues[1] + 1.0) < 1e-12 &&
                  w.path_det_deviation < 1e-9 && w.path_endpoint_gap < 1e-9);

    rep.attach("structure_constants", structure_table_json(table));
    rep.attach("galilei_table", structure_table_json(galilei_table()));
    rep.attach("extended_table", structure_table_json(ext));
    return finish(cfg, rep, "lie");
}

// ---------------------------------------------------------------- lattice

GridRegion random_complete(const GridBox& box, SeparationMode mode, std::mt19937_64& g,
                           int npts) {
    std::vector<GridPoint> pts;
    for (int i = 0; i < npts; ++i) {
        GridPoint p(box.extents.size());
        for (std::size_t d = 0; d < box.extents.size(); ++d)
            p[d] = box.extents[d][0] +
                   static_cast<long long>(std::uniform_int_distribution<long long>(
                       0, box.extents[d][1] - box.extents[d][0])(g));
        pts.push_back(std::move(p));
    }
    return completion(GridRegion(box, std::move(pts)), mode);
}

int run_lattice(const RunConfig& cfg, const std::string& witness, int dim, int box_pts,
                int pairs, const std::string& file_a, const std::string& file_b,
                const std::string& mode_arg) {
    Report rep("lattice", cfg);
    const SeparationMode mode =
        mode_arg == "causal" ? SeparationMode::Causal : SeparationMode::Chronological;

    if (!file_a.empty()) {
        // region-file verdict mode
        const GridRegion a = region_from_json(load_json_file(file_a));
        json verdict;
        verdict["a_size"] = a.size();
        verdict["a_complete"] = is_complete(a, mode);
        verdict["a_complement"] = region_to_json(complement(a, mode));
        if (!file_b.empty()) {
            const GridRegion b = region_from_json(load_json_file(file_b));
            const GridRegion ca = completion(a, mode), cb = completion(b, mode);
            const GridRegion m = meet(ca, cb, mode), jn = join(ca, cb, mode);
            verdict["meet"] = region_to_json(m);
            verdict["join"] = region_to_json(jn);
            rep.exact("de_morgan_on_inputs",
                      complement(m, mode) ==
                          join(complement(ca, mode), complement(cb, mode), mode));
            if (region_subset(ca, cb))
                rep.exact("orthomodular_on_inputs", check_orthomodular(ca, cb, mode));
        }
        rep.exact("inputs_loaded", true);
        rep.attach("verdict", verdict);
        return finish(cfg, rep, "lattice");
    }

    if (dim != 2)
        throw std::invalid_argument("lattice: only the 2-d grid battery is provided");
    const GridBox box(std::vector<std::array<long long, 2>>{{-10, 10}, {-10, 10}});
    std::mt19937_64 g(cfg.seed * 10 + 8);

    // complement and De Morgan battery on random complete pairs, both modes
    int violations = 0;
    const GridRegion empty(box, {});
    const GridRegion whole(box, box.all_points());
    for (int i = 0; i < pairs; ++i) {
        for (SeparationMode m : {SeparationMode::Causal, SeparationMode::Chronological}) {
            const GridRegion a = random_complete(box, m, g, 4);
            const GridRegion b = random_complete(box, m, g, 4);
            const GridRegion ac = complement(a, m), bc = complement(b, m);
            if (!(completion(a, m) == a)) ++violations;
            if (!(complement(ac, m) == a)) ++violations;
            if (!(meet(a, ac, m) == empty)) ++violations;
            if (!(join(a, ac, m) == whole)) ++violations;
            if (!(complement(meet(a, b, m), m) == join(ac, bc, m))) ++violations;
            if (!(complement(join(a, b, m), m) == meet(ac, bc, m))) ++violations;
        }
    }
    rep.exact("complement_de_morgan_battery", violations == 0);

    // orthomodularity on the provably nested chronological family b = a u c
    int produced = 0, om_violations = 0;
    const SeparationMode chron = SeparationMode::Chronological;
    for (int attempt = 0; attempt < 40 * pairs && produced < pairs; ++attempt) {
        const GridRegion a = random_complete(box, chron, g, 5);
        const GridRegion ap = complement(a, chron);
        if (ap.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, ap.size() - 1);
        std::vector<GridPoint> cpts;
        for (int i = 0; i < 3; ++i) cpts.push_back(ap.points[pick(g)]);
        const GridRegion c =
            region_intersection(completion(GridRegion(box, cpts), chron), ap);
        const GridRegion b = region_union(a, c);
        if (!is_complete(b, chron)) continue;
        ++produced;
        if (!check_orthomodular(a, b, chron)) ++om_violations;
    }
    rep.exact("chron_orthomodularity_battery",
              produced == pairs && om_violations == 0);
    rep.attach("orthomodularity_pairs_tested", produced);

    // timelike atoms: empty meet, join fills the closed diamond causally
    const GridPoint p{-3, 0}, q{3, 0};
    const GridRegion atom_p(box, {p}), atom_q(box, {q});
    bool atoms_ok = true;
    for (SeparationMode m : {SeparationMode::Causal, SeparationMode::Chronological}) {
        atoms_ok &= meet(atom_p, atom_q, m).empty();
        const GridRegion jn = join(atom_p, atom_q, m);
        atoms_ok &= region_subset(atom_p, jn) && region_subset(atom_q, jn);
        atoms_ok &= jn.size() > 2;
    }
    atoms_ok &= join(atom_p, atom_q, SeparationMode::Causal) == diamond(box, p, q, true);
    rep.exact("timelike_atom_meet_join", atoms_ok);

    if (witness == "fig2") {
        const long long half = (box_pts - 1) / 2;
        const GridBox wbox(
            std::vector<std::array<long long, 2>>{{-half, half}, {-half, half}});
        const auto w = aligned_diamond_witness(wbox, SeparationMode::Causal);
        rep.exact("causal_witness_excess_nonempty", !w.excess.empty() && !w.holds);
        rep.exact("causal_witness_contains_a", region_subset(w.a, w.lhs));
        json wj;
        wj["a"] = region_to_json(w.a);
        wj["b"] = region_to_json(w.b);
        wj["excess"] = region_to_json(w.excess);
        wj["holds"] = w.holds;
        rep.attach("witness", wj);
    }
    return finish(cfg, rep, "lattice");
}

// ------------------------------------------------------------------ rigid

int run_rigid(const RunConfig& cfg, const std::string& worldline_arg,
              const std::string& worldline_file, int points, double fd_step) {
    Report rep("rigid", cfg);
    std::mt19937_64 g(cfg.seed * 10 + 9);
    const double c = cfg.c;

    // Killing-field battery
    const VelocityField bf = boost_killing_field(c);
    const double kappa = 0.5 * c;
    const VelocityField rf = rotation_killing_field(kappa, c);
    double born_boost = 0.0, born_rot = 0.0, accel = 0.0, transport = 0.0;
    for (int i = 0; i < points; ++i) {
        const double ct = uniform(g, -0.5, 0.5);
        const double x = std::abs(ct) + uniform(g, 0.5, 2.0);
        const Vec4 pb(ct, x, uniform(g, -1, 1), uniform(g, -1, 1));
        born_boost = std::max(born_boost, born_residual(bf, pb, fd_step));
        const double S = std::sqrt(x * x - ct * ct);
        const auto kin = decompose_kinematics(bf, pb);
        const double a_norm = std::sqrt(-mdot(kin.a, kin.a));
        accel = std::max(accel, std::abs(a_norm * S / (c * c) - 1.0));

        const double rho = uniform(g, 0.1, 0.7) * c / kappa;
        const double ang = uniform(g, 0.0, 2 * M_PI);
        const Vec4 pr(uniform(g, -1, 1), rho * std::cos(ang), rho * std::sin(ang),
                      uniform(g, -1, 1));
        born_rot = std::max(born_rot, born_residual(rf, pr, fd_step));
        transport = std::max(transport, vorticity_transport_residual(rf, pr, fd_step));
    }
    rep.residual("born_residual_boost_killing", born_boost, 1e-8);
    rep.residual("born_residual_rotation_killing", born_rot, 1e-8);
    rep.residual("boost_acceleration_norm", accel, 1e-6);
    rep.residual("vorticity_transport_rotation", transport, 1e-6);

    // worldline-generated irrotational field
    WorldLine line = worldline_file.empty()
                         ? worldline_from_name(worldline_arg, c)
                         : worldline_samples_from_json(load_json_file(worldline_file));
    const IrrotationalField field = irrotational_from_worldline(line, -1.2, 1.2);
    const auto vf = field.field();
    double theta_max = 0.0, omega_max = 0.0, lie_gap = 0.0, born_ir = 0.0;
    json residual_table = json::array();
    const bool has_jerk = static_cast<bool>(line.jerk);
    for (int i = 0; i < 5; ++i) {
        const double tau = -1.0 + 0.5 * i;
        const Vec4 ev = line.position(tau);
        const auto kin = decompose_kinematics(vf, ev);
        theta_max = std::max(theta_max, inf_norm(kin.theta));
        omega_max = std::max(omega_max, inf_norm(kin.omega));
        born_ir = std::max(born_ir, born_residual(vf, ev, fd_step));
        json row;
        row["tau"] = tau;
        row["theta"] = inf_norm(kin.theta);
        row["omega"] = inf_norm(kin.omega);
        row["born_residual"] = born_residual(vf, ev, fd_step);
        row["tolerance"] = cfg.tol.value_or(1e-6);
        if (has_jerk) {
            // L_u a-flat by central differences: u^m d_m a_b + a_m d_b u^m
            const Vec4 closed = field.lie_accel_oneform(ev);
            const Vec4 u = eval_velocity(vf, ev);
            const Vec4 a = field.accel_oneform(ev);
            const Mat4 Ju = fd_jacobian(vf, ev, fd_step);
            Mat4 Ja;  // column mu holds d_mu a-flat
            for (int mu = 0; mu < 4; ++mu) {
                Vec4 dp = Vec4::Zero();
                const double h = fd_step * std::max(1.0, std::abs(ev[mu]));
                dp[mu] = h;
                Ja.col(mu) =
                    (field.accel_oneform(ev + dp) - field.accel_oneform(ev - dp)) /
                    (2.0 * h);
            }
            Vec4 fd1 = Ja * u;
            for (int b = 0; b < 4; ++b) fd1[b] += a.dot(Ju.col(b));
            const double gap = (fd1 - closed).cwiseAbs().maxCoeff();
            lie_gap = std::max(lie_gap, gap);
            row["lie_accel_gap"] = gap;
        }
        residual_table.push_back(row);
    }
    rep.residual("irrotational_theta", theta_max, 1e-6);
    rep.residual("irrotational_omega", omega_max, 1e-6);
    rep.residual("irrotational_born", born_ir, 1e-6);
    if (has_jerk) rep.residual("lie_accel_vs_closed_form", lie_gap, 1e-5);
    rep.attach("worldline_residuals", residual_table);
    return finish(cfg, rep, "rigid");
}

// ------------------------------------------------------------------ frame

int run_frame(const RunConfig& cfg, double kappa, int grid, double qmax, bool csv_stdout) {
    Report rep("frame", cfg);
    RotatingFrame fr(kappa, cfg.c);
    const double R = fr.critical_radius();

    const double rho5 = 0.5 * R;
    rep.residual("loop_lapse_quadrature",
                 std::abs(loop_lapse(fr, circle_loop(rho5, 10000)).coordinate -
                          fr.loop_lapse_circle(rho5)),
                 1e-8);
    double cq = 0.0, aq = 0.0, recon = 0.0;
    std::mt19937_64 g(cfg.seed * 10 + 10);
    for (double q : {0.2, 0.5, 0.8}) {
        const double rho = q * R;
        cq = std::max(cq, std::abs(fr.circumference_quad(rho) - fr.circumference(rho)) /
                              std::max(1.0, fr.circumference(rho)));
        aq = std::max(aq, std::abs(fr.area_quad(rho) - fr.area(rho)) /
                              std::max(1.0, fr.area(rho)));
    }
    rep.residual("circumference_quadrature", cq, 1e-10);
    rep.residual("area_quadrature", aq, 1e-10);
    rep.residual("gaussian_curvature_fd",
                 std::abs(fr.gaussian_curvature_fd(rho5) - fr.gaussian_curvature(rho5)) /
                     std::max(1.0, std::abs(fr.gaussian_curvature(rho5))),
                 1e-4);
    double kk = 0.0;
    for (double q : {0.2, 0.5, 0.8}) kk = std::max(kk, fr.kaluza_klein_residual(q * R));
    rep.residual("kaluza_klein_residual", kk, 1e-3);
    for (int i = 0; i < 20; ++i) {
        const Vec4 p(uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, 0.05, 0.9) * R,
                     uniform(g, -3, 3));
        recon = std::max(recon, (fr.kaluza_klein_form(p) - fr.spacetime_metric(p))
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    rep.residual("metric_reconstruction", recon, 1e-11);
    bool strict = true;
    for (int i = 1; i <= grid; ++i) {
        const double rho = qmax * R * i / grid;
        strict = strict && fr.circumference(rho) > 2 * M_PI * rho &&
                 fr.area(rho) > M_PI * rho * rho;
    }
    rep.exact("strict_excess_inequalities", strict);

    CsvTable table;
    table.header = {"rho", "potential", "lapse_t", "lapse_tau", "circumference",
                    "area", "gaussian_curvature", "kk_residual", "kk_tolerance"};
    const double kk_tol = cfg.tol.value_or(1e-3);
    for (int i = 1; i <= grid; ++i) {
        const double rho = qmax * R * i / grid;
        table.rows.push_back(
            {format_double(rho), format_double(fr.potential(rho)),
             format_double(fr.loop_lapse_circle(rho)),
             format_double(fr.proper_lapse_circle(rho)),
             format_double(fr.circumference(rho)), format_double(fr.area(rho)),
             format_double(fr.gaussian_curvature(rho)),
             format_double(fr.kaluza_klein_residual(rho)), format_double(kk_tol)});
    }
    rep.attach("grid_table", table_json(table));

    if (csv_stdout) {
        std::cout << table.to_string();
        if (!cfg.out_dir.empty()) {
            write_file(cfg.out_dir, "frame.json", rep.to_json().dump(2) + "\n");
            write_file(cfg.out_dir, "frame_report.csv", table.to_string());
        }
        return rep.all_pass() ? 0 : 1;
    }
    return finish(cfg, rep, "frame", {{"frame_report.csv", table.to_string()}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "relkit: special-relativity kinematics toolkit.\n"
        "Reports are canonical JSON (sorted keys, checks sorted by id); every\n"
        "numeric check carries the tolerance it was tested against. Exit codes:\n"
        "0 all checks pass, 1 check failure, 2 usage or I/O error."};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--c", cfg.c, "speed of light (default 1.0)")->check(CLI::PositiveNumber);
    double tol_flag = -1.0;
    app.add_option("--tol", tol_flag,
                   "global tolerance override for every check (default: per-check "
                   "values listed in the report; env RELKIT_TOL, flag wins)")
        ->envname("RELKIT_TOL");
    app.add_option("--seed", cfg.seed, "random seed (default 42)");
    app.add_option("--out", cfg.out_dir, "directory for report files");
    app.add_option("--format", cfg.format, "report format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    bool csv_flag = false;
    app.add_flag("--csv", csv_flag, "shorthand for --format csv; tables go to stdout");

    int n_compose = 200;
    auto* sc_compose = app.add_subcommand("compose", "parameter composition laws");
    sc_compose->add_option("--n", n_compose, "battery size");

    int n_polar = 200;
    std::string polar_beta = "0.4,0.2,-0.1", polar_axis = "0,0,1";
    double polar_angle = 0.7;
    auto* sc_polar = app.add_subcommand("polar", "polar decomposition battery");
    sc_polar->add_option("--n", n_polar, "battery size");
    sc_polar->add_option("--beta", polar_beta, "boost velocity of the example matrix");
    sc_polar->add_option("--angle", polar_angle, "rotation angle of the example matrix");
    sc_polar->add_option("--axis", polar_axis, "rotation axis of the example matrix");

    double t_beta1 = 0.78, t_beta2 = 0.78, t_phi = 0.5 * M_PI;
    bool t_perp = false;
    int t_samples = 64;
    auto* sc_thomas = app.add_subcommand("thomas", "rotation angle tables, figure data");
    sc_thomas->add_option("--beta1", t_beta1, "first speed modulus");
    sc_thomas->add_option("--beta2", t_beta2, "second speed modulus");
    sc_thomas->add_flag("--perp", t_perp, "perpendicular configuration");
    sc_thomas->add_option("--phi", t_phi, "enclosed angle in radians");
    sc_thomas->add_option("--samples", t_samples, "angle-table sample count");

    int n_velocity = 300;
    std::string v_b1 = "0.4,0.1,0", v_b2 = "0,0.5,0.2";
    auto* sc_velocity = app.add_subcommand("velocity", "composition loop checks");
    sc_velocity->add_option("--n", n_velocity, "battery size");
    sc_velocity->add_option("--beta1", v_b1, "first velocity (x,y,z)");
    sc_velocity->add_option("--beta2", v_b2, "second velocity (x,y,z)");

    int n_hyp = 300, h_steps = 2000;
    double h_beta = 0.5, h_omega = 1.0;
    std::string h_input;
    auto* sc_hyp = app.add_subcommand("hyperbolic", "charts, cosine law, holonomy");
    sc_hyp->add_option("--n", n_hyp, "battery size");
    sc_hyp->add_option("--beta", h_beta, "orbit speed for the closed hodograph");
    sc_hyp->add_option("--omega", h_omega, "orbit angular velocity");
    sc_hyp->add_option("--steps", h_steps, "loop sample count");
    sc_hyp->add_option("--input", h_input, "hodograph JSON file ({c, samples:[[tau,bx,by,bz],...]})");

    std::vector<double> rp_ks{-1.0, 0.0, 1.0};
    int rp_grid = 21;
    auto* sc_rp = app.add_subcommand("rp", "kinematics family regime reports");
    sc_rp->add_option("--k", rp_ks, "list of family constants");
    sc_rp->add_option("--grid", rp_grid, "velocity grid points per axis");

    int n_lie = 100;
    std::string lie_mu = "1";
    auto* sc_lie = app.add_subcommand("lie", "structure tables and exponential checks");
    sc_lie->add_option("--n", n_lie, "random matrices for the exponential check");
    sc_lie->add_option("--mu", lie_mu, "deformation parameter as integer or p/q");

    std::string lat_witness = "fig2", lat_a, lat_b, lat_mode = "causal";
    int lat_dim = 2, lat_box = 41, lat_pairs = 60;
    auto* sc_lat = app.add_subcommand("lattice", "region algebra and witness reports");
    sc_lat->add_option("--witness", lat_witness, "witness configuration name");
    sc_lat->add_option("--n", lat_dim, "grid dimension");
    sc_lat->add_option("--box", lat_box, "points per axis");
    sc_lat->add_option("--pairs", lat_pairs, "battery pair count");
    sc_lat->add_option("--a", lat_a, "region JSON file (first operand)");
    sc_lat->add_option("--b", lat_b, "region JSON file (second operand)");
    sc_lat->add_option("--mode", lat_mode, "separation mode")
        ->check(CLI::IsMember({"causal", "chron"}));

    std::string rig_worldline = "circular:2,0.25", rig_file;
    int rig_points = 40;
    double rig_step = 1e-5;
    auto* sc_rigid = app.add_subcommand("rigid", "field residual reports");
    sc_rigid->add_option("--worldline", rig_worldline,
                         "named form: hyperbolic:x0 | circular:R,omega | line:bx,by,bz");
    sc_rigid->add_option("--worldline-file", rig_file,
                         "worldline JSON file ({c, samples:[[tau,t,x,y,z],...]})");
    sc_rigid->add_option("--points", rig_points, "sample events per field");
    sc_rigid->add_option("--step", rig_step, "finite-difference step");

    double fr_kappa = 1.0, fr_qmax = 0.9;
    int fr_grid = 9;
    auto* sc_frame = app.add_subcommand("frame", "rotating-frame report");
    sc_frame->add_option("--kappa", fr_kappa, "angular velocity")->check(CLI::PositiveNumber);
    sc_frame->add_option("--grid", fr_grid, "radial grid points");
    sc_frame->add_option("--qmax", fr_qmax, "largest kappa rho / c on the grid");

    auto* sc_all = app.add_subcommand("verify-all", "run every module battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (tol_flag >= 0.0) cfg.tol = tol_flag;
    if (csv_flag) cfg.format = "csv";
    const bool csv_stdout = csv_flag;

    try {
        if (sc_compose->parsed()) return run_compose(cfg, n_compose);
        if (sc_polar->parsed())
            return run_polar(cfg, n_polar, polar_beta, polar_angle, polar_axis);
        if (sc_thomas->parsed())
            return run_thomas(cfg, t_beta1, t_beta2, t_perp, t_phi, t_samples, csv_stdout);
        if (sc_velocity->parsed()) return run_velocity(cfg, n_velocity, v_b1, v_b2);
        if (sc_hyp->parsed())
            return run_hyperbolic(cfg, n_hyp, h_beta, h_omega, h_steps, h_input);
        if (sc_rp->parsed()) return run_rp(cfg, rp_ks, rp_grid);
        if (sc_lie->parsed()) return run_lie(cfg, n_lie, lie_mu);
        if (sc_lat->parsed())
            return run_lattice(cfg, lat_witness, lat_dim, lat_box, lat_pairs, lat_a, lat_b,
                               lat_mode);
        if (sc_rigid->parsed())
            return run_rigid(cfg, rig_worldline, rig_file, rig_points, rig_step);
        if (sc_frame->parsed())
            return run_frame(cfg, fr_kappa, fr_grid, fr_qmax, csv_stdout);
        if (sc_all->parsed()) {
            // run every battery with defaults, collecting one combined report
            json combined;
            combined["command"] = "verify-all";
            combined["seed"] = cfg.seed;
            combined["c"] = cfg.c;
            int worst = 0;
            RunConfig sub = cfg;
            sub.out_dir.clear();  // only the combined file is written
            auto run = [&](const char* name, auto&& fn) {
                std::ostringstream sink;
                std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
                int code = 2;
                try {
                    code = fn();
                } catch (...) {
                    std::cout.rdbuf(old);
                    throw;
                }
                std::cout.rdbuf(old);
                combined["modules"][name] = json::parse(sink.str());
                worst = std::max(worst, code);
            };
            run("compose", [&] { return run_compose(sub, n_compose); });
            run("polar",
                [&] { return run_polar(sub, n_polar, polar_beta, polar_angle, polar_axis); });
            run("thomas", [&] {
                return run_thomas(sub, t_beta1, t_beta2, true, t_phi, t_samples, false);
            });
            run("velocity", [&] { return run_velocity(sub, n_velocity, v_b1, v_b2); });
            run("hyperbolic",
                [&] { return run_hyperbolic(sub, n_hyp, h_beta, h_omega, h_steps, ""); });
            run("rp", [&] { return run_rp(sub, rp_ks, rp_grid); });
            run("lie", [&] { return run_lie(sub, n_lie, lie_mu); });
            run("lattice", [&] {
                return run_lattice(sub, "fig2", 2, lat_box, lat_pairs, "", "", "causal");
            });
            run("rigid",
                [&] { return run_rigid(sub, rig_worldline, "", rig_points, rig_step); });
            run("frame", [&] { return run_frame(sub, fr_kappa, fr_grid, fr_qmax, false); });
            combined["pass"] = worst == 0;
            const std::string text = combined.dump(2) + "\n";
            std::cout << text;
            write_file(cfg.out_dir.empty() ? "." : cfg.out_dir, "verify_all.json", text);
            return worst;
        }
    } catch (const std::exception& e) {
        std::cerr << "relkit: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
