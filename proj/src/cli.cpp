/* Command-line driver.  Subcommand grammar:
 *
 *   tables w          --max N [--bless|--check]
 *   series skew       --terms N [--bless|--check]
 *   series layer      --i N [--second]
 *   specialfn eval    --fn sm|cm|sp|cp|W|W1|Winf --re R [--im I]
 *   specialfn constants
 *   flow eval         --kind K --x "re[,im]" --y "re[,im]"
 *   flow grid         --kind K --what sign|vector-field --n N --range R --out F
 *   verify all        --seed S --points N [--report F]
 *   verify flow       --kind K --seed S --points N [--report F]
 *   curve torsion     --c "re[,im]" [--bless|--check]
 *   curve verify      --c "re[,im]" [--seed S] [--triples N] [--points N]
 *   identities run    [--all] [--report F]
 *   ff table          --p P [--bless|--check]
 *   ff enum1d         --p P [--json]
 *   plot vector-field --kind K --n N --range R --out F
 *   plot sign-grid    --kind K --n N --range R --out F [--svg F]
 *
 * Exit codes: 0 all requested checks pass, 1 any failed check or I/O
 * failure, 2 usage or domain error.  All floating-point output uses 12
 * significant digits; rationals print as "num/den".  Golden files live in
 * the in-repo directory baked in at configure time (override with
 * --golden-dir); --bless rewrites them, --check compares byte-for-byte.
 * PROFLOW_THREADS caps internal parallelism.
 */
#include "proflow/cli.hpp"

#include "proflow/curve.hpp"
#include "proflow/dixon.hpp"
#include "proflow/ffield.hpp"
#include "proflow/flows.hpp"
#include "proflow/hyperw.hpp"
#include "proflow/identities.hpp"
#include "proflow/series.hpp"
#include "proflow/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace proflow {
namespace {

using nlohmann::json;
using Cplx = std::complex<double>;

constexpr const char* kVersion = "proflow 1.0.0";

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_f12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

std::string fmt_c(Cplx z) {
    const double im = z.imag();
    return fmt_g(z.real()) + (std::signbit(im) ? "-" : "+") +
           fmt_g(std::fabs(im)) + "i";
}

std::string fmt_cnum(const CNum& c) {
    if (c.inf) return "inf";
    return fmt_c(c.v);
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::stod(fmt_g(v));
}

Cplx parse_cplx(const std::string& text) {
    std::size_t pos = 0;
    const double re = std::stod(text, &pos);
    if (pos == text.size()) return {re, 0.0};
    if (text[pos] != ',') throw std::invalid_argument("expected \"re[,im]\": " + text);
    std::size_t pos2 = 0;
    const std::string rest = text.substr(pos + 1);
    const double im = std::stod(rest, &pos2);
    if (pos2 != rest.size()) throw std::invalid_argument("expected \"re[,im]\": " + text);
    return {re, im};
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char ch : s)
        out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' ||
                ch == '-')
                   ? ch
                   : '_';
    return out;
}

// ---- golden files -------------------------------------------------------

struct GoldenMode {
    bool bless = false;
    bool check = false;
    std::string dir;
};

// Default: print to stdout.  --bless: (re)write dir/name.  --check: compare
// byte-for-byte against dir/name, 1 on mismatch or missing golden.
int golden_emit(const std::string& text, const std::string& name,
                const GoldenMode& gm) {
    if (!gm.bless && !gm.check) {
        std::cout << text;
        return 0;
    }
    const std::filesystem::path path = std::filesystem::path(gm.dir) / name;
    if (gm.bless) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream ofs(path, std::ios::binary);
        if (!ofs || !(ofs << text) || !ofs.flush()) {
            std::cerr << "error: cannot write " << path.string() << "\n";
            return 1;
        }
        std::cout << "blessed " << path.string() << "\n";
        return 0;
    }
    std::ifstream ifs(path, std::ios::binary);
    if (!ifs) {
        std::cerr << "error: missing golden file " << path.string()
                  << " (run with --bless first)\n";
        return 1;
    }
    std::ostringstream got;
    got << ifs.rdbuf();
    if (got.str() != text) {
        std::cerr << "golden mismatch: " << path.string() << "\n";
        return 1;
    }
    std::cout << "golden match: " << path.string() << "\n";
    return 0;
}

void add_golden_flags(CLI::App* cmd, GoldenMode& gm) {
    auto* b = cmd->add_flag("--bless", gm.bless, "rewrite the golden file");
    cmd->add_flag("--check", gm.check, "compare against the golden file")
        ->excludes(b);
}

// ---- tables / series ----------------------------------------------------

int cmd_tables_w(int maxn, const GoldenMode& gm) {
    if (maxn < 1) {
        std::cerr << "error: --max must be >= 1\n";
        return 2;
    }
    std::ostringstream os;
    os << "n  j  w_n(t)\n";
    for (int n = 1; n <= maxn; ++n) {
        char head[32];
        std::snprintf(head, sizeof head, "%-2d %-2d ", n, jmath(n));
        os << head << wn_polynomial(n).to_string() << "\n";
    }
    return golden_emit(os.str(), "tables_w_" + std::to_string(maxn) + ".txt", gm);
}

int cmd_series_skew(int terms, const GoldenMode& gm) {
    if (terms < 1) {
        std::cerr << "error: --terms must be >= 1\n";
        return 2;
    }
    const auto coeffs = diagonal_coeffs(terms);
    std::ostringstream os;
    for (int i = 0; i < terms; ++i)
        os << (i + 1) << "  " << coeffs[static_cast<std::size_t>(i)] << "\n";
    return golden_emit(os.str(), "series_skew_" + std::to_string(terms) + ".txt",
                       gm);
}

int cmd_series_layer(int i, bool second) {
    if (i < 1) {
        std::cerr << "error: --i must be >= 1\n";
        return 2;
    }
    const HomogSeries s = flow_series(specc_w(), specc_r(), !second, i);
    std::cout << s.layer(i).to_string() << "\n";
    return 0;
}

// ---- special functions ---------------------------------------------------

int cmd_specialfn_eval(const std::string& fn, double re, double im) {
    const CNum u(re, im);
    CNum value;
    if (fn == "sm") value = sm_cm(u).first;
    else if (fn == "cm") value = sm_cm(u).second;
    else if (fn == "sp") value = sp_cp(u).first;
    else if (fn == "cp") value = sp_cp(u).second;
    else if (fn == "W") value = hyper_W(u);
    else if (fn == "W1") value = kummer_solution(KummerBranch::One, u);
    else if (fn == "Winf") value = kummer_solution(KummerBranch::Infinity, u);
    else {
        std::cerr << "error: unknown --fn '" << fn
                  << "' (sm|cm|sp|cp|W|W1|Winf)\n";
        return 2;
    }
    std::cout << fn << "(" << fmt_c(u.v) << ") = " << fmt_cnum(value);
    if (!value.inf) std::cout << "  (err " << fmt_g(value.err) << ")";
    std::cout << "\n";
    return 0;
}

int cmd_specialfn_constants() {
    std::cout << "pi3 = " << fmt_f12(pi3().re()) << "\n"
              << "Pi  = " << fmt_f12(Pi_const().re()) << "\n";
    return 0;
}

// ---- flow evaluation and grids -------------------------------------------

int cmd_flow_eval(const std::string& kind_text, const std::string& xs,
                  const std::string& ys) {
    const FlowKind kind = FlowKind::parse(kind_text);
    const FlowValue val =
        classical_flow_eval(kind, CNum(parse_cplx(xs)), CNum(parse_cplx(ys)));
    if (!val.defined) {
        std::cout << kind.name() << " undefined at this point\n";
        return 0;
    }
    std::cout << kind.name() << "(" << xs << ", " << ys << ") = "
              << fmt_cnum(val.u) << " . " << fmt_cnum(val.v) << "\n";
    return 0;
}

// Cell-center grid coordinate: i of n over [-range, range].
double grid_coord(int i, int n, double range) {
    return -range + 2.0 * range * (i + 0.5) / n;
}

int write_vector_field(const std::string& kind_text, int n, double range,
                       const std::string& out) {
    if (n < 1 || range <= 0.0) {
        std::cerr << "error: need --n >= 1 and --range > 0\n";
        return 2;
    }
    const CatalogueEntry& entry = catalogue_entry(FlowKind::parse(kind_text));
    std::ofstream ofs(out, std::ios::binary);
    if (!ofs) {
        std::cerr << "error: cannot write " << out << "\n";
        return 1;
    }
    ofs << "x,y,u,v\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = grid_coord(i, n, range);
            const double y = grid_coord(j, n, range);
            double u = 0.0, v = 0.0;
            try {
                u = entry.field.w.eval<double>({x, y});
                v = entry.field.r.eval<double>({x, y});
            } catch (const std::exception&) {
                u = v = 0.0;  // on the singular set: no arrow
            }
            const double norm = std::hypot(u, v);
            if (norm < 1e-12 || !std::isfinite(norm)) {
                u = v = 0.0;
            } else {
                u /= norm;
                v /= norm;
            }
            ofs << fmt_g(x) << "," << fmt_g(y) << "," << fmt_g(u) << ","
                << fmt_g(v) << "\n";
        }
    }
    if (!ofs.flush()) {
        std::cerr << "error: write failure on " << out << "\n";
        return 1;
    }
    return 0;
}

int sign_of_flow(const FlowEvaluator& flow, double x, double y) {
    try {
        const FlowValue val = flow.eval(CNum(x), CNum(y));
        if (!val.defined || val.u.inf) return 0;
        const double re = val.u.re();
        if (!std::isfinite(re) || std::fabs(re) < 1e-9) return 0;
        return re < 0.0 ? -1 : 1;
    } catch (const std::exception&) {
        return 0;
    }
}

// Double-zero curve samples (x W(x), W(x)), real x below the branch point.
std::vector<std::pair<double, double>> c0_samples(double range) {
    std::vector<std::pair<double, double>> pts;
    const int m = 257;
    const double lo = -range, hi = 0.96;
    for (int k = 0; k < m; ++k) {
        const double x = lo + (hi - lo) * k / (m - 1);
        try {
            const double w = hyper_W(CNum(x)).re();
            pts.emplace_back(x * w, w);
        } catch (const std::exception&) {
            // outside the convergent region for this sample; skip it
        }
    }
    return pts;
}

// Real branches of x y (x - y) = Pi: quadratic in y for fixed x.
std::vector<std::pair<double, double>> curve_samples(double range) {
    std::vector<std::pair<double, double>> pts;
    const double Pi = Pi_const().re();
    const int m = 513;
    for (int k = 0; k < m; ++k) {
        const double x = -range + 2.0 * range * k / (m - 1);
        if (std::fabs(x) < 1e-9) continue;
        const double disc = x * x * x * x - 4.0 * x * Pi;
        if (disc < 0.0) continue;
        const double s = std::sqrt(disc);
        pts.emplace_back(x, (x * x + s) / (2.0 * x));
        pts.emplace_back(x, (x * x - s) / (2.0 * x));
    }
    return pts;
}

int write_xy_csv(const std::string& path,
                 const std::vector<std::pair<double, double>>& pts) {
    std::ofstream ofs(path, std::ios::binary);
    if (!ofs) {
        std::cerr << "error: cannot write " << path << "\n";
        return 1;
    }
    ofs << "x,y\n";
    for (const auto& [x, y] : pts)
        ofs << fmt_g(x) << "," << fmt_g(y) << "\n";
    return ofs.flush() ? 0 : 1;
}

int write_sign_svg(const std::string& path, const std::vector<int>& sign,
                   int n, double range) {
    std::ofstream ofs(path, std::ios::binary);
    if (!ofs) {
        std::cerr << "error: cannot write " << path << "\n";
        return 1;
    }
    const auto sx = [&](double x) { return (x + range) / (2.0 * range) * n; };
    const auto sy = [&](double y) { return (range - y) / (2.0 * range) * n; };
    char buf[128];
    ofs << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" "
           "height=\"512\" viewBox=\"0 0 "
        << n << " " << n << "\">\n";
    ofs << "<rect width=\"" << n << "\" height=\"" << n
        << "\" fill=\"#ffffff\"/>\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (sign[static_cast<std::size_t>(i) * n + j] >= 0) continue;
            // cell (i, j) covers x-index i, y-index j; flip y for screen space
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%d\" y=\"%d\" width=\"1\" height=\"1\" "
                          "fill=\"#c8c8c8\"/>\n",
                          i, n - 1 - j);
            ofs << buf;
        }
    }
    for (const auto& [x, y] : curve_samples(range)) {
        if (std::fabs(x) > range || std::fabs(y) > range) continue;
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" "
                      "fill=\"#2255cc\"/>\n",
                      sx(x), sy(y), n / 200.0);
        ofs << buf;
    }
    for (const auto& [x, y] : c0_samples(range)) {
        if (std::fabs(x) > range || std::fabs(y) > range) continue;
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" "
                      "fill=\"#cc2222\"/>\n",
                      sx(x), sy(y), n / 200.0);
        ofs << buf;
    }
    ofs << "</svg>\n";
    return ofs.flush() ? 0 : 1;
}

int write_sign_grid(const std::string& kind_text, int n, double range,
                    const std::string& out, const std::string& svg) {
    if (n < 1 || range <= 0.0) {
        std::cerr << "error: need --n >= 1 and --range > 0\n";
        return 2;
    }
    const FlowEvaluator flow = make_flow_evaluator(FlowKind::parse(kind_text));
    std::vector<int> sign(static_cast<std::size_t>(n) * n, 0);
    {
        std::ofstream ofs(out, std::ios::binary);
        if (!ofs) {
            std::cerr << "error: cannot write " << out << "\n";
            return 1;
        }
        ofs << "x,y,sign\n";
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double x = grid_coord(i, n, range);
                const double y = grid_coord(j, n, range);
                const int s = sign_of_flow(flow, x, y);
                sign[static_cast<std::size_t>(i) * n + j] = s;
                ofs << fmt_g(x) << "," << fmt_g(y) << "," << s << "\n";
            }
        }
        if (!ofs.flush()) {
            std::cerr << "error: write failure on " << out << "\n";
            return 1;
        }
    }
    // overlay companions next to the main file
    const std::string stem =
        out.size() > 4 && out.substr(out.size() - 4) == ".csv"
            ? out.substr(0, out.size() - 4)
            : out;
    if (int rc = write_xy_csv(stem + "_overlay_c0.csv", c0_samples(range)))
        return rc;
    if (int rc = write_xy_csv(stem + "_overlay_curve.csv", curve_samples(range)))
        return rc;
    if (!svg.empty()) return write_sign_svg(svg, sign, n, range);
    return 0;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const std::string& kind_text, std::uint64_t seed, int points,
               const std::string& report_path) {
    if (points < 1) {
        std::cerr << "error: --points must be >= 1\n";
        return 2;
    }
    const std::vector<CheckReport> reports =
        kind_text.empty() ? verify_all(seed, points)
                          : verify_flow(FlowKind::parse(kind_text), seed, points);
    bool all = true;
    json entries = json::array();
    for (const CheckReport& r : reports) {
        all = all && r.pass;
        entries.push_back({{"flow", r.flow},
                           {"check", r.check},
                           {"points", r.points},
                           {"max_residual", round12(r.max_residual)},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
    }
    const json doc = {{"tool_version", kVersion},
                      {"seed", seed},
                      {"points", points},
                      {"entries", entries},
                      {"all_pass", all}};
    std::cout << doc.dump(2) << "\n";
    if (!report_path.empty()) {
        std::ofstream ofs(report_path, std::ios::binary);
        if (!ofs || !(ofs << doc.dump(2) << "\n") || !ofs.flush()) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return 1;
        }
    }
    return all ? 0 : 1;
}

// ---- curve ----------------------------------------------------------------

std::string fmt_point(const ProjPoint& P) {
    return "(" + fmt_c(P.X) + " : " + fmt_c(P.Y) + " : " + fmt_c(P.Z) + ")";
}

int cmd_curve_torsion(const std::string& cs, const GoldenMode& gm) {
    const CurveE E(parse_cplx(cs));
    std::ostringstream os;
    os << "c = " << fmt_c(E.c()) << "\n";
    os << "name  order  X : Y : Z\n";
    for (const TorsionEntry& e : torsion_table(E)) {
        char head[32];
        std::snprintf(head, sizeof head, "%-5s %-6d ", e.name.c_str(), e.order);
        os << head << fmt_point(e.point) << "\n";
    }
    return golden_emit(os.str(), "curve_torsion_c" + sanitize(cs) + ".txt", gm);
}

Cplx curve_y_at(Cplx c, Cplx x) {
    const Cplx disc = std::sqrt(x * x * x * x - 4.0 * x * c);
    return (x * x + disc) / (2.0 * x);
}

std::vector<ProjPoint> curve_sample_points(const CurveE& E, unsigned seed,
                                           std::size_t count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> zdist(0.15, 0.95);
    const Cplx x0(1.7, 0.0);
    const Cplx y0 = curve_y_at(E.c(), x0);
    std::vector<ProjPoint> out;
    while (out.size() < count) {
        const Cplx z(zdist(rng), 0.3 * (zdist(rng) - 0.55));
        try {
            const ProjPoint P = curve_point_from_flow(x0, y0, z);
            if (E.contains(P, 1e-8)) out.push_back(P);
        } catch (const std::domain_error&) {
            // flow pole for this z; draw again
        }
    }
    return out;
}

double proj_dist(const ProjPoint& A, const ProjPoint& B) {
    const ProjPoint P = normalized(A), Q = normalized(B);
    return std::max({std::abs(P.X * Q.Y - P.Y * Q.X),
                     std::abs(P.X * Q.Z - P.Z * Q.X),
                     std::abs(P.Y * Q.Z - P.Z * Q.Y)});
}

int cmd_curve_verify(const std::string& cs, unsigned seed, int triples,
                     int points) {
    if (triples < 1 || points < 1) {
        std::cerr << "error: need --triples >= 1 and --points >= 1\n";
        return 2;
    }
    const CurveE E(parse_cplx(cs));
    std::cout << "c = " << fmt_c(E.c()) << "  seed = " << seed << "\n";
    bool all = true;
    const auto row = [&all](const std::string& name, bool ok,
                            const std::string& extra = "") {
        all = all && ok;
        char head[40];
        std::snprintf(head, sizeof head, "%-24s %s", name.c_str(),
                      ok ? "pass" : "FAIL");
        std::cout << head << (extra.empty() ? "" : "   " + extra) << "\n";
    };

    const auto table = torsion_table(E);
    bool orders = true;
    for (const TorsionEntry& e : table)
        orders = orders && E.contains(e.point) &&
                 points_equal(ec_scalar_mul(E, e.order, e.point),
                              table[0].point);
    row("torsion-orders", orders);

    const ProjPoint &O = table[0].point, &Q2 = table[1].point,
                    &Q3 = table[2].point, &Q3x2 = table[3].point,
                    &Q6 = table[4].point, &Q6x5 = table[5].point;
    const bool relations = points_equal(ec_double(E, Q6), Q3) &&
                           points_equal(ec_scalar_mul(E, 3, Q6), Q2) &&
                           points_equal(ec_scalar_mul(E, 5, Q6), Q6x5) &&
                           points_equal(ec_add(E, Q6, Q2), Q3x2) &&
                           points_equal(ec_neg(Q3), Q3x2) &&
                           points_equal(ec_add(E, Q6, ec_neg(Q6)), O);
    row("group-relations", relations);
    row("c12-relations", c12_relations(E));

    const auto pts = curve_sample_points(E, seed, 3 * static_cast<std::size_t>(triples));
    double assoc = 0.0;
    for (int k = 0; k < triples; ++k) {
        const ProjPoint &P = pts[3 * static_cast<std::size_t>(k)],
                        &Q = pts[3 * static_cast<std::size_t>(k) + 1],
                        &R = pts[3 * static_cast<std::size_t>(k) + 2];
        assoc = std::max(assoc, proj_dist(ec_add(E, ec_add(E, P, Q), R),
                                          ec_add(E, P, ec_add(E, Q, R))));
    }
    row("associativity", assoc < 1e-7, "max residual " + fmt_g(assoc));

    const auto tpts = curve_sample_points(E, seed + 1, static_cast<std::size_t>(points));
    double trans = 0.0;
    int used = 0;
    for (const ProjPoint& P : tpts) {
        try {
            trans = std::max(trans, translation_q3_check(E, P));
            ++used;
        } catch (const std::domain_error&) {
            // flow undefined at this sample
        }
    }
    row("q3-translation", used > 0 && trans < 1e-8,
        "max residual " + fmt_g(trans) + " over " + std::to_string(used) +
            " points");

    double wres = 0.0;
    for (const ProjPoint& P : tpts) {
        const WeierstrassPoint W = weierstrass_map(E, P);
        const Cplx lhs = W.q * W.q * W.r;
        const Cplx rhs = 4.0 * W.p * W.p * W.p + E.c() * E.c() * W.r * W.r * W.r;
        const double scale = std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
        wres = std::max(wres, std::abs(lhs - rhs) / scale);
        wres = std::max(wres, proj_dist(weierstrass_inverse(E, W), P));
    }
    row("weierstrass-roundtrip", wres < 1e-8, "max residual " + fmt_g(wres));
    return all ? 0 : 1;
}

// ---- identities ------------------------------------------------------------

int cmd_identities_run(const std::string& report_path) {
    bool all = true;
    json entries = json::array();
    const auto row = [&](const std::string& suite, const std::string& name,
                         bool ok, json extra) {
        all = all && ok;
        char head[48];
        std::snprintf(head, sizeof head, "%-10s %-14s %s", suite.c_str(),
                      name.c_str(), ok ? "pass" : "FAIL");
        std::cout << head;
        extra["suite"] = suite;
        extra["case"] = name;
        extra["status"] = ok ? "pass" : "fail";
        if (extra.contains("certificate_terms"))
            std::cout << "   cert-terms=" << extra["certificate_terms"]
                      << " plain=" << (extra["plain_zero"].get<bool>() ? "true" : "false");
        if (extra.contains("count")) std::cout << "   count=" << extra["count"];
        if (extra.contains("level")) std::cout << "   level=" << extra["level"];
        std::cout << "\n";
        entries.push_back(std::move(extra));
    };

    for (const QuotientCheck& q : all_quotient_checks())
        row("quotient", q.name, q.verdict,
            {{"certificate_terms", q.certificate.term_count()},
             {"plain_zero", q.plain_zero}});

    {
        std::vector<RationalFn> Q2;
        for (const MultiPoly& p : superflow_Q1(2)) Q2.push_back(RationalFn::from_poly(p));
        const GroupRep G6 = six_fold_group();
        row("superflow", "six-fold", superflow_invariance(Q2, G6) &&
                superflow_invariance_words(Q2, G6, 20, 6, 1u), json::object());
        row("superflow", "a4-pelican",
            superflow_invariance(pelican_field(), a4_pelican_group()),
            json::object());
        row("superflow", "sigma4-prime",
            superflow_invariance(sigma4_prime_field(), sigma4_prime_group()) &&
                sigma4prime_field_check(),
            json::object());
    }

    for (const auto& [name, data] :
         std::vector<std::pair<std::string, QuasiFlowData>>{
             {"phi_3:U", phi_n_quasi_U(3)},
             {"phi_3:U-hat", phi_n_quasi_U_hat(3)},
             {"phi_3:V", phi_n_quasi_V(3)},
             {"e-flow:U", e_flow_quasi_U()}}) {
        const QuotientCheck q = quasi_flow_pre_check(data);
        row("quasi", name, q.verdict,
            {{"certificate_terms", q.certificate.term_count()},
             {"plain_zero", q.plain_zero}});
    }

    {
        const std::vector<std::string> xy = {"x", "y"};
        const MultiPoly x = MultiPoly::variable(xy, "x");
        const MultiPoly y = MultiPoly::variable(xy, "y");
        for (int N = 2; N <= 6; ++N) {
            MultiPoly w = x * y;
            w = w.scaled(Rational(N - 1));
            const MultiPoly r = (y * y).scaled(Rational(-1));
            const VectorField2 vf{RationalFn::from_poly(w),
                                  RationalFn::from_poly(r)};
            const auto M = rational_flow_criterion(vf);
            row("criterion", "phi_" + std::to_string(N), M && *M == N,
                {{"level", M ? *M : -1}});
        }
        const auto none =
            rational_flow_criterion(catalogue_entry(FlowKind::lambda_flow()).field);
        const auto none2 =
            rational_flow_criterion(catalogue_entry(FlowKind::t_flow()).field);
        row("criterion", "rejects", !none && !none2, json::object());
    }

    {
        const auto pairs = bc_pairs_enumerate(400);
        std::string listing;
        for (const auto& [b, c] : pairs)
            listing += "(" + std::to_string(b) + "," + std::to_string(c) + ") ";
        std::cout << "           pairs: " << listing << "\n";
        row("bc-pairs", "bound=400", pairs.size() == 10,
            {{"count", pairs.size()}});
    }

    if (!report_path.empty()) {
        const json doc = {{"tool_version", kVersion},
                          {"entries", entries},
                          {"all_pass", all}};
        std::ofstream ofs(report_path, std::ios::binary);
        if (!ofs || !(ofs << doc.dump(2) << "\n") || !ofs.flush()) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return 1;
        }
    }
    return all ? 0 : 1;
}

// ---- finite fields ----------------------------------------------------------

int cmd_ff_table(int p, const GoldenMode& gm) {
    const CompletionResult res = phi_p_completion(p);  // validates p
    std::ostringstream os;
    os << "p = " << p << "  (" << res.direct_cells << " direct, "
       << res.completed_cells << " completed)\n";
    for (int xi = 0; xi <= p; ++xi) {
        os << "x=" << (xi == p ? std::string("∞") : std::to_string(xi)) << ":";
        for (int yi = 0; yi <= p; ++yi)
            os << " " << cpoint_str(res.grid[static_cast<std::size_t>(xi) * (p + 1) + yi]);
        os << "\n";
    }
    return golden_emit(os.str(), "ff_table_p" + std::to_string(p) + ".txt", gm);
}

const char* kind_str(Flow1D::Kind k) {
    switch (k) {
        case Flow1D::Kind::zero_map: return "zero";
        case Flow1D::Kind::infinity_map: return "infinity";
        case Flow1D::Kind::moebius: return "moebius";
    }
    return "?";
}

int cmd_ff_enum1d(int p, bool as_json) {
    const auto flows = enumerate_1d_flows(p);
    if (as_json) {
        json arr = json::array();
        for (const Flow1D& f : flows) {
            json tab = json::array();
            for (const PElem& e : f.table) tab.push_back(pelem_str(e));
            json item = {{"kind", kind_str(f.kind)}, {"table", tab}};
            if (f.kind == Flow1D::Kind::moebius) item["a"] = f.a;
            arr.push_back(std::move(item));
        }
        const json doc = {{"p", p}, {"count", flows.size()}, {"flows", arr}};
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    std::cout << "p = " << p << "  (" << flows.size() << " flows)\n";
    for (const Flow1D& f : flows) {
        std::cout << kind_str(f.kind);
        if (f.kind == Flow1D::Kind::moebius) std::cout << " a=" << f.a;
        std::cout << ":";
        for (const PElem& e : f.table) std::cout << " " << pelem_str(e);
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{std::string(kVersion) +
                 " - exact and numeric checks for 2-d projective flows.\n"
                 "Set PROFLOW_THREADS to cap internal parallelism."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    GoldenMode gm;
    gm.dir = PROFLOW_GOLDEN_DIR;
    app.add_option("--golden-dir", gm.dir, "directory holding golden files");

    std::function<int()> action;

    // tables
    auto* tables = app.add_subcommand("tables", "exact coefficient tables");
    tables->require_subcommand(1);
    {
        auto* w = tables->add_subcommand("w", "rows n, j(n), w_n(t)");
        auto maxn = std::make_shared<int>(15);
        w->add_option("--max", *maxn, "largest row")->capture_default_str();
        add_golden_flags(w, gm);
        w->callback([&, maxn] { action = [&, maxn] { return cmd_tables_w(*maxn, gm); }; });
    }

    // series
    auto* series = app.add_subcommand("series", "power-series data");
    series->require_subcommand(1);
    {
        auto* skew = series->add_subcommand("skew", "skew-diagonal coefficients");
        auto terms = std::make_shared<int>(24);
        skew->add_option("--terms", *terms, "number of coefficients")
            ->capture_default_str();
        add_golden_flags(skew, gm);
        skew->callback([&, terms] { action = [&, terms] { return cmd_series_skew(*terms, gm); }; });

        auto* layer = series->add_subcommand("layer", "one homogeneous layer");
        auto li = std::make_shared<int>(1);
        auto second = std::make_shared<bool>(false);
        layer->add_option("--i", *li, "layer index (1-based)")->required();
        layer->add_flag("--second", *second, "second coordinate");
        layer->callback([&, li, second] {
            action = [&, li, second] { return cmd_series_layer(*li, *second); };
        });
    }

    // specialfn
    auto* spfn = app.add_subcommand("specialfn", "special-function evaluation");
    spfn->require_subcommand(1);
    {
        auto* ev = spfn->add_subcommand("eval", "evaluate at a complex point");
        auto fn = std::make_shared<std::string>();
        auto re = std::make_shared<double>(0.0);
        auto im = std::make_shared<double>(0.0);
        ev->add_option("--fn", *fn, "sm|cm|sp|cp|W|W1|Winf")->required();
        ev->add_option("--re", *re, "real part")->required();
        ev->add_option("--im", *im, "imaginary part");
        ev->callback([&, fn, re, im] {
            action = [&, fn, re, im] { return cmd_specialfn_eval(*fn, *re, *im); };
        });
        auto* cn = spfn->add_subcommand("constants", "period constants");
        cn->callback([&] { action = [] { return cmd_specialfn_constants(); }; });
    }

    // flow
    auto* flow = app.add_subcommand("flow", "closed-form flow evaluation");
    flow->require_subcommand(1);
    {
        auto* ev = flow->add_subcommand("eval", "evaluate a flow at a point");
        auto kind = std::make_shared<std::string>();
        auto xs = std::make_shared<std::string>();
        auto ys = std::make_shared<std::string>();
        ev->add_option("--kind", *kind, "identity|phi_N|exp|tan|log|e|t|Lambda")
            ->required();
        ev->add_option("--x", *xs, "re[,im]")->required();
        ev->add_option("--y", *ys, "re[,im]")->required();
        ev->callback([&, kind, xs, ys] {
            action = [&, kind, xs, ys] { return cmd_flow_eval(*kind, *xs, *ys); };
        });

        auto* grid = flow->add_subcommand("grid", "CSV grid export");
        auto gkind = std::make_shared<std::string>("Lambda");
        auto what = std::make_shared<std::string>();
        auto n = std::make_shared<int>(40);
        auto range = std::make_shared<double>(4.0);
        auto out = std::make_shared<std::string>();
        grid->add_option("--kind", *gkind, "flow kind")->capture_default_str();
        grid->add_option("--what", *what, "sign | vector-field")->required();
        grid->add_option("--n", *n, "samples per axis")->capture_default_str();
        grid->add_option("--range", *range, "half-width of the square")
            ->capture_default_str();
        grid->add_option("--out", *out, "output CSV path")->required();
        grid->callback([&, gkind, what, n, range, out] {
            action = [&, gkind, what, n, range, out]() -> int {
                if (*what == "vector-field")
                    return write_vector_field(*gkind, *n, *range, *out);
                if (*what == "sign")
                    return write_sign_grid(*gkind, *n, *range, *out, "");
                std::cerr << "error: --what must be sign or vector-field\n";
                return 2;
            };
        });
    }

    // verify
    auto* verify = app.add_subcommand("verify", "numeric verification suites");
    verify->require_subcommand(1);
    {
        auto seed = std::make_shared<std::uint64_t>(7);
        auto points = std::make_shared<int>(100);
        auto report = std::make_shared<std::string>();
        auto* vall = verify->add_subcommand("all", "whole flow catalogue");
        vall->add_option("--seed", *seed, "sample seed")->capture_default_str();
        vall->add_option("--points", *points, "samples per check")
            ->capture_default_str();
        vall->add_option("--report", *report, "write JSON report here");
        vall->callback([&, seed, points, report] {
            action = [&, seed, points, report] {
                return cmd_verify("", *seed, *points, *report);
            };
        });
        auto* vone = verify->add_subcommand("flow", "a single flow");
        auto kind = std::make_shared<std::string>();
        vone->add_option("--kind", *kind, "flow kind")->required();
        vone->add_option("--seed", *seed, "sample seed")->capture_default_str();
        vone->add_option("--points", *points, "samples per check")
            ->capture_default_str();
        vone->add_option("--report", *report, "write JSON report here");
        vone->callback([&, kind, seed, points, report] {
            action = [&, kind, seed, points, report] {
                return cmd_verify(*kind, *seed, *points, *report);
            };
        });
    }

    // curve
    auto* curve = app.add_subcommand("curve", "cubic-curve group law");
    curve->require_subcommand(1);
    {
        auto cval = std::make_shared<std::string>("1");
        auto* tor = curve->add_subcommand("torsion", "six-point torsion table");
        tor->add_option("--c", *cval, "curve parameter re[,im]")
            ->capture_default_str();
        add_golden_flags(tor, gm);
        tor->callback([&, cval] {
            action = [&, cval] { return cmd_curve_torsion(*cval, gm); };
        });

        auto* cv = curve->add_subcommand("verify", "relation suite");
        auto seed = std::make_shared<unsigned>(7u);
        auto triples = std::make_shared<int>(30);
        auto points = std::make_shared<int>(20);
        cv->add_option("--c", *cval, "curve parameter re[,im]")
            ->capture_default_str();
        cv->add_option("--seed", *seed, "sample seed")->capture_default_str();
        cv->add_option("--triples", *triples, "associativity triples")
            ->capture_default_str();
        cv->add_option("--points", *points, "translation/Weierstrass points")
            ->capture_default_str();
        cv->callback([&, cval, seed, triples, points] {
            action = [&, cval, seed, triples, points] {
                return cmd_curve_verify(*cval, *seed, *triples, *points);
            };
        });
    }

    // identities
    auto* ident = app.add_subcommand("identities", "exact symbolic checks");
    ident->require_subcommand(1);
    {
        auto* run = ident->add_subcommand("run", "run the identity suite");
        auto allf = std::make_shared<bool>(false);
        auto report = std::make_shared<std::string>();
        run->add_flag("--all", *allf, "run every check (default)");
        run->add_option("--report", *report, "write JSON report here");
        run->callback([&, report] {
            action = [&, report] { return cmd_identities_run(*report); };
        });
    }

    // ff
    auto* ff = app.add_subcommand("ff", "finite-field flows");
    ff->require_subcommand(1);
    {
        auto* tab = ff->add_subcommand("table", "completed quadratic-flow grid");
        auto p = std::make_shared<int>(5);
        tab->add_option("--p", *p, "prime = 1 mod 4")->capture_default_str();
        add_golden_flags(tab, gm);
        tab->callback([&, p] { action = [&, p] { return cmd_ff_table(*p, gm); }; });

        auto* en = ff->add_subcommand("enum1d", "all one-dimensional flows");
        auto ep = std::make_shared<int>(5);
        auto js = std::make_shared<bool>(false);
        en->add_option("--p", *ep, "prime in {2,3,5,7}")->capture_default_str();
        en->add_flag("--json", *js, "emit JSON");
        en->callback([&, ep, js] {
            action = [&, ep, js] { return cmd_ff_enum1d(*ep, *js); };
        });
    }

    // plot
    auto* plot = app.add_subcommand("plot", "plot-data export");
    plot->require_subcommand(1);
    {
        auto kind = std::make_shared<std::string>("Lambda");
        auto n = std::make_shared<int>(40);
        auto range = std::make_shared<double>(4.0);
        auto out = std::make_shared<std::string>();

        auto* vf = plot->add_subcommand("vector-field", "normalized arrows CSV");
        vf->add_option("--kind", *kind, "flow kind")->capture_default_str();
        vf->add_option("--n", *n, "samples per axis")->capture_default_str();
        vf->add_option("--range", *range, "half-width of the square")
            ->capture_default_str();
        vf->add_option("--out", *out, "output CSV path")->required();
        vf->callback([&, kind, n, range, out] {
            action = [&, kind, n, range, out] {
                return write_vector_field(*kind, *n, *range, *out);
            };
        });

        auto* sg = plot->add_subcommand("sign-grid", "sign raster CSV + overlays");
        auto sn = std::make_shared<int>(200);
        auto svg = std::make_shared<std::string>();
        sg->add_option("--kind", *kind, "flow kind")->capture_default_str();
        sg->add_option("--n", *sn, "samples per axis")->capture_default_str();
        sg->add_option("--range", *range, "half-width of the square")
            ->capture_default_str();
        sg->add_option("--out", *out, "output CSV path")->required();
        sg->add_option("--svg", *svg, "also write an SVG raster here");
        sg->callback([&, kind, sn, range, out, svg] {
            action = [&, kind, sn, range, out, svg] {
                return write_sign_grid(*kind, *sn, *range, *out, *svg);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!action) {
        std::cerr << app.help();
        return 2;
    }
    try {
        return action();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace proflow
