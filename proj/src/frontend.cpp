#include "numrad/frontend.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace numrad {

namespace {

// Summary CSV column -> record name, in record order.
constexpr std::pair<const char*, const char*> kColumns[] = {
    {"eq1", "bound_kittaneh_norm"},
    {"eq2_lo", "bound_kittaneh_cartesian_lower"},
    {"eq2_up", "bound_kittaneh_cartesian_upper"},
    {"eq3", "bound_yamazaki"},
    {"eq4", "bound_min_aluthge"},
    {"thm_t_mean", "bound_t_mean"},
    {"thm_norm_product", "bound_norm_product"},
    {"thm_square_product", "bound_square_product"},
    {"iter_series", "bound_iterated_series"},
    {"iter_closed", "bound_iterated_closed"},
    {"thm_fourth", "bound_fourth_power"},
    {"thm_sandwich_lo", "bound_fourth_sandwich_lower"},
    {"thm_sandwich_up", "bound_fourth_sandwich_upper"},
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const char* side_tag(BoundSide s) { return s == BoundSide::Upper ? "upper" : "lower"; }

}  // namespace

const BoundRecord& BoundsReport::record(std::string_view name) const {
    for (const auto& r : records) {
        if (r.name == name) return r;
    }
    throw std::out_of_range("BoundsReport: no record named " + std::string(name));
}

BoundsReport compare_all(const ComplexMatrix& m, const TGrid& g, double width_target, std::string name) {
    require_operator(m, "compare_all");
    if (!(width_target > 0.0)) throw std::invalid_argument("compare_all: width_target must be positive");
    BoundsReport rep;
    rep.matrix_name = name.empty() ? "matrix" : std::move(name);
    rep.dim = static_cast<int>(m.rows());

    RadiusSolver solver(m);
    rep.w = solver.refine(std::max(width_target, solver.resolution()));

    const BoundOptions opts;
    AluthgeFamily family(m, g, opts);
    auto cart = bound_kittaneh_cartesian(m);
    auto sandwich = bound_fourth_sandwich(m, opts);
    rep.records = {
        bound_kittaneh_norm(m),
        std::move(cart.first),
        std::move(cart.second),
        bound_yamazaki(m, opts),
        bound_min_aluthge(family),
        bound_t_mean(family),
        bound_norm_product(family),
        bound_square_product(family),
        bound_iterated_series(m),
        bound_iterated_closed(m),
        bound_fourth_power(family),
        std::move(sandwich.first),
        std::move(sandwich.second),
    };

    const BoundRecord* best = nullptr;
    for (const auto& r : rep.records) {
        if (r.side == BoundSide::Upper) {
            if (r.value < rep.w.lo - kSoundnessSlack) rep.violations.push_back({r.name, r.value - rep.w.lo});
            if (!best || r.value < best->value || (r.value == best->value && r.name < best->name)) best = &r;
        } else if (r.value > rep.w.hi + kSoundnessSlack) {
            rep.violations.push_back({r.name, rep.w.hi - r.value});
        }
    }
    rep.sharpest_upper = best->name;
    return rep;
}

std::string summary_csv_header() {
    std::string h = "name,dim,w_lo,w_hi";
    for (const auto& [col, rec] : kColumns) {
        h += ',';
        h += col;
    }
    return h + ",sharpest_upper";
}

std::string summary_csv_row(const BoundsReport& r) {
    std::string row = csv_field(r.matrix_name) + "," + std::to_string(r.dim) + "," + fmt(r.w.lo) + "," + fmt(r.w.hi);
    for (const auto& [col, rec] : kColumns) row += "," + fmt(r.value(rec));
    return row + "," + r.sharpest_upper;
}

std::string report_json(const BoundsReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.matrix_name;
    j["dim"] = r.dim;
    j["w"] = {{"lo", r.w.lo}, {"hi", r.w.hi}, {"width_target", r.w.width_target}};
    auto& recs = j["records"] = nlohmann::ordered_json::array();
    for (const auto& b : r.records) {
        nlohmann::ordered_json e;
        e["name"] = b.name;
        e["side"] = side_tag(b.side);
        e["value"] = b.value;
        e["raw_value"] = b.raw_value;
        e["scale"] = b.scale;
        e["t_star"] = b.t_star ? nlohmann::ordered_json(*b.t_star) : nlohmann::ordered_json(nullptr);
        recs.push_back(std::move(e));
    }
    j["sharpest_upper"] = r.sharpest_upper;
    auto& viol = j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) viol.push_back({{"name", v.name}, {"margin", v.margin}});
    return j.dump(2) + "\n";
}

std::string report_table(const BoundsReport& r) {
    std::ostringstream out;
    char line[200];
    std::snprintf(line, sizeof line, "%s (dim %d)\nw in [%.12f, %.12f]\n\n", r.matrix_name.c_str(), r.dim,
                  r.w.lo, r.w.hi);
    out << line;
    std::snprintf(line, sizeof line, "%-32s %-6s %-5s %18s %18s %8s\n", "bound", "side", "scale", "value",
                  "raw", "t*");
    out << line;
    for (const auto& b : r.records) {
        const std::string t = b.t_star ? fmt(*b.t_star).substr(0, 8) : "-";
        std::snprintf(line, sizeof line, "%-32s %-6s %-5d %18.12f %18.12f %8s%s\n", b.name.c_str(),
                      side_tag(b.side), b.scale, b.value, b.raw_value, t.c_str(),
                      b.name == r.sharpest_upper ? "  *" : "");
        out << line;
    }
    out << "\nsharpest upper: " << r.sharpest_upper << "\n";
    if (r.violations.empty()) {
        out << "violations: none\n";
    } else {
        for (const auto& v : r.violations) out << "violation: " << v.name << " margin " << fmt(v.margin) << "\n";
    }
    return out.str();
}

EnsembleRun run_ensemble(const EnsembleConfig& cfg, const TGrid& g, double width_target) {
    const auto mats = make_ensemble(cfg);
    EnsembleRun run;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        std::string name = std::string(ensemble_kind_tag(cfg.kind)) + "-" + std::to_string(cfg.dim) + "-" +
                           std::to_string(cfg.seed) + "-" + std::to_string(i);
        run.reports.push_back(compare_all(mats[i], g, width_target, std::move(name)));
        run.rows.push_back(summary_csv_row(run.reports.back()));
    }
    return run;
}

// ---------------------------------------------------------------------------

std::vector<ReproCheck> reproduce_paper() {
    std::vector<ReproCheck> checks;
    auto check = [&](std::string label, double expected, double computed, double tol) {
        const bool pass = std::abs(expected - computed) <= tol;
        checks.push_back({std::move(label), expected, computed, tol, pass});
    };
    auto claim = [&](std::string label, bool holds) { check(std::move(label), 1.0, holds ? 1.0 : 0.0, 0.0); };

    const TGrid grid = make_tgrid();
    const BoundOptions opts;

    const ComplexMatrix a = paper_fixture("A");
    const ComplexMatrix b = paper_fixture("B");
    const ComplexMatrix c = paper_fixture("C");
    const ComplexMatrix d = paper_fixture("D");
    const ComplexMatrix e = paper_fixture("E");

    {
        AluthgeFamily fam(b, grid, opts);
        check("B/thm-upper4", 2.05076838, bound_fourth_power(fam).value, 1e-6);
        check("B/eq3", 2.11237244, bound_yamazaki(b, opts).value, 1e-6);
        const ComplexMatrix p = anticommutator_self(b);
        const double diag[3] = {4.0, 13.0, 9.0};
        double off = 0.0;
        for (int i = 0; i < 3; ++i) {
            check("B/P[" + std::to_string(i) + "," + std::to_string(i) + "]", diag[i], p(i, i).real(), 1e-12);
            for (int k = 0; k < 3; ++k) {
                if (k != i) off = std::max(off, std::abs(p(i, k)));
            }
        }
        check("B/P off-diagonal", 0.0, off, 1e-12);
        check("B/norm P", 13.0, fam.anticommutator_norm(), 1e-12);
        const ComplexMatrix sq = b * b;
        const Enclosure mixed = numerical_radius(sq * p + p * sq, 1e-7);
        check("B/w(T^2P+PT^2)", 39.0, mixed.mid(), 1e-6);
        for (double t : {0.0, 0.5, 1.0}) {
            const ComplexMatrix tt = aluthge_t(b, t);
            const double expected = std::pow(2.0, t) * std::pow(3.0, 1.0 - t);
            check("B/norm T_t t=" + fmt(t), expected, spectral_norm(tt), 1e-12);
            check("B/w(T_t) t=" + fmt(t), expected / 2.0, numerical_radius(tt, 1e-11).mid(), 1e-10);
        }
    }
    {
        AluthgeFamily fam(a, grid, opts);
        check("A/norm", 2.0, fam.norm(), 1e-12);
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            check("A/w(T_t) t=" + fmt(t), 1.0, numerical_radius(aluthge_t(a, t), 1e-11).mid(), 1e-10);
        }
        check("A/eq4", 1.5, bound_min_aluthge(fam).value, 1e-9);
        check("A/thm-norm-product", std::sqrt(2.0), bound_norm_product(fam).value, 1e-9);
        check("A/thm-square-product", std::sqrt(7.0 / 4.0), bound_square_product(fam).value, 1e-9);
        check("A/thm-sandwich-up", std::pow(2.5, 0.25), bound_fourth_sandwich(a, opts).second.value, 1e-9);
    }
    {
        const double c1 = bound_kittaneh_norm(c).value;
        const double c2 = bound_kittaneh_cartesian(c).second.value;
        const double d1 = bound_kittaneh_norm(d).value;
        const double d2 = bound_kittaneh_cartesian(d).second.value;
        check("C/eq1", (3.0 + std::sqrt(5.0)) / 4.0, c1, 1e-9);
        check("C/eq2-up", std::sqrt(1.5), c2, 1e-9);
        check("D/eq1", (2.0 + std::sqrt(2.0)) / 2.0, d1, 1e-9);
        check("D/eq2-up", std::sqrt(3.0), d2, 1e-9);
        claim("C/eq1 vs C/eq2-upper incomparability", c1 > c2 && d1 < d2);
    }
    {
        AluthgeFamily fam(e, grid, opts);
        const double e4 = bound_min_aluthge(fam).value;
        const double es = bound_fourth_sandwich(e, opts).second.value;
        check("E/eq4", 0.5, e4, 1e-9);
        check("E/thm-sandwich-up", std::pow(0.125, 0.25), es, 1e-9);
        check("E/thm-norm-product", 0.5, bound_norm_product(fam).value, 1e-9);
        AluthgeFamily fam_a(a, grid, opts);
        const double a4 = bound_min_aluthge(fam_a).value;
        const double as = bound_fourth_sandwich(a, opts).second.value;
        claim("A/E eq4 vs thm-sandwich-up incomparability", as < a4 && es > e4);
    }
    return checks;
}

std::string repro_table(const std::vector<ReproCheck>& checks) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-44s %20s %20s %8s  %s\n", "check", "expected", "computed", "tol",
                  "result");
    out << line;
    int passed = 0;
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-44s %20.12f %20.12f %8.0e  %s\n", c.label.c_str(), c.expected,
                      c.computed, c.tolerance, c.pass ? "PASS" : "FAIL");
        out << line;
        passed += c.pass ? 1 : 0;
    }
    out << passed << "/" << checks.size() << " checks passed\n";
    return out.str();
}

}  // namespace numrad
