#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "numrad/frontend.hpp"

using namespace numrad;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string stem(const std::string& path) {
    const auto slash = path.find_last_of('/');
    std::string s = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = s.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? s : s.substr(0, dot);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical radius bounds for complex square matrices"};
    app.require_subcommand(1);

    std::string file;
    int t_grid = 201;
    double tol = 1e-8;
    std::string format = "table";
    auto* analyze = app.add_subcommand("analyze", "Evaluate every bound for one matrix");
    analyze->add_option("matrix-file", file, "Matrix file")->required()->check(CLI::ExistingFile);
    analyze->add_option("--t-grid", t_grid, "Number of t grid points")->check(CLI::Range(2, 1000000));
    analyze->add_option("--tol", tol, "Width of the w enclosure")->check(CLI::PositiveNumber);
    analyze->add_option("--out", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

    std::vector<std::string> files;
    auto* compare = app.add_subcommand("compare", "One summary CSV row per matrix file");
    compare->add_option("matrix-files", files, "Matrix files")->required()->check(CLI::ExistingFile);
    compare->add_option("--t-grid", t_grid, "Number of t grid points")->check(CLI::Range(2, 1000000));
    compare->add_option("--tol", tol, "Width of the w enclosure")->check(CLI::PositiveNumber);

    std::string kind;
    EnsembleConfig cfg;
    std::string out_path;
    auto* ensemble = app.add_subcommand("ensemble", "Run every bound on a random ensemble");
    ensemble->add_option("--kind", kind, "ginibre|nilpotent2|strict-upper|normal|paper-fixture")->required();
    ensemble->add_option("--dim", cfg.dim, "Matrix dimension")->required()->check(CLI::PositiveNumber);
    ensemble->add_option("--count", cfg.count, "Number of matrices")->required()->check(CLI::PositiveNumber);
    ensemble->add_option("--seed", cfg.seed, "Seed")->required();
    ensemble->add_option("--t-grid", t_grid, "Number of t grid points")->check(CLI::Range(2, 1000000));
    ensemble->add_option("--tol", tol, "Width of the w enclosure")->check(CLI::PositiveNumber);
    ensemble->add_option("--out", out_path, "CSV output path")->required();

    auto* reproduce = app.add_subcommand("reproduce", "Check the worked-example values");

    int points = 0;
    auto* range = app.add_subcommand("range", "Sample the boundary of the numerical range");
    range->add_option("matrix-file", file, "Matrix file")->required()->check(CLI::ExistingFile);
    range->add_option("--points", points, "Number of boundary points")->required()->check(CLI::Range(3, 100000000));
    range->add_option("--out", out_path, "CSV output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            const auto rep = compare_all(read_matrix_file(file), make_tgrid(t_grid), tol, stem(file));
            if (format == "json") {
                std::cout << report_json(rep);
            } else if (format == "csv") {
                std::cout << summary_csv_header() << "\n" << summary_csv_row(rep) << "\n";
            } else {
                std::cout << report_table(rep);
            }
            return rep.violations.empty() ? 0 : 3;
        }
        if (*compare) {
            const TGrid g = make_tgrid(t_grid);
            std::cout << summary_csv_header() << "\n";
            bool clean = true;
            for (const auto& f : files) {
                const auto rep = compare_all(read_matrix_file(f), g, tol, stem(f));
                clean = clean && rep.violations.empty();
                std::cout << summary_csv_row(rep) << "\n";
            }
            return clean ? 0 : 3;
        }
        if (*ensemble) {
            cfg.kind = parse_ensemble_kind(kind);
            const auto run = run_ensemble(cfg, make_tgrid(t_grid), tol);
            std::string text = summary_csv_header() + "\n";
            std::size_t violations = 0;
            for (std::size_t i = 0; i < run.rows.size(); ++i) {
                text += run.rows[i] + "\n";
                violations += run.reports[i].violations.size();
            }
            write_text(out_path, text);
            std::cerr << run.rows.size() << " matrices, " << violations << " violations\n";
            return violations == 0 ? 0 : 3;
        }
        if (*reproduce) {
            const auto checks = reproduce_paper();
            std::cout << repro_table(checks);
            for (const auto& c : checks) {
                if (!c.pass) return 1;
            }
            return 0;
        }
        if (*range) {
            const auto pts = range_boundary(read_matrix_file(file), points);
            std::string text = "theta,re,im\n";
            char line[100];
            for (const auto& p : pts) {
                std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", p.theta, p.z.real(), p.z.imag());
                text += line;
            }
            write_text(out_path, text);
            return 0;
        }
    } catch (const MatrixFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
