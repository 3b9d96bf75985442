#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "bfpm/analysis.hpp"
#include "bfpm/clustering.hpp"
#include "bfpm/core.hpp"
#include "bfpm/distance.hpp"
#include "bfpm/io.hpp"
#include "bfpm/partition.hpp"
#include "bfpm/validity.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct ClusterOpts {
    std::string input;
    std::string label_column;
    std::string method = "bfpm";
    std::size_t clusters = 2;
    double fuzzifier = 2.0;
    double epsilon = 1e-6;
    std::size_t max_iter = 300;
    std::uint64_t seed = 1;
    std::size_t restarts = 10;
    std::string distance = "minkowski:2";
    bool normalize = false;
};

void add_cluster_options(CLI::App* cmd, ClusterOpts& o, bool clusters_required) {
    cmd->add_option("--input", o.input, "dataset CSV")->required();
    cmd->add_option("--label-column", o.label_column,
                    "label column, by header name or 0-based index");
    cmd->add_option("--method", o.method, "bfpm | fcm | kmeans")
        ->check(CLI::IsMember({"bfpm", "fcm", "kmeans"}));
    auto* clusters = cmd->add_option("--clusters", o.clusters, "number of clusters")
                         ->check(CLI::PositiveNumber);
    if (clusters_required) clusters->required();
    cmd->add_option("--fuzzifier", o.fuzzifier, "m > 1 (soft methods)");
    cmd->add_option("--epsilon", o.epsilon, "convergence threshold on squared prototype shift");
    cmd->add_option("--max-iter", o.max_iter, "iteration cap");
    cmd->add_option("--seed", o.seed, "first restart seed");
    cmd->add_option("--restarts", o.restarts, "restart count (seeds seed..seed+restarts-1)");
    cmd->add_option("--distance", o.distance, "minkowski:<k> or kernel-gaussian:<sigma>");
    cmd->add_flag("--normalize", o.normalize, "min-max scale features to [0,1] first");
}

bfpm::Dataset load_input(const ClusterOpts& o) {
    bfpm::CsvSpec spec;
    spec.path = o.input;
    spec.label_column = o.label_column;
    bfpm::Dataset ds = bfpm::load_csv(spec);
    if (o.normalize) ds = bfpm::normalize_min_max(ds);
    return ds;
}

bfpm::RunConfig make_config(const ClusterOpts& o) {
    bfpm::RunConfig cfg;
    cfg.method = bfpm::method_from_string(o.method);
    cfg.clusters = o.clusters;
    cfg.fuzzifier = o.fuzzifier;
    cfg.epsilon = o.epsilon;
    cfg.max_iter = o.max_iter;
    cfg.distance = bfpm::DistanceSpec::parse(o.distance);
    cfg.seed = o.seed;
    cfg.restarts = o.restarts;
    return cfg;
}

ordered_json run_report(const ClusterOpts& o, const bfpm::RunConfig& cfg,
                        const bfpm::Dataset& ds, const bfpm::RunResult& res) {
    ordered_json j;
    j["method"] = bfpm::to_string(cfg.method);
    j["clusters"] = cfg.clusters;
    j["fuzzifier"] = bfpm::round_sig(cfg.fuzzifier);
    j["epsilon"] = bfpm::round_sig(cfg.epsilon);
    j["max_iter"] = cfg.max_iter;
    j["distance"] = cfg.distance.to_string();
    j["seed"] = cfg.seed;
    j["restarts"] = cfg.restarts;
    j["normalize"] = o.normalize;
    j["seed_used"] = res.seed_used;
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    double final_objective =
        res.objective_trace.empty()
            ? bfpm::objective(ds, res.partition, res.prototypes, 1.0, cfg.distance)
            : res.objective_trace.back();
    j["objective"] = bfpm::round_sig(final_objective);
    ordered_json trace = ordered_json::array();
    for (double v : res.objective_trace) trace.push_back(bfpm::round_sig(v));
    j["objective_trace"] = std::move(trace);
    if (ds.has_labels())
        j["accuracy"] = bfpm::round_sig(bfpm::accuracy(res.partition, ds.labels));
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path);
    if (!file) throw bfpm::DataError("io", "cannot write '" + path + "'");
    file << text;
}

int cmd_cluster(const ClusterOpts& o, const std::string& out_dir) {
    bfpm::Dataset ds = load_input(o);
    bfpm::RunConfig cfg = make_config(o);
    bfpm::RunResult res = bfpm::run(ds, cfg);

    fs::create_directories(out_dir);
    std::string memb_path = out_dir + "/memberships.csv";
    std::string proto_path = out_dir + "/prototypes.csv";
    std::string json_path = out_dir + "/run.json";
    bfpm::write_membership_csv(res.partition, memb_path);
    bfpm::write_prototypes_csv(res.prototypes, ds.feature_names, proto_path);
    ordered_json j = run_report(o, cfg, ds, res);
    write_text(json_path, j.dump(2) + "\n");

    std::cout << "method=" << bfpm::to_string(cfg.method) << " clusters=" << cfg.clusters
              << " seed_used=" << res.seed_used << " iterations=" << res.iterations
              << " converged=" << (res.converged ? "true" : "false")
              << " objective=" << j["objective"].dump();
    if (j.contains("accuracy")) std::cout << " accuracy=" << j["accuracy"].dump();
    std::cout << "\nwrote " << memb_path << ' ' << proto_path << ' ' << json_path << "\n";
    return 0;
}

int cmd_validate(const ClusterOpts& o, const std::string& membership,
                 const std::string& prototypes, const std::string& out_path) {
    bfpm::Dataset ds = load_input(o);
    bfpm::PartitionMatrix u = bfpm::read_membership_csv(membership);
    bfpm::Prototypes v = bfpm::read_prototypes_csv(prototypes);
    bfpm::ValidityReport report = bfpm::validity_report(ds, u, v);

    ordered_json j;
    auto emit = [&](const char* name, const bfpm::IndexValue& iv) {
        if (iv.value)
            j[name] = bfpm::round_sig(*iv.value);
        else {
            j[name] = nullptr;
            j[std::string(name) + "_error"] = iv.error;
        }
    };
    emit("vpc", report.vpc);
    emit("vpe", report.vpe);
    emit("db", report.db);
    emit("cs", report.cs);
    emit("g", report.g);

    std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) write_text(out_path, text);
    return 0;
}

std::string movement_tsv(const bfpm::MovementReport& report, const bfpm::MovementSeries& series) {
    std::string out =
        "object_index\tassigned\trunner_up\tu_assigned\tu_runner_up\tgap\tcritical\n";
    for (std::size_t k : series.order) {
        const bfpm::MovementRecord& rec = report.records[k];
        out += std::to_string(rec.object_index);
        out += '\t' + std::to_string(rec.assigned_cluster);
        out += '\t' + std::to_string(rec.runner_up_cluster);
        out += '\t' + bfpm::format_sig(rec.u_assigned);
        out += '\t' + bfpm::format_sig(rec.u_runner_up);
        out += '\t' + bfpm::format_sig(rec.gap);
        out += '\t';
        out += rec.critical ? "true" : "false";
        out += '\n';
    }
    return out;
}

int cmd_movement(const ClusterOpts& o, bool have_method, double threshold,
                 const std::string& sort_name, const std::string& out_path) {
    bfpm::PartitionMatrix u;
    if (have_method) {
        bfpm::Dataset ds = load_input(o);
        u = bfpm::run(ds, make_config(o)).partition;
    } else {
        u = bfpm::read_membership_csv(o.input);
    }
    bfpm::MovementReport report = bfpm::movement_report(u, threshold);
    bfpm::MovementSeries series = bfpm::movement_plot_data(
        report, sort_name == "gap" ? bfpm::MovementSort::ByGap : bfpm::MovementSort::ByIndex);
    std::string text = movement_tsv(report, series);
    if (out_path.empty())
        std::cout << text;
    else {
        write_text(out_path, text);
        std::cout << "wrote " << out_path << " (" << report.critical_count
                  << " critical of " << report.records.size() << ")\n";
    }
    return 0;
}

bfpm::Matrix parse_lines_flag(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        std::string row = text.substr(start, end == std::string::npos ? end : end - start);
        std::size_t comma = row.find(',');
        if (comma == std::string::npos)
            throw bfpm::DataError("io", "bad --lines entry '" + row + "', want 'a,b'");
        rows.push_back({std::strtod(row.substr(0, comma).c_str(), nullptr),
                        std::strtod(row.substr(comma + 1).c_str(), nullptr)});
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return bfpm::Matrix::from_rows(rows);
}

void print_block(const std::string& title, const bfpm::Matrix& values, std::size_t block,
                 std::size_t per_line) {
    std::printf("%s =\n", title.c_str());
    for (std::size_t i = 0; i < values.rows(); ++i) {
        for (std::size_t p = 0; p < per_line; ++p)
            std::printf("  %.1f", values(i, block * per_line + p));
        std::printf("\n");
    }
    std::printf("\n");
}

int cmd_demo_lines(const std::string& lines_text, std::size_t points, double spacing,
                   double d_delta, const std::string& which, const std::string& out_dir) {
    bfpm::Matrix coef = parse_lines_flag(lines_text);
    bfpm::CrossingLines cl = bfpm::generate_crossing_lines(coef, points, spacing);
    const std::size_t lines = coef.rows();

    std::printf("crossing lines: %zu lines, %zu points each, spacing %g, support radius %g\n",
                lines, points, spacing, d_delta);
    for (std::size_t l = 0; l < lines; ++l) {
        std::printf("line %s:", cl.dataset.labels[l * points].c_str());
        for (std::size_t p = 0; p < points; ++p)
            std::printf(" (%g,%g)", cl.dataset.objects(l * points + p, 0),
                        cl.dataset.objects(l * points + p, 1));
        std::printf("\n");
    }
    std::printf("\n");

    for (std::size_t b = 0; b < lines; ++b)
        print_block("D_" + std::to_string(b + 1), cl.line_distances, b, points);

    bool all = which == "all";
    if (all || which == "crisp") {
        // Each line's printed matrix only claims the points crisp assignment
        // gave to that line; a point owned by another line shows a zero
        // column here (it appears in the owner's matrix instead).
        bfpm::PartitionMatrix crisp =
            bfpm::assign_static(cl.line_distances, d_delta, bfpm::PartitionClass::Crisp);
        std::vector<std::size_t> owner = bfpm::hardened_assignment(crisp);
        for (std::size_t b = 0; b < lines; ++b) {
            bfpm::Matrix shown(lines, cl.line_distances.cols());
            for (std::size_t p = 0; p < points; ++p) {
                std::size_t g = b * points + p;
                if (owner[g] == b)
                    for (std::size_t i = 0; i < lines; ++i) shown(i, g) = crisp.values(i, g);
            }
            print_block("U_crisp(" + cl.dataset.labels[b * points] + ")", shown, b, points);
        }
    }
    if (all || which == "fuzzy") {
        bfpm::PartitionMatrix fuzzy =
            bfpm::assign_static(cl.line_distances, d_delta, bfpm::PartitionClass::Fuzzy);
        for (std::size_t b = 0; b < lines; ++b)
            print_block("U_fuzzy(" + cl.dataset.labels[b * points] + ")", fuzzy.values, b,
                        points);
    }
    if (all || which == "bfpm") {
        bfpm::PartitionMatrix soft =
            bfpm::assign_static(cl.line_distances, d_delta, bfpm::PartitionClass::Bfpm);
        for (std::size_t b = 0; b < lines; ++b)
            print_block("U_bfpm(" + cl.dataset.labels[b * points] + ")", soft.values, b, points);
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::string path = out_dir + "/points.csv";
        std::ofstream file(path);
        if (!file) throw bfpm::DataError("io", "cannot write '" + path + "'");
        file << "x1,x2,line\n";
        for (std::size_t r = 0; r < cl.dataset.size(); ++r)
            file << bfpm::format_sig(cl.dataset.objects(r, 0)) << ','
                 << bfpm::format_sig(cl.dataset.objects(r, 1)) << ',' << cl.dataset.labels[r]
                 << "\n";
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

int cmd_demo_divisible(const std::string& out_dir) {
    bfpm::PartitionMatrix u{bfpm::Matrix(2, 100), bfpm::PartitionClass::Bfpm};
    for (std::size_t value = 1; value <= 100; ++value) {
        u.values(0, value - 1) = value % 2 == 0 ? 1.0 : 0.0;
        u.values(1, value - 1) = value % 5 == 0 ? 1.0 : 0.0;
    }

    auto print_members = [&](const char* name, std::size_t row) {
        std::printf("%s members:", name);
        for (std::size_t j = 0; j < 100; ++j)
            if (u.values(row, j) == 1.0) std::printf(" %zu", j + 1);
        std::printf("\n");
    };
    std::printf("integers 1..100 against clusters divisible-by-2 and divisible-by-5\n");
    print_members("divisible-by-2", 0);
    print_members("divisible-by-5", 1);
    std::printf("full members of both clusters:");
    for (std::size_t j = 0; j < 100; ++j)
        if (u.values(0, j) == 1.0 && u.values(1, j) == 1.0) std::printf(" %zu", j + 1);
    std::printf("\n");

    bfpm::PartitionClassReport report = bfpm::validate_partition(u);
    if (report.satisfied) {
        std::printf("bfpm validation: satisfied\n");
    } else {
        std::printf("bfpm validation: NOT satisfied, %zu objects belong to no cluster:",
                    report.violations.size());
        for (const bfpm::Violation& v : report.violations) std::printf(" %td", v.object + 1);
        std::printf("\n(every object must belong to at least one cluster)\n");
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::string memb = out_dir + "/memberships.csv";
        bfpm::write_membership_csv(u, memb);
        std::string data = out_dir + "/integers.csv";
        std::ofstream file(data);
        if (!file) throw bfpm::DataError("io", "cannot write '" + data + "'");
        file << "value,label\n";
        for (std::size_t value = 1; value <= 100; ++value) {
            const char* label = value % 10 == 0   ? "both"
                                : value % 2 == 0  ? "div2"
                                : value % 5 == 0  ? "div5"
                                                  : "neither";
            file << value << ',' << label << "\n";
        }
        std::printf("wrote %s %s\n", memb.c_str(), data.c_str());
    }
    return 0;
}

int cmd_bench(const ClusterOpts& o, const std::vector<double>& grid_flag) {
    bfpm::Dataset ds = load_input(o);
    std::vector<double> grid = grid_flag.empty() ? std::vector<double>{o.fuzzifier} : grid_flag;

    std::printf("dataset=%s n=%zu d=%zu clusters=%zu distance=%s seed=%llu restarts=%zu%s\n",
                o.input.c_str(), ds.size(), ds.dim(), o.clusters, o.distance.c_str(),
                static_cast<unsigned long long>(o.seed), o.restarts,
                o.normalize ? " normalized" : "");
    std::printf("method\tm\taccuracy\tvpc\tvpe\tdb\tcs\tg\titer\tconverged\tseed_used\n");

    auto cell = [](const bfpm::IndexValue& iv) {
        return iv.value ? bfpm::format_sig(*iv.value, 6) : std::string("err");
    };

    for (const char* method : {"bfpm", "fcm", "kmeans"}) {
        bool soft = std::string(method) != "kmeans";
        for (double m : soft ? grid : std::vector<double>{0.0}) {
            ClusterOpts local = o;
            local.method = method;
            local.fuzzifier = m;
            bfpm::RunConfig cfg = make_config(local);
            bfpm::RunResult res = bfpm::run(ds, cfg);
            bfpm::ValidityReport report =
                bfpm::validity_report(ds, res.partition, res.prototypes);
            std::string acc = "-";
            if (ds.has_labels())
                acc = bfpm::format_sig(bfpm::accuracy(res.partition, ds.labels), 6);
            std::printf("%s\t%s\t%s\t%s\t%s\t%s\t%s\t%s\t%zu\t%s\t%llu\n", method,
                        soft ? bfpm::format_sig(m, 6).c_str() : "-", acc.c_str(),
                        cell(report.vpc).c_str(), cell(report.vpe).c_str(),
                        cell(report.db).c_str(), cell(report.cs).c_str(),
                        cell(report.g).c_str(), res.iterations,
                        res.converged ? "true" : "false",
                        static_cast<unsigned long long>(res.seed_used));
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded fuzzy possibilistic clustering toolkit"};
    app.require_subcommand(1);
    std::function<int()> action;

    ClusterOpts cluster_opts;
    std::string cluster_out = "out";
    CLI::App* cluster = app.add_subcommand("cluster", "run a clustering method on a CSV");
    add_cluster_options(cluster, cluster_opts, true);
    cluster->add_option("--out-dir", cluster_out, "directory for the three run artifacts");
    cluster->callback([&] { action = [&] { return cmd_cluster(cluster_opts, cluster_out); }; });

    ClusterOpts validate_opts;
    std::string validate_membership, validate_prototypes, validate_out;
    CLI::App* validate =
        app.add_subcommand("validate", "compute validity indices for a stored run");
    validate->add_option("--input", validate_opts.input, "dataset CSV")->required();
    validate->add_option("--label-column", validate_opts.label_column,
                         "label column to exclude from features");
    validate->add_flag("--normalize", validate_opts.normalize,
                       "apply the same scaling the run used");
    validate->add_option("--membership", validate_membership, "membership CSV")->required();
    validate->add_option("--prototypes", validate_prototypes, "prototype CSV")->required();
    validate->add_option("--out", validate_out, "also write the JSON here");
    validate->callback([&] {
        action = [&] {
            return cmd_validate(validate_opts, validate_membership, validate_prototypes,
                                validate_out);
        };
    });

    ClusterOpts movement_opts;
    double movement_threshold = 0.5;
    std::string movement_sort = "index", movement_out;
    CLI::App* movement = app.add_subcommand(
        "movement", "per-object mobility report (assigned vs runner-up membership)");
    add_cluster_options(movement, movement_opts, false);
    movement->get_option("--input")
        ->description("membership CSV, or dataset CSV when --method is given");
    movement->add_option("--threshold", movement_threshold,
                         "runner-up membership that flags an object critical");
    movement->add_option("--sort", movement_sort, "index | gap")
        ->check(CLI::IsMember({"index", "gap"}));
    movement->add_option("--out", movement_out, "write TSV here instead of stdout");
    movement->callback([&] {
        bool have_method = movement->count("--method") > 0;
        action = [&, have_method] {
            return cmd_movement(movement_opts, have_method, movement_threshold, movement_sort,
                                movement_out);
        };
    });

    CLI::App* demo = app.add_subcommand("demo", "built-in didactic datasets");
    demo->require_subcommand(1);

    std::string demo_lines_spec = "0,1;1,0";
    std::size_t demo_points = 5;
    double demo_spacing = 1.0, demo_d_delta = 2.0;
    std::string demo_class = "all", demo_lines_out;
    CLI::App* demo_lines =
        demo->add_subcommand("lines", "crossing lines through the origin, static memberships");
    demo_lines->add_option("--lines", demo_lines_spec, "line coefficients 'a,b;a,b;...'");
    demo_lines->add_option("--points", demo_points, "odd sample count per line");
    demo_lines->add_option("--spacing", demo_spacing, "sample spacing along each line");
    demo_lines->add_option("--d-delta", demo_d_delta, "support radius for static memberships");
    demo_lines->add_option("--class", demo_class, "all | crisp | fuzzy | bfpm")
        ->check(CLI::IsMember({"all", "crisp", "fuzzy", "bfpm"}));
    demo_lines->add_option("--out-dir", demo_lines_out, "also write the points as a CSV");
    demo_lines->callback([&] {
        action = [&] {
            return cmd_demo_lines(demo_lines_spec, demo_points, demo_spacing, demo_d_delta,
                                  demo_class, demo_lines_out);
        };
    });

    std::string demo_div_out;
    CLI::App* demo_div = demo->add_subcommand(
        "divisible", "integers 1..100 with divisibility-by-2/5 memberships");
    demo_div->add_option("--out-dir", demo_div_out, "also write membership and dataset CSVs");
    demo_div->callback([&] { action = [&] { return cmd_demo_divisible(demo_div_out); }; });

    ClusterOpts bench_opts;
    std::vector<double> bench_grid;
    CLI::App* bench =
        app.add_subcommand("bench", "compare bfpm/fcm/kmeans on one dataset in one table");
    add_cluster_options(bench, bench_opts, true);
    bench->add_option("--fuzzifier-grid", bench_grid, "comma list of m values to sweep")
        ->delimiter(',');
    bench->callback([&] { action = [&] { return cmd_bench(bench_opts, bench_grid); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        return action ? action() : 1;
    } catch (const bfpm::DataError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const bfpm::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}
