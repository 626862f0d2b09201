// hullcode CLI: dataset generation, hull compression, and evaluation.
//
// Exit codes: 0 success, 2 malformed input, 3 no approximation possible,
// 4 bad configuration.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hullcode/hullcode.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitConfig = 4;

struct Options {
    std::string input;
    std::string output;
    std::string algo = "cluster";
    std::string engine = "fast";
    double eps = 0.1;
    double delta = 0.5;
    std::string gram;
    std::uint64_t seed = 0;
    std::string oracle = "auto";
    std::string format = "csv";
    bool skip_header = false;

    // generator-specific
    std::string generator;
    int n = 100;
    int d = 2;
    int k = 2;
    double strip = 0.0;
    double spacing = 0.5;

    // eval-specific
    std::string result_path;
};

std::vector<std::vector<double>> load_points(const Options& opt) {
    if (opt.format == "bin") return hullcode::read_binary_points(opt.input);
    return hullcode::read_csv_matrix(opt.input, opt.skip_header);
}

void write_points(const std::string& path, const std::string& format,
                  const hullcode::PointSet& ps) {
    const std::string tmp = path + ".tmp";
    if (format == "bin")
        hullcode::write_binary_points(tmp, ps);
    else
        hullcode::write_csv_matrix(tmp, ps);
    std::filesystem::rename(tmp, path);
}

int run_gen(const Options& opt) {
    hullcode::PointSet ps(1, 1, {0.0});
    json meta;
    if (opt.generator == "ball") {
        ps = hullcode::gen_uniform_ball(opt.n, opt.d, opt.seed);
        meta = {{"generator", "ball"}, {"n", opt.n}, {"d", opt.d}, {"seed", opt.seed}};
    } else if (opt.generator == "klines") {
        auto inst = hullcode::gen_klines(opt.k, opt.n, opt.d, opt.strip, opt.seed);
        ps = std::move(inst.points);
        meta = {{"generator", "klines"}, {"n", opt.n},          {"d", opt.d},
                {"k", opt.k},            {"strip", opt.strip},  {"seed", opt.seed},
                {"endpoints", inst.endpoints}};
    } else if (opt.generator == "packing") {
        ps = hullcode::gen_sphere_packing(opt.d, opt.spacing, opt.seed);
        meta = {{"generator", "packing"},
                {"d", opt.d},
                {"spacing", opt.spacing},
                {"seed", opt.seed},
                {"count", ps.size()}};
    } else {
        std::cerr << "unknown generator '" << opt.generator << "'\n";
        return kExitConfig;
    }
    write_points(opt.output, opt.format, ps);
    hullcode::atomic_write_file(opt.output + ".meta.json", meta.dump(2) + "\n");
    return kExitOk;
}

int run_compress(const Options& opt) {
    std::optional<hullcode::PointSet> points;
    std::optional<hullcode::DotAccess> acc;
    hullcode::BallTransform transform;

    if (!opt.gram.empty()) {
        int n = 0;
        auto g = hullcode::read_gram_csv(opt.gram, n);
        acc = hullcode::DotAccess::from_gram(std::move(g), n);
        transform.scale = 1.0;
    } else {
        auto rows = load_points(opt);
        auto [ps, t] = hullcode::normalize_to_unit_ball(rows);
        points.emplace(std::move(ps));
        transform = std::move(t);
        acc = hullcode::DotAccess::from_points(*points);
    }

    hullcode::HullApproximation hull;
    if (opt.algo == "cluster") {
        const auto engine = opt.engine == "naive" ? hullcode::ClusterEngine::naive
                                                  : hullcode::ClusterEngine::fast;
        hullcode::ClusterOptions copts;
        copts.keep_codes = false;
        hull = hullcode::greedy_cluster(*acc, opt.eps, engine, copts);
    } else {
        std::vector<int> all(acc->size());
        for (int i = 0; i < acc->size(); ++i) all[i] = i;
        hull = hullcode::greedy_cover(*acc, all, all, opt.eps, opt.delta);
    }

    // uniform code pass over the selected set: support stays within the
    // 16/eps^2 cap regardless of the algorithm that picked T
    auto codes = hullcode::encode_dataset(*acc, hull.selected, opt.eps);
    std::vector<hullcode::SparseCombination> combos;
    std::vector<double> dists;
    combos.reserve(codes.size());
    dists.reserve(codes.size());
    for (auto& c : codes) {
        combos.push_back(std::move(c.point));
        dists.push_back(c.distance);
    }

    const json out = hullcode::result_to_json(hull, transform, opt.algo, opt.engine, combos, dists);
    hullcode::atomic_write_file(opt.output, out.dump(2) + "\n");
    return kExitOk;
}

int run_eval(const Options& opt) {
    const auto rows = load_points(opt);

    json result;
    {
        std::ifstream in(opt.result_path);
        if (!in) throw hullcode::IoError("cannot open " + opt.result_path);
        in >> result;
    }

    const auto center = result.at("transform").at("center").get<std::vector<double>>();
    const double scale = result.at("transform").at("scale").get<double>();
    if (!center.empty() && center.size() != rows[0].size())
        throw hullcode::IoError("dimension mismatch: dataset has " +
                                std::to_string(rows[0].size()) + " columns, result expects " +
                                std::to_string(center.size()));

    // map the dataset into the units the result was computed in
    std::vector<std::vector<double>> mapped = rows;
    if (!center.empty()) {
        for (auto& r : mapped)
            for (std::size_t j = 0; j < r.size(); ++j) r[j] = (r[j] - center[j]) * scale;
    }
    hullcode::PointSet ps(mapped);

    const auto selected = result.at("selected").get<std::vector<int>>();
    if (selected.empty()) throw hullcode::IoError("result has an empty selected set");
    for (int s : selected)
        if (s < 0 || s >= ps.size())
            throw hullcode::IoError("selected index " + std::to_string(s) +
                                    " outside the dataset");
    const double eps = result.at("stats").at("eps").get<double>();

    // oracle only when the face enumeration is genuinely affordable
    const int tsize = static_cast<int>(selected.size());
    const int maxs = std::min(tsize, ps.dim() + 1);
    double subsets = 0.0, c = 1.0;
    for (int s = 1; s <= maxs; ++s) {
        c = c * (tsize - s + 1) / s;
        subsets += c;
    }
    const bool sized = (tsize <= 64 || ps.dim() <= 8) && subsets * ps.size() <= 5e7;
    bool use_oracle = sized;
    if (opt.oracle == "on") use_oracle = true;
    if (opt.oracle == "off") use_oracle = false;

    hullcode::EvalReport report;
    report.method = use_oracle ? "oracle" : "approximate";
    report.eps_used = eps;
    report.selected_size = tsize;
    report.hausdorff_one_sided = hullcode::hausdorff_one_sided(
        ps, selected,
        use_oracle ? hullcode::HausdorffMode::oracle : hullcode::HausdorffMode::approximate,
        eps / 4.0);

    if (result.contains("codes") && !result.at("codes").empty()) {
        int maxsup = 0;
        double total = 0.0;
        for (const auto& code : result.at("codes")) {
            const int sup = static_cast<int>(code.at("support").size());
            maxsup = std::max(maxsup, sup);
            total += sup;
        }
        report.max_code_support = maxsup;
        report.mean_code_support = total / static_cast<double>(result.at("codes").size());
    }

    hullcode::atomic_write_file(opt.output, hullcode::report_to_json(report).dump(2) + "\n");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"convex hull coreset selection and sparse convex encoding"};
    app.require_subcommand(1);

    auto add_io = [&](CLI::App* cmd, bool need_input) {
        if (need_input) cmd->add_option("--input", opt.input, "point data file")->required();
        cmd->add_option("--output", opt.output, "output file")->required();
        cmd->add_option("--format", opt.format, "point file format")
            ->check(CLI::IsMember({"csv", "bin"}));
        cmd->add_flag("--skip-header", opt.skip_header, "skip the first CSV row");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    gen->add_option("generator", opt.generator, "klines | packing | ball")->required();
    gen->add_option("--n", opt.n, "number of points");
    gen->add_option("--d", opt.d, "dimension");
    gen->add_option("--k", opt.k, "number of planted lines");
    gen->add_option("--strip", opt.strip, "orthogonal jitter of the planted lines");
    gen->add_option("--spacing", opt.spacing, "minimum pairwise distance of the packing");
    gen->add_option("--seed", opt.seed, "random seed");
    add_io(gen, false);

    CLI::App* compress = app.add_subcommand("compress", "select a hull subset and encode");
    add_io(compress, true);
    compress->add_option("--algo", opt.algo, "selection algorithm")
        ->check(CLI::IsMember({"cluster", "cover"}));
    compress->add_option("--engine", opt.engine, "cluster engine")
        ->check(CLI::IsMember({"naive", "fast"}));
    compress->add_option("--eps", opt.eps, "target accuracy in normalized units")->required();
    compress->add_option("--delta", opt.delta, "cover slack factor");
    compress->add_option("--gram", opt.gram, "precomputed Gram matrix (kernel mode)");
    compress->add_option("--seed", opt.seed, "recorded in the run config");
    compress->get_option("--input")->required(false); // not needed with --gram

    CLI::App* eval = app.add_subcommand("eval", "evaluate a compression result");
    add_io(eval, true);
    eval->add_option("result", opt.result_path, "result JSON from compress")->required();
    eval->add_option("--oracle", opt.oracle, "force the evaluation mode")
        ->check(CLI::IsMember({"auto", "on", "off"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (gen->parsed()) return run_gen(opt);
        if (compress->parsed()) {
            if (!(opt.eps > 0.0 && opt.eps < 1.0)) {
                std::cerr << "--eps must be in (0,1)\n";
                return kExitConfig;
            }
            if (opt.algo == "cover" && !(opt.delta > 0.0 && opt.delta <= 1.0)) {
                std::cerr << "--delta must be in (0,1]\n";
                return kExitConfig;
            }
            if (opt.gram.empty() && opt.input.empty()) {
                std::cerr << "compress needs --input or --gram\n";
                return kExitConfig;
            }
            return run_compress(opt);
        }
        if (eval->parsed()) return run_eval(opt);
    } catch (const hullcode::CoverInfeasibleError& e) {
        std::cerr << e.what() << " (inner point " << e.point() << ")\n";
        return kExitInfeasible;
    } catch (const hullcode::IoError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad result file: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }
    return kExitConfig;
}
