// Command-line surface: every subcommand echoes its full configuration into
// <out>/manifest.json so a run can be reproduced byte-identically.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sec/acceptance.hpp"
#include "sec/calibrate.hpp"
#include "sec/checkpoint.hpp"
#include "sec/corpus.hpp"
#include "sec/errors.hpp"
#include "sec/image.hpp"
#include "sec/image_io.hpp"
#include "sec/manifest.hpp"
#include "sec/metrics.hpp"
#include "sec/model.hpp"
#include "sec/spectrum.hpp"
#include "sec/train.hpp"
#include "sec/version.hpp"

namespace {

using nlohmann::json;

void ensure_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sec::DataError("cannot open for writing: " + path);
    out << text;
    if (!out.good()) throw sec::DataError("write failed: " + path);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOpts {
    std::string image;
    std::string statistic = "mean";
    bool magnitude = false;
    bool include_dc = false;
    std::string out = ".";
};

sec::SecVariant variant_of(const std::string& statistic, bool magnitude, bool include_dc) {
    sec::SecVariant v;
    v.statistic = sec::parse_sec_statistic(statistic);
    v.spectrum.squared = !magnitude;
    v.spectrum.include_dc = include_dc;
    return v;
}

int cmd_analyze(const AnalyzeOpts& o) {
    const sec::Image img = sec::load_image(o.image);
    const sec::SecVariant variant = variant_of(o.statistic, o.magnitude, o.include_dc);
    const std::vector<double> bins = sec::radial_energy(img, variant.spectrum);
    const double centroid = sec::sec_from_spectrum(bins, variant.statistic);

    ensure_dir(o.out);
    std::string csv = "r,energy\n";
    for (size_t r = 0; r < bins.size(); ++r) csv += fmt("%zu,%.17g\n", r, bins[r]);
    write_text(o.out + "/spectrum.csv", csv);
    sec::write_manifest(o.out + "/manifest.json", {{"command", "analyze"},
                                                   {"image", o.image},
                                                   {"statistic", o.statistic},
                                                   {"magnitude", o.magnitude},
                                                   {"include_dc", o.include_dc},
                                                   {"out", o.out}});
    printf("SEC %.17g\n", centroid);
    return 0;
}

// ---------------------------------------------------------------------------
// model-sec

struct ModelSecOpts {
    std::string arch;
    std::string size = "S";
    double param = 0.0;
    int seeds = 10;
    int height = 64, width = 64;
    uint64_t seed = 0;
    std::string statistic = "mean";
    bool magnitude = false;
    bool include_dc = false;
    std::string out = ".";
};

int cmd_model_sec(const ModelSecOpts& o) {
    const sec::ModelConfig cfg =
        sec::make_config(sec::parse_architecture(o.arch), o.size, o.param, 3, o.seed);
    const sec::SecVariant variant = variant_of(o.statistic, o.magnitude, o.include_dc);
    const sec::ModelSecResult res = sec::model_sec(cfg, o.seeds, o.height, o.width, variant);

    double sq = 0.0;
    for (double s : res.per_seed) sq += (s - res.mean_sec) * (s - res.mean_sec);
    const size_t n = res.per_seed.size();
    const double ci95 = n > 1 ? 1.96 * std::sqrt(sq / (n - 1)) / std::sqrt(double(n)) : 0.0;

    ensure_dir(o.out);
    std::string csv = "seed,sec\n";
    for (size_t i = 0; i < n; ++i)
        csv += fmt("%llu,%.17g\n", static_cast<unsigned long long>(o.seed + i), res.per_seed[i]);
    write_text(o.out + "/model_sec.csv", csv);
    sec::write_manifest(o.out + "/manifest.json", {{"command", "model-sec"},
                                                   {"arch", o.arch},
                                                   {"size", o.size},
                                                   {"param", cfg.freq_param},
                                                   {"seeds", o.seeds},
                                                   {"height", o.height},
                                                   {"width", o.width},
                                                   {"seed", o.seed},
                                                   {"statistic", o.statistic},
                                                   {"magnitude", o.magnitude},
                                                   {"include_dc", o.include_dc},
                                                   {"out", o.out}});
    printf("mean %.17g ci95 %.17g\n", res.mean_sec, ci95);
    return 0;
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateOpts {
    std::string arch;
    std::string size = "S";
    std::vector<double> grid;
    std::vector<std::string> images;
    int ladder = 0;
    int ladder_channels = 3;
    int ladder_height = 32, ladder_width = 32;
    uint64_t corpus_seed = 0;
    int steps = 2000;
    double lr = 1e-3;
    int log_every = 100;
    uint64_t train_seed = 0;
    int n_seeds = 1;
    int workers = 0;
    std::string statistic = "mean";
    bool magnitude = false;
    bool include_dc = false;
    std::string out = ".";
};

int cmd_calibrate(const CalibrateOpts& o) {
    sec::ParamGrid grid;
    grid.architecture = sec::parse_architecture(o.arch);
    grid.values = o.grid.empty() ? sec::default_grid(grid.architecture).values : o.grid;

    std::vector<sec::CorpusImage> corpus;
    if (o.ladder > 0) {
        corpus = sec::blur_ladder(o.ladder, o.ladder_channels, o.ladder_height, o.ladder_width,
                                  o.corpus_seed);
    } else {
        for (const std::string& path : o.images)
            corpus.push_back({std::filesystem::path(path).stem().string(),
                              sec::load_image(path), 0.0});
    }

    sec::TrainConfig tc;
    tc.steps = o.steps;
    tc.learning_rate = o.lr;
    tc.log_every = o.log_every;
    tc.seed = o.train_seed;
    const sec::SecVariant variant = variant_of(o.statistic, o.magnitude, o.include_dc);

    sec::CalibDiagnostics diag;
    const sec::CalibrationSet calib =
        sec::build_calibration_set(corpus, grid, o.size, tc, o.n_seeds, variant, o.workers,
                                   &diag);

    ensure_dir(o.out);
    sec::save_calibration(calib, o.out + "/calibration.json");
    sec::write_manifest(o.out + "/manifest.json", {{"command", "calibrate"},
                                                   {"arch", o.arch},
                                                   {"size", o.size},
                                                   {"grid", grid.values},
                                                   {"images", o.images},
                                                   {"ladder", o.ladder},
                                                   {"ladder_channels", o.ladder_channels},
                                                   {"ladder_height", o.ladder_height},
                                                   {"ladder_width", o.ladder_width},
                                                   {"corpus_seed", o.corpus_seed},
                                                   {"steps", o.steps},
                                                   {"lr", o.lr},
                                                   {"log_every", o.log_every},
                                                   {"train_seed", o.train_seed},
                                                   {"n_seeds", o.n_seeds},
                                                   {"workers", o.workers},
                                                   {"statistic", o.statistic},
                                                   {"magnitude", o.magnitude},
                                                   {"include_dc", o.include_dc},
                                                   {"out", o.out}});

    for (const sec::CalibrationEntry& e : calib.entries)
        printf("%s sec %.4f -> param %g (psnr %.2f dB)\n", e.image_id.c_str(), e.sec,
               e.best_param, e.best_psnr);
    for (const std::string& d : diag.diverged_cells)
        fprintf(stderr, "warning: diverged cell: %s\n", d.c_str());
    for (const std::string& rj : diag.rejected_images)
        fprintf(stderr, "warning: rejected: %s\n", rj.c_str());
    // Partial failures leave usable artifacts but are reflected in the code.
    return diag.diverged_cells.empty() && diag.rejected_images.empty() ? 0 : 3;
}

// ---------------------------------------------------------------------------
// select

struct SelectOpts {
    std::string calibration;
    std::string image;
    std::string out = ".";
};

int cmd_select(const SelectOpts& o) {
    const sec::CalibrationSet calib = sec::load_calibration(o.calibration);
    const sec::Image img = sec::load_image(o.image);
    const double target_sec = sec::image_sec(img, calib.variant);
    const double param = sec::sec_conf_select_value(calib, target_sec);

    ensure_dir(o.out);
    sec::write_manifest(o.out + "/selection.json",
                        {{"selected_param", param}, {"target_sec", target_sec}});
    sec::write_manifest(o.out + "/manifest.json", {{"command", "select"},
                                                   {"calibration", o.calibration},
                                                   {"image", o.image},
                                                   {"out", o.out}});
    printf("%.17g\n", param);
    return 0;
}

// ---------------------------------------------------------------------------
// match

struct MatchOpts {
    std::string ref_arch;
    std::string ref_size = "S";
    double ref_param = 0.0;
    uint64_t seed = 0;
    std::string target_arch;
    std::string target_size = "S";
    std::vector<double> grid;
    int seeds = 10;
    int height = 64, width = 64;
    std::string out = ".";
};

int cmd_match(const MatchOpts& o) {
    const sec::Architecture target = sec::parse_architecture(o.target_arch);
    sec::ParamGrid grid;
    grid.architecture = target;
    grid.values = o.grid.empty() ? sec::default_grid(target).values : o.grid;
    const sec::ModelConfig ref =
        sec::make_config(sec::parse_architecture(o.ref_arch), o.ref_size, o.ref_param, 3,
                         o.seed);

    const sec::MatchResult res =
        sec::frequency_match(ref, target, o.target_size, grid, o.seeds, o.height, o.width);

    ensure_dir(o.out);
    write_text(o.out + "/match.json", sec::match_to_json(res, grid));
    sec::write_manifest(o.out + "/manifest.json", {{"command", "match"},
                                                   {"ref_arch", o.ref_arch},
                                                   {"ref_size", o.ref_size},
                                                   {"ref_param", ref.freq_param},
                                                   {"seed", o.seed},
                                                   {"target_arch", o.target_arch},
                                                   {"target_size", o.target_size},
                                                   {"grid", grid.values},
                                                   {"seeds", o.seeds},
                                                   {"height", o.height},
                                                   {"width", o.width},
                                                   {"out", o.out}});
    if (res.grid_exhausted)
        fprintf(stderr, "warning: reference SEC %.2f lies outside the candidate range\n",
                res.ref_sec);
    printf("matched_param %.17g sec_error %.17g\n", res.matched_param, res.sec_error);
    return 0;
}

// ---------------------------------------------------------------------------
// fresh

struct FreshOpts {
    std::string image;
    std::string arch;
    std::string size = "S";
    std::vector<double> grid;
    int seeds = 5;
    int height = 0, width = 0;
    uint64_t seed = 0;
    std::string out = ".";
};

int cmd_fresh(const FreshOpts& o) {
    const sec::Image img = sec::load_image(o.image);
    const sec::Architecture arch = sec::parse_architecture(o.arch);
    sec::ParamGrid grid;
    grid.architecture = arch;
    grid.values = o.grid.empty() ? sec::default_grid(arch).values : o.grid;
    const sec::ModelConfig base = sec::make_config(arch, o.size, 0.0, img.channels, o.seed);

    const double param = sec::fresh_select(img, base, grid, o.seeds, o.height, o.width);

    ensure_dir(o.out);
    sec::write_manifest(o.out + "/fresh.json", {{"selected_param", param}});
    sec::write_manifest(o.out + "/manifest.json", {{"command", "fresh"},
                                                   {"image", o.image},
                                                   {"arch", o.arch},
                                                   {"size", o.size},
                                                   {"grid", grid.values},
                                                   {"seeds", o.seeds},
                                                   {"height", o.height},
                                                   {"width", o.width},
                                                   {"seed", o.seed},
                                                   {"out", o.out}});
    printf("%.17g\n", param);
    return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainOpts {
    std::string image;
    std::string arch;
    std::string size = "S";
    double param = 0.0;
    int steps = 2000;
    double lr = 1e-3;
    int log_every = 100;
    uint64_t seed = 0;
    std::string out = ".";
};

int cmd_train(const TrainOpts& o) {
    const sec::Image target = sec::load_image(o.image);
    const sec::ModelConfig cfg = sec::make_config(sec::parse_architecture(o.arch), o.size,
                                                  o.param, target.channels, o.seed);
    sec::TrainConfig tc;
    tc.steps = o.steps;
    tc.learning_rate = o.lr;
    tc.log_every = o.log_every;
    tc.seed = o.seed;

    const sec::TrainResult run = sec::train(sec::init_network(cfg), target, tc);

    ensure_dir(o.out);
    write_text(o.out + "/trace.csv", sec::trace_to_csv(run.trace));
    sec::save_checkpoint(run.net, o.out + "/checkpoint.json");
    sec::save_image(sec::render(run.net, target.height, target.width), o.out + "/render.png");
    sec::write_manifest(o.out + "/manifest.json", {{"command", "train"},
                                                   {"image", o.image},
                                                   {"arch", o.arch},
                                                   {"size", o.size},
                                                   {"param", cfg.freq_param},
                                                   {"steps", o.steps},
                                                   {"lr", o.lr},
                                                   {"log_every", o.log_every},
                                                   {"seed", o.seed},
                                                   {"out", o.out}});
    const sec::TraceEntry& last = run.trace.entries.back();
    printf("final step %d loss %.17g psnr %.17g\n", last.step, last.loss, last.psnr);
    return 0;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkOpts {
    std::string suite = "all";
    std::string out = ".";
};

int cmd_benchmark(const BenchmarkOpts& o) {
    ensure_dir(o.out);
    const auto report = [](const sec::CriterionResult& r) {
        printf("criterion %d: %s - %s (%.1fs)\n", r.id, r.pass ? "PASS" : "FAIL",
               r.details.c_str(), r.seconds);
        fflush(stdout);
    };
    const std::vector<sec::CriterionResult> results =
        sec::run_acceptance_suite(o.suite, o.out, report);
    write_text(o.out + "/summary.json", sec::acceptance_summary_json(results));
    sec::write_manifest(o.out + "/manifest.json",
                        {{"command", "benchmark"}, {"suite", o.suite}, {"out", o.out}});

    int passed = 0;
    for (const sec::CriterionResult& r : results) passed += r.pass ? 1 : 0;
    printf("%d/%zu criteria passed\n", passed, results.size());
    return passed == static_cast<int>(results.size()) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral energy centroid toolkit for images and coordinate networks"};
    app.require_subcommand(1);
    const std::vector<std::string> archs{"siren", "fourier", "wire", "finer"};
    const std::vector<std::string> stats{"mean", "median"};

    AnalyzeOpts an;
    CLI::App* c_an = app.add_subcommand("analyze", "SEC and radial spectrum of an image");
    c_an->add_option("--image", an.image, "PNG or PPM/PGM input")->required();
    c_an->add_option("--statistic", an.statistic, "centroid statistic")
        ->check(CLI::IsMember(stats));
    c_an->add_flag("--magnitude", an.magnitude, "accumulate |F| instead of |F|^2");
    c_an->add_flag("--include-dc", an.include_dc, "keep the radius-0 bin");
    c_an->add_option("--out", an.out, "output directory");

    ModelSecOpts ms;
    CLI::App* c_ms = app.add_subcommand("model-sec", "SEC of untrained renders across seeds");
    c_ms->add_option("--arch", ms.arch, "architecture")->required()->check(CLI::IsMember(archs));
    c_ms->add_option("--size", ms.size, "named size S|M|L");
    c_ms->add_option("--param", ms.param, "frequency parameter (0 = architecture default)");
    c_ms->add_option("--seeds", ms.seeds, "number of seeds");
    c_ms->add_option("--height", ms.height, "render height");
    c_ms->add_option("--width", ms.width, "render width");
    c_ms->add_option("--seed", ms.seed, "base seed");
    c_ms->add_option("--statistic", ms.statistic, "centroid statistic")
        ->check(CLI::IsMember(stats));
    c_ms->add_flag("--magnitude", ms.magnitude, "accumulate |F| instead of |F|^2");
    c_ms->add_flag("--include-dc", ms.include_dc, "keep the radius-0 bin");
    c_ms->add_option("--out", ms.out, "output directory");

    CalibrateOpts ca;
    CLI::App* c_ca = app.add_subcommand("calibrate", "offline grid search over a corpus");
    c_ca->add_option("--arch", ca.arch, "architecture")->required()->check(CLI::IsMember(archs));
    c_ca->add_option("--size", ca.size, "named size S|M|L");
    c_ca->add_option("--grid", ca.grid, "candidate values (default: architecture grid)")
        ->delimiter(',');
    CLI::Option* o_images = c_ca->add_option("--images", ca.images, "image files");
    CLI::Option* o_ladder =
        c_ca->add_option("--ladder", ca.ladder, "use N synthetic blur-ladder images");
    o_images->excludes(o_ladder);
    c_ca->add_option("--ladder-channels", ca.ladder_channels, "ladder channels");
    c_ca->add_option("--ladder-height", ca.ladder_height, "ladder height");
    c_ca->add_option("--ladder-width", ca.ladder_width, "ladder width");
    c_ca->add_option("--corpus-seed", ca.corpus_seed, "ladder noise seed");
    c_ca->add_option("--steps", ca.steps, "training steps per cell");
    c_ca->add_option("--lr", ca.lr, "learning rate");
    c_ca->add_option("--log-every", ca.log_every, "trace cadence");
    c_ca->add_option("--train-seed", ca.train_seed, "base model seed");
    c_ca->add_option("--n-seeds", ca.n_seeds, "seeds per cell");
    c_ca->add_option("--workers", ca.workers, "worker threads (0 = SEC_WORKERS or hardware)");
    c_ca->add_option("--statistic", ca.statistic, "centroid statistic")
        ->check(CLI::IsMember(stats));
    c_ca->add_flag("--magnitude", ca.magnitude, "accumulate |F| instead of |F|^2");
    c_ca->add_flag("--include-dc", ca.include_dc, "keep the radius-0 bin");
    c_ca->add_option("--out", ca.out, "output directory");

    SelectOpts se;
    CLI::App* c_se = app.add_subcommand("select", "pick a parameter for an image via SEC");
    c_se->add_option("--calibration", se.calibration, "calibration JSON")->required();
    c_se->add_option("--image", se.image, "target image")->required();
    c_se->add_option("--out", se.out, "output directory");

    MatchOpts ma;
    CLI::App* c_ma = app.add_subcommand("match", "align a target architecture's SEC to a "
                                                 "reference model");
    c_ma->add_option("--ref-arch", ma.ref_arch, "reference architecture")
        ->required()
        ->check(CLI::IsMember(archs));
    c_ma->add_option("--ref-size", ma.ref_size, "reference named size");
    c_ma->add_option("--ref-param", ma.ref_param, "reference parameter (0 = default)");
    c_ma->add_option("--seed", ma.seed, "base seed");
    c_ma->add_option("--target-arch", ma.target_arch, "target architecture")
        ->required()
        ->check(CLI::IsMember(archs));
    c_ma->add_option("--target-size", ma.target_size, "target named size");
    c_ma->add_option("--grid", ma.grid, "candidate values (default: architecture grid)")
        ->delimiter(',');
    c_ma->add_option("--seeds", ma.seeds, "seeds per candidate");
    c_ma->add_option("--height", ma.height, "render height");
    c_ma->add_option("--width", ma.width, "render width");
    c_ma->add_option("--out", ma.out, "output directory");

    FreshOpts fr;
    CLI::App* c_fr = app.add_subcommand("fresh", "Wasserstein spectrum baseline selection");
    c_fr->add_option("--image", fr.image, "target image")->required();
    c_fr->add_option("--arch", fr.arch, "architecture")->required()->check(CLI::IsMember(archs));
    c_fr->add_option("--size", fr.size, "named size S|M|L");
    c_fr->add_option("--grid", fr.grid, "candidate values (default: architecture grid)")
        ->delimiter(',');
    c_fr->add_option("--seeds", fr.seeds, "seeds per candidate");
    c_fr->add_option("--height", fr.height, "render height (0 = target)");
    c_fr->add_option("--width", fr.width, "render width (0 = target)");
    c_fr->add_option("--seed", fr.seed, "base seed");
    c_fr->add_option("--out", fr.out, "output directory");

    TrainOpts tr;
    CLI::App* c_tr = app.add_subcommand("train", "fit a network to an image");
    c_tr->add_option("--image", tr.image, "target image")->required();
    c_tr->add_option("--arch", tr.arch, "architecture")->required()->check(CLI::IsMember(archs));
    c_tr->add_option("--size", tr.size, "named size S|M|L");
    c_tr->add_option("--param", tr.param, "frequency parameter (0 = architecture default)");
    c_tr->add_option("--steps", tr.steps, "training steps");
    c_tr->add_option("--lr", tr.lr, "learning rate");
    c_tr->add_option("--log-every", tr.log_every, "trace cadence");
    c_tr->add_option("--seed", tr.seed, "model and run seed");
    c_tr->add_option("--out", tr.out, "output directory");

    BenchmarkOpts be;
    CLI::App* c_be = app.add_subcommand("benchmark", "desk-scale verification suites");
    c_be->add_option("--suite", be.suite, "spectral|gradients|models|training|selection|"
                                          "matching|all")
        ->check(CLI::IsMember(sec::acceptance_suites()));
    c_be->add_option("--out", be.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_an->parsed()) return cmd_analyze(an);
        if (c_ms->parsed()) return cmd_model_sec(ms);
        if (c_ca->parsed()) return cmd_calibrate(ca);
        if (c_se->parsed()) return cmd_select(se);
        if (c_ma->parsed()) return cmd_match(ma);
        if (c_fr->parsed()) return cmd_fresh(fr);
        if (c_tr->parsed()) return cmd_train(tr);
        if (c_be->parsed()) return cmd_benchmark(be);
    } catch (const sec::DataError& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const sec::NumericalError& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
