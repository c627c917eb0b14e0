#include "sec/calibrate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "sec/errors.hpp"
#include "sec/metrics.hpp"
#include "sec/pool.hpp"
#include "sec/version.hpp"

namespace sec {

using nlohmann::json;

ParamGrid default_grid(Architecture a) {
    ParamGrid g;
    g.architecture = a;
    switch (a) {
        case Architecture::siren:
            g.values = {30, 40, 50, 60, 70, 80, 90, 100, 110};
            break;
        case Architecture::fourier:
            g.values = {1, 2, 3, 4, 5, 6, 7, 8, 9};
            break;
        case Architecture::wire:
            g.values = {1, 5, 10, 15, 20, 25, 30};
            break;
        case Architecture::finer:
            g.values = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
            break;
    }
    return g;
}

void validate_grid(const ParamGrid& grid) {
    if (grid.values.empty()) throw DataError("grid: no candidate values");
    for (size_t i = 0; i < grid.values.size(); ++i) {
        if (!(grid.values[i] > 0.0)) throw DataError("grid: values must be positive");
        if (i > 0 && !(grid.values[i] > grid.values[i - 1]))
            throw DataError("grid: values must be strictly increasing");
    }
}

// ---------------------------------------------------------------------------
// calibration set persistence

std::string calibration_to_json(const CalibrationSet& calib) {
    json doc;
    doc["version"] = kFormatVersion;
    doc["architecture"] = name(calib.architecture);
    doc["size"] = calib.size;
    doc["variant"] = {
        {"statistic", name(calib.variant.statistic)},
        {"squared", calib.variant.spectrum.squared},
        {"include_dc", calib.variant.spectrum.include_dc},
    };
    doc["entries"] = json::array();
    for (const CalibrationEntry& e : calib.entries)
        doc["entries"].push_back({{"image_id", e.image_id},
                                  {"sec", e.sec},
                                  {"best_param", e.best_param},
                                  {"best_psnr", e.best_psnr}});
    return doc.dump(2) + "\n";
}

CalibrationSet calibration_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("calibration: invalid JSON: ") + e.what());
    }
    try {
        if (doc.at("version").get<int>() != kFormatVersion)
            throw DataError("calibration: unsupported version");
        CalibrationSet calib;
        calib.architecture = parse_architecture(doc.at("architecture").get<std::string>());
        calib.size = doc.at("size").get<std::string>();
        const json& v = doc.at("variant");
        calib.variant.statistic = parse_sec_statistic(v.at("statistic").get<std::string>());
        calib.variant.spectrum.squared = v.at("squared").get<bool>();
        calib.variant.spectrum.include_dc = v.at("include_dc").get<bool>();
        for (const json& e : doc.at("entries"))
            calib.entries.push_back({e.at("image_id").get<std::string>(),
                                     e.at("sec").get<double>(),
                                     e.at("best_param").get<double>(),
                                     e.at("best_psnr").get<double>()});
        return calib;
    } catch (const json::exception& e) {
        throw DataError(std::string("calibration: malformed document: ") + e.what());
    }
}

void save_calibration(const CalibrationSet& calib, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("calibration: cannot open for writing: " + path);
    out << calibration_to_json(calib);
    if (!out.good()) throw DataError("calibration: write failed: " + path);
}

CalibrationSet load_calibration(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("calibration: cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return calibration_from_json(text);
}

// ---------------------------------------------------------------------------
// offline grid search

size_t calibration_cell_count(size_t n_images, size_t n_params, int n_seeds) {
    return n_images * n_params * static_cast<size_t>(n_seeds);
}

CalibCellResult run_calibration_cell(size_t cell, const std::vector<CorpusImage>& images,
                                     const ParamGrid& grid, const std::string& size,
                                     const TrainConfig& train_cfg, int n_seeds) {
    const size_t n_params = grid.values.size();
    CalibCellResult res;
    res.seed_idx = static_cast<int>(cell % n_seeds);
    res.param_idx = (cell / n_seeds) % n_params;
    res.image_idx = cell / (n_seeds * n_params);

    const CorpusImage& target = images[res.image_idx];
    ModelConfig cfg = make_config(grid.architecture, size, grid.values[res.param_idx],
                                  target.image.channels,
                                  train_cfg.seed + static_cast<uint64_t>(res.seed_idx));
    try {
        const TrainResult run = train(init_network(cfg), target.image, train_cfg);
        res.psnr = psnr(render(run.net, target.image.height, target.image.width), target.image);
    } catch (const NumericalError& e) {
        res.diverged = true;
        res.diagnostic = e.what();
    }
    return res;
}

CalibrationSet reduce_calibration(const std::vector<CorpusImage>& images, const ParamGrid& grid,
                                  const std::string& size, const SecVariant& variant,
                                  const std::vector<CalibCellResult>& cells, int n_seeds,
                                  CalibDiagnostics* diag) {
    const size_t n_params = grid.values.size();
    std::vector<double> psnr_sum(images.size() * n_params, 0.0);
    std::vector<int> alive(images.size() * n_params, 0);
    for (const CalibCellResult& c : cells) {
        if (c.diverged) {
            if (diag)
                diag->diverged_cells.push_back(
                    images[c.image_idx].id + " param=" + std::to_string(grid.values[c.param_idx]) +
                    " seed=" + std::to_string(c.seed_idx) + ": " + c.diagnostic);
            continue;
        }
        psnr_sum[c.image_idx * n_params + c.param_idx] += c.psnr;
        alive[c.image_idx * n_params + c.param_idx] += 1;
    }
    (void)n_seeds;

    CalibrationSet calib;
    calib.architecture = grid.architecture;
    calib.size = size;
    calib.variant = variant;
    for (size_t i = 0; i < images.size(); ++i) {
        double best_psnr = 0.0, best_param = 0.0;
        bool found = false;
        for (size_t p = 0; p < n_params; ++p) {
            if (alive[i * n_params + p] == 0) continue;
            const double mean = psnr_sum[i * n_params + p] / alive[i * n_params + p];
            if (!found || mean > best_psnr) {
                found = true;
                best_psnr = mean;
                best_param = grid.values[p];
            }
        }
        if (!found) {
            if (diag)
                diag->rejected_images.push_back(images[i].id + ": every grid cell diverged");
            continue;
        }
        calib.entries.push_back(
            {images[i].id, image_sec(images[i].image, variant), best_param, best_psnr});
    }
    if (calib.entries.empty())
        throw DataError("calibration: no image survived the grid search");
    return calib;
}

CalibrationSet build_calibration_set(const std::vector<CorpusImage>& images,
                                     const ParamGrid& grid, const std::string& size,
                                     const TrainConfig& train_cfg, int n_seeds,
                                     const SecVariant& variant, int workers,
                                     CalibDiagnostics* diag) {
    if (images.empty()) throw DataError("calibration: no images");
    validate_grid(grid);
    if (n_seeds < 1) throw DataError("calibration: n_seeds must be >= 1");
    named_size(size);  // validates the tag

    const size_t n = calibration_cell_count(images.size(), grid.values.size(), n_seeds);
    std::vector<CalibCellResult> cells(n);
    run_tasks(n, workers > 0 ? workers : default_workers(), [&](size_t cell) {
        cells[cell] = run_calibration_cell(cell, images, grid, size, train_cfg, n_seeds);
    });
    return reduce_calibration(images, grid, size, variant, cells, n_seeds, diag);
}

// ---------------------------------------------------------------------------
// online selection

double sec_conf_select_value(const CalibrationSet& calib, double target_sec) {
    if (calib.entries.empty()) throw DataError("sec_conf_select: empty calibration set");
    assert(std::isfinite(target_sec));
    const CalibrationEntry* best = nullptr;
    double best_dist = 0.0;
    for (const CalibrationEntry& e : calib.entries) {
        const double dist = std::fabs(target_sec - e.sec);
        if (!best || dist < best_dist || (dist == best_dist && e.sec < best->sec)) {
            best = &e;
            best_dist = dist;
        }
    }
    return best->best_param;
}

double sec_conf_select(const CalibrationSet& calib, const Image& target) {
    return sec_conf_select_value(calib, image_sec(target, calib.variant));
}

// ---------------------------------------------------------------------------
// frequency matching

MatchResult frequency_match(const ModelConfig& ref, Architecture target_arch,
                            const std::string& target_size, const ParamGrid& grid,
                            int n_seeds, int render_height, int render_width,
                            const SecVariant& variant) {
    validate_grid(grid);
    if (grid.architecture != target_arch)
        throw DataError("frequency_match: grid does not belong to the target architecture");

    MatchResult res;
    res.ref_sec = model_sec(ref, n_seeds, render_height, render_width, variant).mean_sec;

    double lo = 0.0, hi = 0.0;
    for (size_t p = 0; p < grid.values.size(); ++p) {
        ModelConfig cfg =
            make_config(target_arch, target_size, grid.values[p], ref.out_channels, ref.seed);
        const double sec =
            model_sec(cfg, n_seeds, render_height, render_width, variant).mean_sec;
        res.table.emplace_back(grid.values[p], sec);
        const double err = std::fabs(sec - res.ref_sec);
        if (p == 0 || err < res.sec_error) {
            res.sec_error = err;
            res.matched_param = grid.values[p];
        }
        if (p == 0) {
            lo = sec;
            hi = sec;
        } else {
            lo = std::min(lo, sec);
            hi = std::max(hi, sec);
        }
    }
    res.grid_exhausted = res.ref_sec < lo || res.ref_sec > hi;
    return res;
}

std::string match_to_json(const MatchResult& match, const ParamGrid& grid) {
    json doc;
    doc["version"] = kFormatVersion;
    doc["architecture"] = name(grid.architecture);
    doc["matched_param"] = match.matched_param;
    doc["sec_error"] = match.sec_error;
    doc["grid_exhausted"] = match.grid_exhausted;
    doc["ref_sec"] = match.ref_sec;
    doc["candidates"] = json::array();
    for (const auto& [param, sec] : match.table)
        doc["candidates"].push_back({{"param", param}, {"sec", sec}});
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// FreSh-style baseline

double wasserstein_1d(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.empty() || q.empty()) throw DataError("wasserstein: empty distribution");
    auto check = [](const std::vector<double>& d) {
        double total = 0.0;
        for (double v : d) {
            if (!(v >= 0.0)) throw DataError("wasserstein: negative mass");
            total += v;
        }
        if (std::fabs(total - 1.0) > 1e-9)
            throw DataError("wasserstein: distribution is not L1-normalized");
    };
    check(p);
    check(q);
    const size_t n = std::max(p.size(), q.size());
    double cp = 0.0, cq = 0.0, dist = 0.0;
    for (size_t i = 0; i < n; ++i) {
        cp += i < p.size() ? p[i] : 0.0;
        cq += i < q.size() ? q[i] : 0.0;
        dist += std::fabs(cp - cq);
    }
    return dist;
}

namespace {

std::vector<double> normalized_magnitude_spectrum(const Image& img) {
    SpectrumVariant variant;
    variant.squared = false;
    variant.include_dc = false;
    std::vector<double> bins = radial_energy(img, variant);
    double total = 0.0;
    for (double b : bins) total += b;
    if (total <= 0.0) throw DataError("fresh_select: spectrum has no energy");
    for (double& b : bins) b /= total;
    return bins;
}

}  // namespace

double fresh_select(const Image& target, const ModelConfig& base, const ParamGrid& grid,
                    int n_seeds, int render_height, int render_width) {
    validate_grid(grid);
    if (grid.architecture != base.architecture)
        throw DataError("fresh_select: grid does not belong to the model architecture");
    if (n_seeds < 1) throw DataError("fresh_select: n_seeds must be >= 1");
    const int h = render_height > 0 ? render_height : target.height;
    const int w = render_width > 0 ? render_width : target.width;

    const std::vector<double> target_dist = normalized_magnitude_spectrum(target);

    double best_param = 0.0, best_dist = 0.0;
    bool first = true;
    for (double param : grid.values) {
        ModelConfig cfg = base;
        cfg.freq_param = param;
        std::vector<double> mean_spectrum;
        for (int s = 0; s < n_seeds; ++s) {
            cfg.seed = base.seed + static_cast<uint64_t>(s);
            const std::vector<double> spectrum =
                normalized_magnitude_spectrum(render(init_network(cfg), h, w));
            if (mean_spectrum.empty()) mean_spectrum.assign(spectrum.size(), 0.0);
            for (size_t i = 0; i < spectrum.size(); ++i) mean_spectrum[i] += spectrum[i];
        }
        for (double& v : mean_spectrum) v /= n_seeds;
        const double dist = wasserstein_1d(mean_spectrum, target_dist);
        if (first || dist < best_dist) {
            first = false;
            best_dist = dist;
            best_param = param;
        }
    }
    return best_param;
}

}  // namespace sec
