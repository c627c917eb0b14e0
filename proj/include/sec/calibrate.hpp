#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sec/corpus.hpp"
#include "sec/image.hpp"
#include "sec/model.hpp"
#include "sec/spectrum.hpp"
#include "sec/train.hpp"

namespace sec {

struct ParamGrid {
    Architecture architecture = Architecture::siren;
    std::vector<double> values;
};

// Candidate frequency parameters per architecture: omega_s 30..110 step 10,
// sigma 1..9, omega_w {1,5,10,15,20,25,30}, omega_f 10..100 step 10.
ParamGrid default_grid(Architecture a);
void validate_grid(const ParamGrid& grid);

struct CalibrationEntry {
    std::string image_id;
    double sec = 0.0;
    double best_param = 0.0;
    double best_psnr = 0.0;
};

struct CalibrationSet {
    Architecture architecture = Architecture::siren;
    std::string size = "S";
    SecVariant variant;
    std::vector<CalibrationEntry> entries;
};

std::string calibration_to_json(const CalibrationSet& calib);
CalibrationSet calibration_from_json(const std::string& text);
void save_calibration(const CalibrationSet& calib, const std::string& path);
CalibrationSet load_calibration(const std::string& path);

// One grid-search cell: train architecture/size at grid value `param` with
// model seed train_cfg.seed + seed_idx against one image.
struct CalibCellResult {
    size_t image_idx = 0;
    size_t param_idx = 0;
    int seed_idx = 0;
    double psnr = 0.0;
    bool diverged = false;
    std::string diagnostic;
};

struct CalibDiagnostics {
    std::vector<std::string> diverged_cells;
    std::vector<std::string> rejected_images;
};

size_t calibration_cell_count(size_t n_images, size_t n_params, int n_seeds);
CalibCellResult run_calibration_cell(size_t cell, const std::vector<CorpusImage>& images,
                                     const ParamGrid& grid, const std::string& size,
                                     const TrainConfig& train_cfg, int n_seeds);

// Order-independent reduction of cell results into per-image best parameters
// (argmax of seed-mean PSNR, ties toward the smaller parameter).
CalibrationSet reduce_calibration(const std::vector<CorpusImage>& images, const ParamGrid& grid,
                                  const std::string& size, const SecVariant& variant,
                                  const std::vector<CalibCellResult>& cells, int n_seeds,
                                  CalibDiagnostics* diag);

// Full offline grid search: cells run on `workers` threads, results assembled
// deterministically.  Diverged cells are dropped; an image whose every cell
// diverged is rejected (recorded in diag).
CalibrationSet build_calibration_set(const std::vector<CorpusImage>& images,
                                     const ParamGrid& grid, const std::string& size,
                                     const TrainConfig& train_cfg, int n_seeds = 1,
                                     const SecVariant& variant = {}, int workers = 0,
                                     CalibDiagnostics* diag = nullptr);

// Nearest-neighbor lookup by SEC; ties resolve toward the smaller stored SEC.
double sec_conf_select_value(const CalibrationSet& calib, double target_sec);
double sec_conf_select(const CalibrationSet& calib, const Image& target);

struct MatchResult {
    double matched_param = 0.0;
    double sec_error = 0.0;
    bool grid_exhausted = false;  // reference SEC outside the candidate SEC range
    double ref_sec = 0.0;
    std::vector<std::pair<double, double>> table;  // (param, mean model SEC)
};

std::string match_to_json(const MatchResult& match, const ParamGrid& grid);

// Chooses the target architecture's parameter whose mean untrained-model SEC
// is closest to the reference model's; ties toward the smaller parameter.
// Candidate networks share the reference seed base.
MatchResult frequency_match(const ModelConfig& ref, Architecture target_arch,
                            const std::string& target_size, const ParamGrid& grid,
                            int n_seeds = 10, int render_height = 256, int render_width = 256,
                            const SecVariant& variant = {});

// W1 distance between two L1-normalized radial distributions via summed
// CDF differences; the shorter vector is zero-padded.
double wasserstein_1d(const std::vector<double>& p, const std::vector<double>& q);

// FreSh-style selection: per candidate, average the L1-normalized magnitude
// spectra (DC excluded) of n_seeds untrained renders and pick the candidate
// minimizing W1 to the target's normalized spectrum; ties toward the smaller
// parameter.  render dims 0 mean "use the target's resolution".
double fresh_select(const Image& target, const ModelConfig& base, const ParamGrid& grid,
                    int n_seeds = 5, int render_height = 0, int render_width = 0);

}  // namespace sec
