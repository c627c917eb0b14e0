#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sec/image.hpp"
#include "sec/spectrum.hpp"

namespace sec {

enum class Architecture { siren, fourier, wire, finer };

Architecture parse_architecture(const std::string& s);
const char* name(Architecture a);

// Conventional frequency parameter used when no explicit value is given:
// omega_s=30 (siren), sigma=1 (fourier), omega_w=10 (wire), omega_f=30 (finer).
double default_freq_param(Architecture a);

struct ModelConfig {
    Architecture architecture = Architecture::siren;
    int hidden_depth = 3;   // number of hidden layers
    int hidden_width = 256; // units per hidden layer
    double freq_param = 30.0;
    double wire_s0 = 10.0;
    double finer_bias_scale = 1.0;
    int out_channels = 3;
    uint64_t seed = 0;
};

// Named sizes: S=(2x128), M=(3x256), L=(4x512) as (hidden_depth x hidden_width).
struct NamedSize {
    int hidden_depth = 0;
    int hidden_width = 0;
};
NamedSize named_size(const std::string& s);

// Config for an architecture at a named size; freq_param <= 0 selects the
// architecture default.
ModelConfig make_config(Architecture a, const std::string& size, double freq_param = 0.0,
                        int out_channels = 3, uint64_t seed = 0);

enum class Activation { linear, sine, finer_sine, relu, gabor };

struct Layer {
    int fan_in = 0;
    int fan_out = 0;
    bool complex_data = false;  // weights/bias/values are interleaved re/im pairs
    Activation activation = Activation::linear;
    double scale = 1.0;    // sine frequency (sine/finer_sine) or omega_w (gabor)
    double gabor_s0 = 0.0; // gaussian envelope scale (gabor only)
    std::vector<double> w; // [fan_out][fan_in] (x2 doubles when complex)
    std::vector<double> b; // [fan_out] (x2 when complex)

    size_t param_count() const { return w.size() + b.size(); }
};

struct Network {
    ModelConfig config;
    // fourier only: fixed (non-trainable) embedding frequencies, [256][2]
    // row-major; the feature vector is [sin(2*pi*Bx), cos(2*pi*Bx)].
    std::vector<double> embedding;
    std::vector<Layer> layers;

    // Trainable parameters only (the embedding is frozen by construction).
    size_t parameter_count() const;
    std::vector<double> flatten_parameters() const;
    void unflatten_parameters(std::span<const double> flat);
};

// Deterministic: identical (config) including seed gives bit-identical
// parameters.  Throws DataError on invalid fields.
Network init_network(const ModelConfig& config);

// Per-layer activation caches captured during forward, consumed by backward.
struct ForwardTrace {
    std::vector<double> input0;             // first layer input ([px][2] real or complexified)
    std::vector<std::vector<double>> post;  // activation outputs per layer
    std::vector<std::vector<double>> jac;   // real: da/dz; gabor: 2x2 Jacobian per unit
    std::vector<double> wire_re;            // real parts feeding the output head
};

// Evaluate the network on every grid point; returns [pixel][channel],
// row-major.  Pass a trace to capture what backward needs.
std::vector<double> forward(const Network& net, const CoordGrid& coords,
                            ForwardTrace* trace = nullptr);

// Unclamped evaluation arranged as an image buffer (for losses) ...
std::vector<double> render_raw(const Network& net, const CoordGrid& coords);
// ... and the [0,1]-clamped Image used for SEC and quality metrics.
Image render(const Network& net, int height, int width);

struct LossGrad {
    double loss = 0.0;               // MSE over all pixels and channels
    std::vector<double> grad;        // d(loss)/d(theta), flatten_parameters order
};

// Analytic gradient of the MSE between forward(net) and target.  Non-finite
// intermediates raise NumericalError naming the offending layer.
LossGrad loss_gradient(const Network& net, const CoordGrid& coords, const Image& target);

struct ModelSecResult {
    double mean_sec = 0.0;
    std::vector<double> per_seed;
};

// SEC of untrained renders across seeds config.seed .. config.seed+n_seeds-1.
ModelSecResult model_sec(const ModelConfig& config, int n_seeds = 10, int render_height = 256,
                         int render_width = 256, const SecVariant& variant = {});

struct LayerStats {
    double pre_variance = 0.0;   // variance of nonlinearity inputs (sine argument)
    double post_variance = 0.0;  // variance of activation outputs
    double pre_min = 0.0, pre_max = 0.0;
    double post_min = 0.0, post_max = 0.0;
    std::vector<double> pre_hist;   // 64 uniform bins over [pre_min, pre_max]
    std::vector<double> post_hist;
};

// Distribution probes for every non-final layer.  For gabor layers, real and
// imaginary parts are pooled into one distribution.
std::vector<LayerStats> activation_stats(const Network& net, const CoordGrid& coords);

}  // namespace sec
