#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sec/image.hpp"
#include "sec/model.hpp"

namespace sec {

struct TrainConfig {
    int steps = 2000;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    int log_every = 100;
    uint64_t seed = 0;  // recorded in manifests; full-batch training draws nothing
};

// First and second Adam moments plus the step counter driving bias correction.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    int64_t t = 0;
};

void adam_step(std::vector<double>& params, const std::vector<double>& grad, AdamState& state,
               const TrainConfig& cfg);

struct TraceEntry {
    int step;     // number of updates applied when the loss was measured
    double loss;  // MSE on raw (unclamped) outputs
    double psnr;  // always -10*log10(loss)
};

struct TrainTrace {
    std::vector<TraceEntry> entries;
};

// -10*log10(mse); identical inputs give +infinity.
double psnr_from_mse(double mse);

// "step,loss,psnr" rows; psnr printed with enough digits to round-trip.
std::string trace_to_csv(const TrainTrace& trace);

struct TrainResult {
    Network net;
    TrainTrace trace;
};

// Full-batch Adam on the MSE between the network render (unclamped) and
// target.  Logs at step 0, every log_every updates, and at the final step.
// Throws NumericalError with the step index if the loss stops being finite.
TrainResult train(const Network& net, const Image& target, const TrainConfig& cfg);

}  // namespace sec
