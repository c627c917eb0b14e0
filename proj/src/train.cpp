#include "sec/train.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>

#include "sec/errors.hpp"
#include "sec/kernels.hpp"

namespace sec {

void adam_step(std::vector<double>& params, const std::vector<double>& grad, AdamState& state,
               const TrainConfig& cfg) {
    assert(params.size() == grad.size());
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
    }
    assert(state.m.size() == params.size() && state.v.size() == params.size());
    state.t += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
    kernels::adam_update(params.data(), state.m.data(), state.v.data(), grad.data(),
                         params.size(), cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps, bc1,
                         bc2);
}

double psnr_from_mse(double mse) {
    assert(mse >= 0.0);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return -10.0 * std::log10(mse);
}

std::string trace_to_csv(const TrainTrace& trace) {
    std::string out = "step,loss,psnr\n";
    char row[96];
    for (const TraceEntry& e : trace.entries) {
        std::snprintf(row, sizeof(row), "%d,%.17g,%.17g\n", e.step, e.loss, e.psnr);
        out += row;
    }
    return out;
}

TrainResult train(const Network& net, const Image& target, const TrainConfig& cfg) {
    if (cfg.steps < 1) throw DataError("train: steps must be >= 1");
    if (!(cfg.learning_rate > 0.0)) throw DataError("train: learning_rate must be positive");
    if (cfg.log_every < 1) throw DataError("train: log_every must be >= 1");

    TrainResult res;
    res.net = net;
    const CoordGrid grid = pixel_center_grid(target.height, target.width);

    std::vector<double> params = res.net.flatten_parameters();
    AdamState state;

    auto log_entry = [&](int step, double loss) {
        res.trace.entries.push_back({step, loss, psnr_from_mse(loss)});
    };

    for (int step = 0; step < cfg.steps; ++step) {
        LossGrad lg;
        try {
            lg = loss_gradient(res.net, grid, target);
        } catch (const NumericalError& e) {
            throw NumericalError("train: diverged at step " + std::to_string(step) + ": " +
                                 e.what());
        }
        if (step % cfg.log_every == 0) log_entry(step, lg.loss);
        adam_step(params, lg.grad, state, cfg);
        res.net.unflatten_parameters(params);
    }

    // Loss after the final update, so the trace ends at the delivered network.
    double final_loss;
    try {
        final_loss = loss_gradient(res.net, grid, target).loss;
    } catch (const NumericalError& e) {
        throw NumericalError("train: diverged at step " + std::to_string(cfg.steps) + ": " +
                             e.what());
    }
    log_entry(cfg.steps, final_loss);
    return res;
}

}  // namespace sec
