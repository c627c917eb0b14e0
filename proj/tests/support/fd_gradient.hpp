#pragma once

// Central-difference gradient of the MSE training loss.  Independent of the
// analytic backward pass: only forward() and the loss formula are reused.

#include <cmath>
#include <vector>

#include "sec/image.hpp"
#include "sec/model.hpp"

namespace testsupport {

inline double mse_loss(const sec::Network& net, const sec::CoordGrid& coords,
                       const sec::Image& target) {
    const std::vector<double> out = sec::forward(net, coords, nullptr);
    const size_t n_px = coords.count();
    const int c = net.config.out_channels;
    double acc = 0.0;
    for (size_t p = 0; p < n_px; ++p)
        for (int ch = 0; ch < c; ++ch) {
            const double r = out[p * c + ch] - target.data[static_cast<size_t>(ch) * n_px + p];
            acc += r * r;
        }
    return acc / (static_cast<double>(n_px) * c);
}

inline std::vector<double> fd_gradient(const sec::Network& base, const sec::CoordGrid& coords,
                                       const sec::Image& target, double h = 1e-5) {
    sec::Network net = base;
    std::vector<double> theta = net.flatten_parameters();
    std::vector<double> grad(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) {
        const double orig = theta[i];
        theta[i] = orig + h;
        net.unflatten_parameters(theta);
        const double lp = mse_loss(net, coords, target);
        theta[i] = orig - h;
        net.unflatten_parameters(theta);
        const double lm = mse_loss(net, coords, target);
        theta[i] = orig;
        grad[i] = (lp - lm) / (2.0 * h);
    }
    return grad;
}

// Worst per-parameter mismatch; the floor keeps finite-difference noise on
// near-zero entries from dominating.
inline double max_rel_error(const std::vector<double>& analytic, const std::vector<double>& fd) {
    double worst = 0.0;
    for (size_t i = 0; i < analytic.size(); ++i) {
        const double denom = std::max(1e-6, std::fabs(fd[i]));
        worst = std::max(worst, std::fabs(analytic[i] - fd[i]) / denom);
    }
    return worst;
}

}  // namespace testsupport
