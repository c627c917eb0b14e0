#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "sec/corpus.hpp"
#include "sec/errors.hpp"
#include "sec/image.hpp"
#include "sec/model.hpp"
#include "sec/train.hpp"

using namespace sec;

namespace {

ModelConfig tiny_config(Architecture a, uint64_t seed) {
    ModelConfig cfg;
    cfg.architecture = a;
    cfg.hidden_depth = 2;
    cfg.hidden_width = 16;
    cfg.freq_param = default_freq_param(a);
    cfg.out_channels = 3;
    cfg.seed = seed;
    return cfg;
}

// Network whose every parameter is zero except the head biases.
Network constant_net(const double (&bias)[3]) {
    Network net = init_network(tiny_config(Architecture::siren, 11));
    std::vector<double> theta(net.parameter_count(), 0.0);
    const Layer& head = net.layers.back();
    const size_t head_bias_at = theta.size() - head.b.size();
    for (int ch = 0; ch < 3; ++ch) theta[head_bias_at + ch] = bias[ch];
    net.unflatten_parameters(theta);
    return net;
}

}  // namespace

TEST_CASE("train rejects invalid configurations") {
    const Network net = init_network(tiny_config(Architecture::siren, 0));
    const Image target = Image::zeros(3, 4, 4);

    TrainConfig cfg;
    cfg.steps = 0;
    CHECK_THROWS_AS(train(net, target, cfg), DataError);

    cfg = TrainConfig{};
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(train(net, target, cfg), DataError);
    cfg.learning_rate = -1e-3;
    CHECK_THROWS_AS(train(net, target, cfg), DataError);

    cfg = TrainConfig{};
    cfg.log_every = 0;
    CHECK_THROWS_AS(train(net, target, cfg), DataError);
}

TEST_CASE("a single step applies exactly one update and logs start plus end") {
    const Network net = init_network(tiny_config(Architecture::siren, 21));
    const Image target = white_noise(3, 4, 4, 77);
    TrainConfig cfg;
    cfg.steps = 1;
    cfg.log_every = 100;

    const TrainResult res = train(net, target, cfg);
    REQUIRE(res.trace.entries.size() == 2);
    CHECK(res.trace.entries[0].step == 0);
    CHECK(res.trace.entries[1].step == 1);
    CHECK(res.net.flatten_parameters() != net.flatten_parameters());
}

TEST_CASE("trace covers step 0, every log_every, and the final step once") {
    const Network net = init_network(tiny_config(Architecture::siren, 22));
    const Image target = white_noise(3, 4, 4, 78);
    TrainConfig cfg;
    cfg.learning_rate = 1e-4;

    SUBCASE("final step not on the logging grid") {
        cfg.steps = 10;
        cfg.log_every = 4;
        const TrainResult res = train(net, target, cfg);
        std::vector<int> steps;
        for (const TraceEntry& e : res.trace.entries) steps.push_back(e.step);
        CHECK(steps == std::vector<int>{0, 4, 8, 10});
    }
    SUBCASE("final step on the logging grid is logged once") {
        cfg.steps = 8;
        cfg.log_every = 4;
        const TrainResult res = train(net, target, cfg);
        std::vector<int> steps;
        for (const TraceEntry& e : res.trace.entries) steps.push_back(e.step);
        CHECK(steps == std::vector<int>{0, 4, 8});
    }
}

TEST_CASE("a network that already matches the target is a bitwise no-op under training") {
    const double bias[3] = {0.25, 0.5, 0.75};
    const Network net = constant_net(bias);

    Image target = Image::zeros(3, 6, 6);
    for (int ch = 0; ch < 3; ++ch)
        for (int p = 0; p < 36; ++p) target.data[static_cast<size_t>(ch) * 36 + p] = bias[ch];

    TrainConfig cfg;
    cfg.steps = 5;
    cfg.log_every = 2;
    const TrainResult res = train(net, target, cfg);

    CHECK(res.net.flatten_parameters() == net.flatten_parameters());
    for (const TraceEntry& e : res.trace.entries) {
        CHECK(e.loss == 0.0);
        CHECK(e.psnr == std::numeric_limits<double>::infinity());
    }
}

TEST_CASE("training is bitwise reproducible") {
    const Network net = init_network(tiny_config(Architecture::finer, 31));
    const Image target = gaussian_blur(white_noise(3, 8, 8, 55), 1.0);
    TrainConfig cfg;
    cfg.steps = 40;
    cfg.log_every = 10;

    const TrainResult a = train(net, target, cfg);
    const TrainResult b = train(net, target, cfg);
    CHECK(a.net.flatten_parameters() == b.net.flatten_parameters());
    REQUIRE(a.trace.entries.size() == b.trace.entries.size());
    for (size_t i = 0; i < a.trace.entries.size(); ++i) {
        CHECK(a.trace.entries[i].step == b.trace.entries[i].step);
        CHECK(a.trace.entries[i].loss == b.trace.entries[i].loss);
        CHECK(a.trace.entries[i].psnr == b.trace.entries[i].psnr);
    }
}

TEST_CASE("train leaves the input network untouched") {
    const Network net = init_network(tiny_config(Architecture::siren, 41));
    const std::vector<double> before = net.flatten_parameters();
    const Image target = white_noise(3, 4, 4, 99);
    TrainConfig cfg;
    cfg.steps = 3;
    (void)train(net, target, cfg);
    CHECK(net.flatten_parameters() == before);
}

TEST_CASE("adam first step moves each parameter by about the learning rate") {
    TrainConfig cfg;  // lr 1e-3, beta1 0.9, beta2 0.999, eps 1e-8
    std::vector<double> params(8, 0.0);
    const std::vector<double> grad = {0.5, -0.25, 1.0, -1.0, 0.05, 2.0, -3.0, 0.9};
    AdamState state;
    adam_step(params, grad, state, cfg);

    CHECK(state.t == 1);
    for (size_t i = 0; i < params.size(); ++i) {
        // m-hat = g, v-hat = g^2, so the update is lr*g/(|g|+eps') ~ lr*sign(g).
        CHECK(std::fabs(params[i]) == doctest::Approx(cfg.learning_rate).epsilon(1e-6));
        CHECK(std::signbit(params[i]) == std::signbit(-grad[i]));
    }
}

TEST_CASE("adam moments decay by beta under a zero gradient") {
    TrainConfig cfg;
    std::vector<double> params(4, 1.0);
    const std::vector<double> g1 = {0.3, -0.7, 1.5, -2.0};
    const std::vector<double> g0(4, 0.0);
    AdamState state;
    adam_step(params, g1, state, cfg);
    const std::vector<double> m1 = state.m, v1 = state.v;
    adam_step(params, g0, state, cfg);

    CHECK(state.t == 2);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(state.m[i] == cfg.beta1 * m1[i]);
        CHECK(state.v[i] == cfg.beta2 * v1[i]);
    }
}

TEST_CASE("trace psnr is exactly -10*log10(loss)") {
    const Network net = init_network(tiny_config(Architecture::siren, 51));
    const Image target = gaussian_blur(white_noise(3, 8, 8, 13), 1.0);
    TrainConfig cfg;
    cfg.steps = 30;
    cfg.log_every = 10;
    const TrainResult res = train(net, target, cfg);
    for (const TraceEntry& e : res.trace.entries) {
        REQUIRE(e.loss > 0.0);
        CHECK(e.psnr == -10.0 * std::log10(e.loss));
        CHECK(e.psnr == psnr_from_mse(e.loss));
    }
}

TEST_CASE("psnr_from_mse reference points") {
    CHECK(psnr_from_mse(1.0) == 0.0);
    CHECK(psnr_from_mse(0.01) == 20.0);
    CHECK(psnr_from_mse(0.0) == std::numeric_limits<double>::infinity());
    CHECK(psnr_from_mse(1e-4) > psnr_from_mse(1e-3));
}

TEST_CASE("short training on a smooth target reduces the loss") {
    ModelConfig mc = tiny_config(Architecture::siren, 61);
    mc.hidden_width = 32;
    const Network net = init_network(mc);
    const Image target = gaussian_blur(white_noise(3, 16, 16, 5), 2.0);
    TrainConfig cfg;
    cfg.steps = 150;
    cfg.log_every = 50;
    const TrainResult res = train(net, target, cfg);
    CHECK(res.trace.entries.back().loss < 0.5 * res.trace.entries.front().loss);
}

TEST_CASE("csv trace round-trips every value") {
    TrainTrace trace;
    trace.entries.push_back({0, 0.12345678901234567, psnr_from_mse(0.12345678901234567)});
    trace.entries.push_back({100, 3.0e-5, psnr_from_mse(3.0e-5)});
    trace.entries.push_back({250, 1.0 / 3.0, psnr_from_mse(1.0 / 3.0)});

    const std::string csv = trace_to_csv(trace);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "step,loss,psnr");
    for (const TraceEntry& e : trace.entries) {
        REQUIRE(std::getline(in, line));
        const size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
        REQUIRE(c1 != std::string::npos);
        REQUIRE(c2 != std::string::npos);
        CHECK(std::stoi(line.substr(0, c1)) == e.step);
        CHECK(std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr) == e.loss);
        CHECK(std::strtod(line.substr(c2 + 1).c_str(), nullptr) == e.psnr);
    }
    CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("an exploding run reports the step it diverged at") {
    const Network net = init_network(tiny_config(Architecture::fourier, 71));
    const Image target = white_noise(3, 8, 8, 7);
    TrainConfig cfg;
    cfg.steps = 50;
    cfg.learning_rate = 1e200;  // one update drives the ReLU stack to overflow

    try {
        (void)train(net, target, cfg);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("diverged at step") != std::string::npos);
    }
}
