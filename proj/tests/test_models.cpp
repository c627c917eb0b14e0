#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sec/errors.hpp"
#include "sec/image.hpp"
#include "sec/model.hpp"
#include "sec/spectrum.hpp"

using namespace sec;

namespace {

const Architecture kAll[] = {Architecture::siren, Architecture::fourier, Architecture::wire,
                             Architecture::finer};

Network zeroed(Network net) {
    std::vector<double> theta(net.parameter_count(), 0.0);
    net.unflatten_parameters(theta);
    return net;
}

}  // namespace

TEST_CASE("config parsing and named sizes") {
    CHECK(parse_architecture("siren") == Architecture::siren);
    CHECK(parse_architecture("wire") == Architecture::wire);
    CHECK_THROWS_AS(parse_architecture("mlp"), DataError);
    CHECK(std::string(name(Architecture::finer)) == "finer");

    CHECK(named_size("S").hidden_depth == 2);
    CHECK(named_size("S").hidden_width == 128);
    CHECK(named_size("M").hidden_depth == 3);
    CHECK(named_size("M").hidden_width == 256);
    CHECK(named_size("L").hidden_depth == 4);
    CHECK(named_size("L").hidden_width == 512);
    CHECK_THROWS_AS(named_size("XL"), DataError);

    const ModelConfig cfg = make_config(Architecture::wire, "M");
    CHECK(cfg.hidden_depth == 3);
    CHECK(cfg.hidden_width == 256);
    CHECK(cfg.freq_param == 10.0);  // architecture default
    CHECK(make_config(Architecture::siren, "S", 60.0).freq_param == 60.0);
    CHECK(make_config(Architecture::fourier, "S").freq_param == 1.0);
    CHECK(make_config(Architecture::finer, "S").freq_param == 30.0);
}

TEST_CASE("init_network rejects invalid configs") {
    ModelConfig cfg = make_config(Architecture::siren, "S");
    cfg.freq_param = 0.0;
    CHECK_THROWS_AS(init_network(cfg), DataError);
    cfg = make_config(Architecture::siren, "S");
    cfg.hidden_depth = 0;
    CHECK_THROWS_AS(init_network(cfg), DataError);
}

TEST_CASE("initialization is deterministic per (config, seed)") {
    for (Architecture a : kAll) {
        ModelConfig cfg = make_config(a, "S", 0.0, 3, 42);
        const std::vector<double> p1 = init_network(cfg).flatten_parameters();
        const std::vector<double> p2 = init_network(cfg).flatten_parameters();
        REQUIRE(p1.size() == p2.size());
        for (size_t i = 0; i < p1.size(); ++i) CHECK(p1[i] == p2[i]);

        cfg.seed = 43;
        const std::vector<double> p3 = init_network(cfg).flatten_parameters();
        bool differs = false;
        for (size_t i = 0; i < p1.size() && !differs; ++i) differs = p1[i] != p3[i];
        CHECK(differs);
        for (double v : p1) CHECK(std::isfinite(v));
    }
}

TEST_CASE("siren first-layer weights stay within the 1/fan_in bound") {
    const Network net = init_network(make_config(Architecture::siren, "S", 0.0, 3, 5));
    const Layer& l0 = net.layers.front();
    REQUIRE(l0.fan_in == 2);
    double max_abs = 0.0;
    for (double w : l0.w) {
        CHECK(std::fabs(w) <= 0.5);
        max_abs = std::max(max_abs, std::fabs(w));
    }
    CHECK(max_abs > 0.4);  // 256 draws from U(-0.5, 0.5) reach the edges
}

TEST_CASE("layer shapes chain and parameters flatten round-trip") {
    for (Architecture a : kAll) {
        Network net = init_network(make_config(a, "S", 0.0, 3, 9));
        const Layer& head = net.layers.back();
        CHECK(head.activation == Activation::linear);
        CHECK(head.fan_out == 3);
        CHECK_FALSE(head.complex_data);
        for (size_t i = 1; i < net.layers.size(); ++i) {
            const Layer& prev = net.layers[i - 1];
            CHECK(net.layers[i].fan_in == prev.fan_out);
        }

        std::vector<double> theta = net.flatten_parameters();
        REQUIRE(theta.size() == net.parameter_count());
        for (double& v : theta) v += 0.125;
        net.unflatten_parameters(theta);
        const std::vector<double> again = net.flatten_parameters();
        for (size_t i = 0; i < theta.size(); ++i) CHECK(again[i] == theta[i]);
    }
}

TEST_CASE("zero-weight network outputs the head bias everywhere") {
    Network net = zeroed(init_network(make_config(Architecture::siren, "S", 0.0, 3, 1)));
    Layer& head = net.layers.back();
    head.b = {0.25, 0.5, 0.75};
    const Image img = render(net, 16, 16);
    for (int c = 0; c < 3; ++c)
        for (size_t p = 0; p < img.pixel_count(); ++p)
            CHECK(img.data[c * img.pixel_count() + p] == head.b[c]);
}

TEST_CASE("hand-built one-hidden-layer siren evaluates sin(pi*x)") {
    Network net;
    net.config = make_config(Architecture::siren, "S", std::numbers::pi, 1, 0);

    Layer l0;
    l0.fan_in = 2;
    l0.fan_out = 1;
    l0.activation = Activation::sine;
    l0.scale = std::numbers::pi;
    l0.w = {1.0, 0.0};
    l0.b = {0.0};

    Layer head;
    head.fan_in = 1;
    head.fan_out = 1;
    head.activation = Activation::linear;
    head.scale = 1.0;
    head.w = {1.0};
    head.b = {0.0};

    net.layers = {l0, head};

    const CoordGrid grid = pixel_center_grid(8, 8);
    const std::vector<double> out = forward(net, grid, nullptr);
    REQUIRE(out.size() == grid.count());
    for (size_t p = 0; p < grid.count(); ++p) {
        const double x = grid.pts[2 * p];
        CHECK(out[p] == doctest::Approx(std::sin(std::numbers::pi * x)).epsilon(1e-12));
    }
}

TEST_CASE("forward is pure and render is repeatable") {
    for (Architecture a : kAll) {
        const Network net = init_network(make_config(a, "S", 0.0, 3, 77));
        const CoordGrid grid = pixel_center_grid(9, 7);
        const std::vector<double> o1 = forward(net, grid, nullptr);
        ForwardTrace trace;
        const std::vector<double> o2 = forward(net, grid, &trace);
        REQUIRE(o1.size() == o2.size());
        for (size_t i = 0; i < o1.size(); ++i) CHECK(o1[i] == o2[i]);

        const Image r1 = render(net, 12, 10);
        const Image r2 = render(net, 12, 10);
        for (size_t i = 0; i < r1.data.size(); ++i) CHECK(r1.data[i] == r2.data[i]);
        for (double v : r1.data) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("wire stores complex pairs internally and renders real values") {
    const Network net = init_network(make_config(Architecture::wire, "S", 0.0, 3, 3));
    for (size_t i = 0; i + 1 < net.layers.size(); ++i) {
        CHECK(net.layers[i].complex_data);
        CHECK(net.layers[i].w.size() ==
              2u * static_cast<size_t>(net.layers[i].fan_out) * net.layers[i].fan_in);
    }
    CHECK_FALSE(net.layers.back().complex_data);

    const CoordGrid grid = pixel_center_grid(6, 6);
    ForwardTrace trace;
    const std::vector<double> out = forward(net, grid, &trace);
    CHECK(out.size() == grid.count() * 3);
    CHECK(trace.wire_re.size() == grid.count() * net.config.hidden_width);
    for (double v : out) CHECK(std::isfinite(v));
}

TEST_CASE("forward rejects mismatched coordinate dimensionality") {
    Network net = init_network(make_config(Architecture::siren, "S", 0.0, 3, 0));
    net.layers.front().fan_in = 3;  // corrupt the chain
    net.layers.front().w.resize(3 * net.layers.front().fan_out);
    const CoordGrid grid = pixel_center_grid(4, 4);
    CHECK_THROWS_AS(forward(net, grid, nullptr), DataError);
}

TEST_CASE("model_sec with one seed returns that sample; omega raises siren SEC") {
    const ModelConfig cfg = make_config(Architecture::siren, "S", 30.0, 3, 11);
    const ModelSecResult one = model_sec(cfg, 1, 32, 32);
    REQUIRE(one.per_seed.size() == 1);
    CHECK(one.mean_sec == one.per_seed[0]);

    const ModelConfig lo = make_config(Architecture::siren, "M", 10.0, 3, 0);
    const ModelConfig hi = make_config(Architecture::siren, "M", 90.0, 3, 0);
    const double sec_lo = model_sec(lo, 3, 64, 64).mean_sec;
    const double sec_hi = model_sec(hi, 3, 64, 64).mean_sec;
    CHECK(sec_hi > sec_lo);
}

TEST_CASE("width 64 vs 512 changes siren/fourier model SEC by <25%") {
    for (Architecture a : {Architecture::siren, Architecture::fourier}) {
        ModelConfig narrow = make_config(a, "M", 0.0, 3, 0);
        narrow.hidden_width = 64;
        ModelConfig wide = narrow;
        wide.hidden_width = 512;
        const double s_narrow = model_sec(narrow, 10, 64, 64).mean_sec;
        const double s_wide = model_sec(wide, 10, 64, 64).mean_sec;
        REQUIRE(s_narrow > 0.0);
        CHECK(std::fabs(s_wide - s_narrow) / s_narrow < 0.25);
    }
}

TEST_CASE("activation_stats: zero-weight network has zero variance") {
    const Network net = zeroed(init_network(make_config(Architecture::siren, "S", 0.0, 3, 2)));
    const CoordGrid grid = pixel_center_grid(8, 8);
    for (const LayerStats& s : activation_stats(net, grid)) {
        CHECK(s.pre_variance == 0.0);
        CHECK(s.post_variance == 0.0);
        CHECK(s.pre_hist.size() == 64);
        CHECK(s.post_hist.size() == 64);
    }
}

TEST_CASE("siren hidden pre-activation variance sits near 1") {
    for (uint64_t seed : {0ull, 1ull, 2ull}) {
        const Network net = init_network(make_config(Architecture::siren, "M", 30.0, 3, seed));
        const CoordGrid grid = pixel_center_grid(64, 64);
        const std::vector<LayerStats> stats = activation_stats(net, grid);
        REQUIRE(stats.size() == 3);  // hidden sine layers only
        for (size_t li = 1; li < stats.size(); ++li) {
            CHECK(stats[li].pre_variance > 0.7);
            CHECK(stats[li].pre_variance < 1.3);
        }
    }
}

TEST_CASE("finer pre-activation variance is larger at width 128 than 512") {
    auto mean_hidden_pre_variance = [](int width, uint64_t seed) {
        ModelConfig cfg = make_config(Architecture::finer, "M", 30.0, 3, seed);
        cfg.hidden_width = width;
        const Network net = init_network(cfg);
        const std::vector<LayerStats> stats =
            activation_stats(net, pixel_center_grid(32, 32));
        double acc = 0.0;
        size_t n = 0;
        for (size_t li = 1; li < stats.size(); ++li) {
            acc += stats[li].pre_variance;
            ++n;
        }
        return acc / n;
    };
    for (uint64_t seed : {0ull, 7ull, 21ull})
        CHECK(mean_hidden_pre_variance(128, seed) > mean_hidden_pre_variance(512, seed));
}

TEST_CASE("histograms cover the observed range") {
    const Network net = init_network(make_config(Architecture::siren, "S", 30.0, 3, 4));
    const CoordGrid grid = pixel_center_grid(16, 16);
    for (const LayerStats& s : activation_stats(net, grid)) {
        double pre_total = 0.0, post_total = 0.0;
        for (double h : s.pre_hist) pre_total += h;
        for (double h : s.post_hist) post_total += h;
        CHECK(pre_total == doctest::Approx(grid.count() * 128.0));
        CHECK(post_total == pre_total);
        CHECK(s.pre_min <= s.pre_max);
        CHECK(s.post_min >= -1.0);  // sine outputs
        CHECK(s.post_max <= 1.0);
    }
}
