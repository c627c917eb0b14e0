#include <doctest.h>

#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "sec/checkpoint.hpp"
#include "sec/errors.hpp"
#include "sec/image.hpp"
#include "sec/model.hpp"

using namespace sec;

namespace {

ModelConfig small_config(Architecture a) {
    ModelConfig cfg;
    cfg.architecture = a;
    cfg.hidden_depth = 2;
    cfg.hidden_width = 12;
    cfg.freq_param = default_freq_param(a);
    cfg.out_channels = 3;
    cfg.seed = 17;
    return cfg;
}

bool same_network(const Network& a, const Network& b) {
    return a.config.architecture == b.config.architecture &&
           a.config.hidden_depth == b.config.hidden_depth &&
           a.config.hidden_width == b.config.hidden_width &&
           a.config.freq_param == b.config.freq_param && a.config.wire_s0 == b.config.wire_s0 &&
           a.config.finer_bias_scale == b.config.finer_bias_scale &&
           a.config.out_channels == b.config.out_channels && a.config.seed == b.config.seed &&
           a.embedding == b.embedding && a.flatten_parameters() == b.flatten_parameters();
}

}  // namespace

TEST_CASE("checkpoints round-trip every architecture bit-exactly") {
    for (Architecture a : {Architecture::siren, Architecture::fourier, Architecture::wire,
                           Architecture::finer}) {
        Network net = init_network(small_config(a));

        // Perturb parameters away from init so the test is not satisfied by
        // re-running the initializer.
        std::vector<double> theta = net.flatten_parameters();
        for (size_t i = 0; i < theta.size(); ++i) theta[i] += 1e-3 * (1.0 + (i % 7));
        net.unflatten_parameters(theta);

        const Network back = checkpoint_from_json(checkpoint_to_json(net));
        CHECK(same_network(net, back));

        const Image r1 = render(net, 8, 8);
        const Image r2 = render(back, 8, 8);
        CHECK(r1.data == r2.data);
    }
}

TEST_CASE("checkpoint files round-trip through disk") {
    const std::string path = "ckpt_roundtrip_test.json";
    Network net = init_network(small_config(Architecture::wire));
    save_checkpoint(net, path);
    const Network back = load_checkpoint(path);
    std::remove(path.c_str());
    CHECK(same_network(net, back));
}

TEST_CASE("checkpoint rejects malformed documents") {
    CHECK_THROWS_AS(checkpoint_from_json("not json at all"), DataError);
    CHECK_THROWS_AS(checkpoint_from_json("{}"), DataError);
    CHECK_THROWS_AS(checkpoint_from_json(R"({"format_version": 999})"), DataError);

    const Network net = init_network(small_config(Architecture::siren));
    const std::string good = checkpoint_to_json(net);

    // Truncated parameter payload must be caught by the size check.
    std::string short_params = good;
    const size_t at = short_params.find("\"params\":[");
    REQUIRE(at != std::string::npos);
    const size_t comma = short_params.find(',', at + 10);
    REQUIRE(comma != std::string::npos);
    short_params.erase(at + 10, comma - (at + 10) + 1);
    CHECK_THROWS_AS(checkpoint_from_json(short_params), DataError);
}

TEST_CASE("checkpoint refuses non-finite parameters") {
    Network net = init_network(small_config(Architecture::siren));
    std::vector<double> theta = net.flatten_parameters();
    theta[3] = std::numeric_limits<double>::quiet_NaN();
    net.unflatten_parameters(theta);
    CHECK_THROWS_AS(checkpoint_to_json(net), NumericalError);
}

TEST_CASE("loading a missing file reports a data error") {
    CHECK_THROWS_AS(load_checkpoint("no_such_directory/nope.json"), DataError);
}
