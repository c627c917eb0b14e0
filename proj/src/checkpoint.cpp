#include "sec/checkpoint.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "sec/errors.hpp"
#include "sec/version.hpp"

namespace sec {

using nlohmann::json;

std::string checkpoint_to_json(const Network& net) {
    for (const Layer& l : net.layers) {
        for (double v : l.w)
            if (!std::isfinite(v)) throw NumericalError("checkpoint: non-finite weight");
        for (double v : l.b)
            if (!std::isfinite(v)) throw NumericalError("checkpoint: non-finite bias");
    }
    const ModelConfig& c = net.config;
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["library_version"] = kVersion;
    doc["config"] = {
        {"architecture", name(c.architecture)},
        {"hidden_depth", c.hidden_depth},
        {"hidden_width", c.hidden_width},
        {"freq_param", c.freq_param},
        {"wire_s0", c.wire_s0},
        {"finer_bias_scale", c.finer_bias_scale},
        {"out_channels", c.out_channels},
        {"seed", c.seed},
    };
    doc["embedding"] = net.embedding;
    doc["params"] = net.flatten_parameters();
    return doc.dump();
}

Network checkpoint_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("checkpoint: invalid JSON: ") + e.what());
    }
    try {
        if (doc.at("format_version").get<int>() != kFormatVersion)
            throw DataError("checkpoint: unsupported format_version");
        const json& jc = doc.at("config");
        ModelConfig cfg;
        cfg.architecture = parse_architecture(jc.at("architecture").get<std::string>());
        cfg.hidden_depth = jc.at("hidden_depth").get<int>();
        cfg.hidden_width = jc.at("hidden_width").get<int>();
        cfg.freq_param = jc.at("freq_param").get<double>();
        cfg.wire_s0 = jc.at("wire_s0").get<double>();
        cfg.finer_bias_scale = jc.at("finer_bias_scale").get<double>();
        cfg.out_channels = jc.at("out_channels").get<int>();
        cfg.seed = jc.at("seed").get<uint64_t>();

        // init_network rebuilds the layer shapes; stored values then replace
        // every parameter, including the non-trainable embedding.
        Network net = init_network(cfg);
        const auto embedding = doc.at("embedding").get<std::vector<double>>();
        if (embedding.size() != net.embedding.size())
            throw DataError("checkpoint: embedding size mismatch");
        net.embedding = embedding;
        const auto params = doc.at("params").get<std::vector<double>>();
        if (params.size() != net.parameter_count())
            throw DataError("checkpoint: parameter count mismatch");
        net.unflatten_parameters(params);
        return net;
    } catch (const json::exception& e) {
        throw DataError(std::string("checkpoint: malformed document: ") + e.what());
    }
}

void save_checkpoint(const Network& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("checkpoint: cannot open for writing: " + path);
    out << checkpoint_to_json(net);
    if (!out.good()) throw DataError("checkpoint: write failed: " + path);
}

Network load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("checkpoint: cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return checkpoint_from_json(text);
}

}  // namespace sec
