#include "sec/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <utility>

#include "sec/errors.hpp"
#include "sec/kernels.hpp"
#include "sec/rng.hpp"

namespace sec {
namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
constexpr int kFourierFreqs = 256;   // embedding rows; feature width is 2x this
constexpr double kHiddenOmega = 30.0;  // internal sine scale for siren/finer

void check_finite(const std::vector<double>& v, const char* stage, int layer_idx) {
    for (double x : v)
        if (!std::isfinite(x))
            throw NumericalError(std::string(stage) + ": non-finite value in layer " +
                                 std::to_string(layer_idx));
}

}  // namespace

Architecture parse_architecture(const std::string& s) {
    if (s == "siren") return Architecture::siren;
    if (s == "fourier") return Architecture::fourier;
    if (s == "wire") return Architecture::wire;
    if (s == "finer") return Architecture::finer;
    throw DataError("unknown architecture '" + s + "' (expected siren|fourier|wire|finer)");
}

const char* name(Architecture a) {
    switch (a) {
        case Architecture::siren: return "siren";
        case Architecture::fourier: return "fourier";
        case Architecture::wire: return "wire";
        case Architecture::finer: return "finer";
    }
    return "?";
}

double default_freq_param(Architecture a) {
    switch (a) {
        case Architecture::siren: return 30.0;
        case Architecture::fourier: return 1.0;
        case Architecture::wire: return 10.0;
        case Architecture::finer: return 30.0;
    }
    return 0.0;
}

NamedSize named_size(const std::string& s) {
    if (s == "S") return {2, 128};
    if (s == "M") return {3, 256};
    if (s == "L") return {4, 512};
    throw DataError("unknown size '" + s + "' (expected S|M|L)");
}

ModelConfig make_config(Architecture a, const std::string& size, double freq_param,
                        int out_channels, uint64_t seed) {
    const NamedSize ns = named_size(size);
    ModelConfig cfg;
    cfg.architecture = a;
    cfg.hidden_depth = ns.hidden_depth;
    cfg.hidden_width = ns.hidden_width;
    cfg.freq_param = freq_param > 0.0 ? freq_param : default_freq_param(a);
    cfg.out_channels = out_channels;
    cfg.seed = seed;
    return cfg;
}

size_t Network::parameter_count() const {
    size_t n = 0;
    for (const Layer& l : layers) n += l.param_count();
    return n;
}

std::vector<double> Network::flatten_parameters() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const Layer& l : layers) {
        flat.insert(flat.end(), l.w.begin(), l.w.end());
        flat.insert(flat.end(), l.b.begin(), l.b.end());
    }
    return flat;
}

void Network::unflatten_parameters(std::span<const double> flat) {
    if (flat.size() != parameter_count())
        throw DataError("unflatten_parameters: size mismatch");
    size_t off = 0;
    for (Layer& l : layers) {
        std::copy(flat.begin() + off, flat.begin() + off + l.w.size(), l.w.begin());
        off += l.w.size();
        std::copy(flat.begin() + off, flat.begin() + off + l.b.size(), l.b.begin());
        off += l.b.size();
    }
}

namespace {

void fill_uniform(Rng& rng, std::vector<double>& v, double bound) {
    for (double& x : v) x = rng.uniform(-bound, bound);
}

Layer make_layer(int fan_in, int fan_out, bool complex_data, Activation act,
                 double scale, double gabor_s0) {
    Layer l;
    l.fan_in = fan_in;
    l.fan_out = fan_out;
    l.complex_data = complex_data;
    l.activation = act;
    l.scale = scale;
    l.gabor_s0 = gabor_s0;
    const size_t mult = complex_data ? 2 : 1;
    l.w.assign(mult * static_cast<size_t>(fan_out) * fan_in, 0.0);
    l.b.assign(mult * static_cast<size_t>(fan_out), 0.0);
    return l;
}

}  // namespace

Network init_network(const ModelConfig& cfg) {
    if (cfg.hidden_depth < 1) throw DataError("init_network: hidden_depth must be >= 1");
    if (cfg.hidden_width < 2) throw DataError("init_network: hidden_width must be >= 2");
    if (!(cfg.freq_param > 0.0)) throw DataError("init_network: freq_param must be positive");
    if (cfg.out_channels < 1) throw DataError("init_network: out_channels must be >= 1");

    Network net;
    net.config = cfg;
    Rng rng(cfg.seed);
    const int d = cfg.hidden_depth, w = cfg.hidden_width, c = cfg.out_channels;

    switch (cfg.architecture) {
        case Architecture::siren: {
            // Reference scheme: first layer U(+-1/fan_in) with sine scale
            // omega_s, deeper layers U(+-sqrt(6/fan_in)/30) with scale 30.
            // Biases use the same bound as their weights, which keeps hidden
            // pre-activations near unit variance.
            Layer l0 = make_layer(2, w, false, Activation::sine, cfg.freq_param, 0.0);
            fill_uniform(rng, l0.w, 1.0 / 2.0);
            fill_uniform(rng, l0.b, 1.0 / 2.0);
            net.layers.push_back(std::move(l0));
            for (int i = 1; i < d; ++i) {
                Layer l = make_layer(w, w, false, Activation::sine, kHiddenOmega, 0.0);
                const double bound = std::sqrt(6.0 / w) / kHiddenOmega;
                fill_uniform(rng, l.w, bound);
                fill_uniform(rng, l.b, bound);
                net.layers.push_back(std::move(l));
            }
            Layer head = make_layer(w, c, false, Activation::linear, 1.0, 0.0);
            const double bound = std::sqrt(6.0 / w) / kHiddenOmega;
            fill_uniform(rng, head.w, bound);
            fill_uniform(rng, head.b, bound);
            net.layers.push_back(std::move(head));
            break;
        }
        case Architecture::finer: {
            // Siren weights throughout.  The scaled bias U(+-bias_scale) is
            // applied at the first layer (where the variable-periodic trick
            // wants spread-out phases); deeper biases keep the framework
            // default U(+-1/sqrt(fan_in)) of the reference implementation.
            Layer l0 = make_layer(2, w, false, Activation::finer_sine, cfg.freq_param, 0.0);
            fill_uniform(rng, l0.w, 1.0 / 2.0);
            fill_uniform(rng, l0.b, cfg.finer_bias_scale);
            net.layers.push_back(std::move(l0));
            for (int i = 1; i < d; ++i) {
                Layer l = make_layer(w, w, false, Activation::finer_sine, kHiddenOmega, 0.0);
                fill_uniform(rng, l.w, std::sqrt(6.0 / w) / kHiddenOmega);
                fill_uniform(rng, l.b, 1.0 / std::sqrt(static_cast<double>(w)));
                net.layers.push_back(std::move(l));
            }
            Layer head = make_layer(w, c, false, Activation::linear, 1.0, 0.0);
            fill_uniform(rng, head.w, std::sqrt(6.0 / w) / kHiddenOmega);
            fill_uniform(rng, head.b, 1.0 / std::sqrt(static_cast<double>(w)));
            net.layers.push_back(std::move(head));
            break;
        }
        case Architecture::fourier: {
            // Fixed embedding B with N(0, sigma^2) entries; features are
            // [sin(2*pi*Bx), cos(2*pi*Bx)].  The MLP is plain ReLU with
            // He-uniform weights and zero biases.
            net.embedding.resize(2 * kFourierFreqs);
            for (double& x : net.embedding) x = rng.normal(0.0, cfg.freq_param);
            int fan_in = 2 * kFourierFreqs;
            for (int i = 0; i < d; ++i) {
                Layer l = make_layer(fan_in, w, false, Activation::relu, 1.0, 0.0);
                fill_uniform(rng, l.w, std::sqrt(6.0 / fan_in));
                net.layers.push_back(std::move(l));
                fan_in = w;
            }
            Layer head = make_layer(w, c, false, Activation::linear, 1.0, 0.0);
            fill_uniform(rng, head.w, std::sqrt(6.0 / w));
            net.layers.push_back(std::move(head));
            break;
        }
        case Architecture::wire: {
            // Complex Gabor stack: psi(z) = exp(j*omega_w*z)*exp(-|s0*z|^2)
            // with the same (omega_w, s0) at every layer; the output head is
            // real and reads the real part of the last complex activation.
            // Every linear map uses the reference U(+-1/sqrt(fan_in)) scheme.
            // The reference first layer is a real map into the complex body,
            // so its imaginary components start at zero (they stay trainable).
            Layer l0 = make_layer(2, w, true, Activation::gabor, cfg.freq_param, cfg.wire_s0);
            fill_uniform(rng, l0.w, 1.0 / std::sqrt(2.0));
            fill_uniform(rng, l0.b, 1.0 / std::sqrt(2.0));
            for (size_t k = 1; k < l0.w.size(); k += 2) l0.w[k] = 0.0;
            for (size_t k = 1; k < l0.b.size(); k += 2) l0.b[k] = 0.0;
            net.layers.push_back(std::move(l0));
            for (int i = 1; i < d; ++i) {
                Layer l = make_layer(w, w, true, Activation::gabor, cfg.freq_param, cfg.wire_s0);
                const double bound = 1.0 / std::sqrt(static_cast<double>(w));
                fill_uniform(rng, l.w, bound);
                fill_uniform(rng, l.b, bound);
                net.layers.push_back(std::move(l));
            }
            Layer head = make_layer(w, c, false, Activation::linear, 1.0, 0.0);
            const double bound = 1.0 / std::sqrt(static_cast<double>(w));
            fill_uniform(rng, head.w, bound);
            fill_uniform(rng, head.b, bound);
            net.layers.push_back(std::move(head));
            break;
        }
    }
    return net;
}

// ---------------------------------------------------------------------------
// forward

namespace {

// out[i][j] = in[j][i]; in is [rows][cols]. Tiled so both sides stay in cache.
void transpose(const double* in, size_t rows, size_t cols, double* out) {
    constexpr size_t kTile = 32;
    for (size_t r0 = 0; r0 < rows; r0 += kTile)
        for (size_t c0 = 0; c0 < cols; c0 += kTile) {
            const size_t r1 = std::min(rows, r0 + kTile), c1 = std::min(cols, c0 + kTile);
            for (size_t r = r0; r < r1; ++r)
                for (size_t c = c0; c < c1; ++c) out[c * rows + r] = in[r * cols + c];
        }
}

// out[a][r] = dot(rows[r], acts[a]) + bias[r].  rows: [n_rows][len], acts:
// [n_acts][len], out: [n_acts][n_rows].  Acts are blocked 16 at a time and
// rows walked in pairs inside the block, so a row pair is pulled from cache
// once per 16 activations and the 2x4 microkernel stays FMA-bound.  Every
// output is one full-length dot, so blocking does not change the results.
void gemm_rows(const double* rows, int n_rows, size_t len, const double* acts, size_t n_acts,
               const double* bias, double* out) {
    if (len <= 4) {
        // Thin contraction (2-wide coordinate input, few-channel deltas):
        // per-dot kernel calls would be all overhead, so make the columns of
        // `rows` contiguous and accumulate whole output rows instead.
        std::vector<double> cols(len * static_cast<size_t>(n_rows));
        for (int r = 0; r < n_rows; ++r)
            for (size_t i = 0; i < len; ++i)
                cols[i * n_rows + r] = rows[static_cast<size_t>(r) * len + i];
        for (size_t a = 0; a < n_acts; ++a) {
            double* o = out + a * n_rows;
            if (bias)
                std::copy(bias, bias + n_rows, o);
            else
                std::fill(o, o + n_rows, 0.0);
            const double* av = acts + a * len;
            for (size_t i = 0; i < len; ++i)
                kernels::axpy(o, av[i], cols.data() + i * n_rows, n_rows);
        }
        return;
    }
    constexpr size_t kBlock = 16;
    size_t p = 0;
    while (p + 4 <= n_acts) {
        const size_t bn = std::min(kBlock, (n_acts - p) & ~size_t{3});
        const double* aq[kBlock];
        double* oq[kBlock];
        for (size_t q = 0; q < bn; ++q) {
            aq[q] = acts + (p + q) * len;
            oq[q] = out + (p + q) * n_rows;
        }
        int j = 0;
        for (; j + 2 <= n_rows; j += 2) {
            const double* w0 = rows + static_cast<size_t>(j) * len;
            const double* w1 = rows + static_cast<size_t>(j + 1) * len;
            const double b0 = bias ? bias[j] : 0.0, b1 = bias ? bias[j + 1] : 0.0;
            for (size_t q = 0; q + 4 <= bn; q += 4) {
                double o8[8];
                kernels::dot2x4(w0, w1, aq[q], aq[q + 1], aq[q + 2], aq[q + 3], len, o8);
                oq[q + 0][j] = o8[0] + b0;
                oq[q + 1][j] = o8[1] + b0;
                oq[q + 2][j] = o8[2] + b0;
                oq[q + 3][j] = o8[3] + b0;
                oq[q + 0][j + 1] = o8[4] + b1;
                oq[q + 1][j + 1] = o8[5] + b1;
                oq[q + 2][j + 1] = o8[6] + b1;
                oq[q + 3][j + 1] = o8[7] + b1;
            }
        }
        for (; j < n_rows; ++j) {
            const double* w = rows + static_cast<size_t>(j) * len;
            const double b = bias ? bias[j] : 0.0;
            for (size_t q = 0; q + 4 <= bn; q += 4) {
                double o4[4];
                kernels::dot4(w, aq[q], aq[q + 1], aq[q + 2], aq[q + 3], len, o4);
                oq[q + 0][j] = o4[0] + b;
                oq[q + 1][j] = o4[1] + b;
                oq[q + 2][j] = o4[2] + b;
                oq[q + 3][j] = o4[3] + b;
            }
        }
        p += bn;
    }
    for (; p < n_acts; ++p) {
        const double* a = acts + p * len;
        double* o = out + p * n_rows;
        for (int j = 0; j < n_rows; ++j)
            o[j] = kernels::dot(rows + static_cast<size_t>(j) * len, a, len) +
                   (bias ? bias[j] : 0.0);
    }
}

// z[px][fan_out] = W * in[px] + b for a real layer.
void linear_forward(const Layer& l, const std::vector<double>& in, size_t n_px,
                    std::vector<double>& z) {
    z.resize(n_px * l.fan_out);
    gemm_rows(l.w.data(), l.fan_out, l.fan_in, in.data(), n_px, l.b.data(), z.data());
}

// Complex layer: interleaved re/im pairs everywhere.
void linear_forward_complex(const Layer& l, const std::vector<double>& in, size_t n_px,
                            std::vector<double>& z) {
    const int fi = l.fan_in, fo = l.fan_out;
    z.resize(2 * n_px * fo);
    for (size_t p = 0; p < n_px; ++p) {
        const double* a = in.data() + 2 * p * fi;
        for (int j = 0; j < fo; ++j) {
            double out2[2];
            kernels::cdot(l.w.data() + 2 * static_cast<size_t>(j) * fi, a, fi, out2);
            z[2 * (p * fo + j)] = out2[0] + l.b[2 * j];
            z[2 * (p * fo + j) + 1] = out2[1] + l.b[2 * j + 1];
        }
    }
}

struct LayerBuffers {
    std::vector<double> post;
    std::vector<double> jac;   // real: da/dz; gabor: [..][4] entries
    std::vector<double> pre;   // nonlinearity inputs, only when capture_pre
};

void apply_activation(const Layer& l, std::vector<double>& z, size_t n_px, bool want_jac,
                      bool want_pre, LayerBuffers& out) {
    const size_t n = n_px * l.fan_out;
    switch (l.activation) {
        case Activation::linear:
            out.post.assign(z.begin(), z.end());  // copy so z keeps its capacity for reuse
            if (want_pre) out.pre = out.post;
            return;
        case Activation::sine: {
            // a = sin(s*z); da/dz = s*cos(s*z)
            std::vector<double>& arg = z;
            for (double& x : arg) x *= l.scale;
            out.post.resize(n);
            out.jac.resize(n);
            kernels::vsincos(arg.data(), out.post.data(), out.jac.data(), n);
            if (want_jac) {
                for (double& x : out.jac) x *= l.scale;
            } else {
                out.jac.clear();
                out.jac.shrink_to_fit();  // large renders never read it back
            }
            if (want_pre) out.pre = arg;
            return;
        }
        case Activation::finer_sine: {
            // a = sin(s*u), u = (|z|+1)*z; da/dz = s*cos(s*u)*(2|z|+1)
            std::vector<double> arg(n);
            for (size_t i = 0; i < n; ++i) arg[i] = l.scale * (std::fabs(z[i]) + 1.0) * z[i];
            out.post.resize(n);
            out.jac.resize(n);
            kernels::vsincos(arg.data(), out.post.data(), out.jac.data(), n);
            if (want_jac) {
                for (size_t i = 0; i < n; ++i)
                    out.jac[i] *= l.scale * (2.0 * std::fabs(z[i]) + 1.0);
            } else {
                out.jac.clear();
                out.jac.shrink_to_fit();
            }
            if (want_pre) out.pre = std::move(arg);
            return;
        }
        case Activation::relu: {
            out.post.resize(n);
            if (want_jac) out.jac.resize(n);
            for (size_t i = 0; i < n; ++i) {
                const bool on = z[i] > 0.0;
                out.post[i] = on ? z[i] : 0.0;
                if (want_jac) out.jac[i] = on ? 1.0 : 0.0;
            }
            if (want_pre) out.pre = std::move(z);
            return;
        }
        case Activation::gabor: {
            // psi(z) = exp(g) * (cos(phi) + j sin(phi)),
            // g = -omega*zi - s0^2*(zr^2+zi^2), phi = omega*zr.
            const double omega = l.scale, s0sq = l.gabor_s0 * l.gabor_s0;
            std::vector<double> g(n), phi(n);
            for (size_t i = 0; i < n; ++i) {
                const double zr = z[2 * i], zi = z[2 * i + 1];
                g[i] = -omega * zi - s0sq * (zr * zr + zi * zi);
                phi[i] = omega * zr;
            }
            std::vector<double> env(n), sphi(n), cphi(n);
            kernels::vexp(g.data(), env.data(), n);
            kernels::vsincos(phi.data(), sphi.data(), cphi.data(), n);
            out.post.resize(2 * n);
            if (want_jac) out.jac.resize(4 * n);
            for (size_t i = 0; i < n; ++i) {
                const double pr = env[i] * cphi[i];
                const double pi = env[i] * sphi[i];
                out.post[2 * i] = pr;
                out.post[2 * i + 1] = pi;
                if (want_jac) {
                    const double zr = z[2 * i], zi = z[2 * i + 1];
                    const double dgdr = -2.0 * s0sq * zr;
                    const double dgdi = -omega - 2.0 * s0sq * zi;
                    out.jac[4 * i + 0] = dgdr * pr - omega * pi;  // d(pr)/d(zr)
                    out.jac[4 * i + 1] = dgdi * pr;               // d(pr)/d(zi)
                    out.jac[4 * i + 2] = dgdr * pi + omega * pr;  // d(pi)/d(zr)
                    out.jac[4 * i + 3] = dgdi * pi;               // d(pi)/d(zi)
                }
            }
            if (want_pre) out.pre = std::move(z);  // complex pairs, pooled by stats
            return;
        }
    }
}

// Fourier feature map: [sin(2*pi*Bx) | cos(2*pi*Bx)] per pixel.
void embed_fourier(const std::vector<double>& emb, const CoordGrid& coords,
                   std::vector<double>& feats) {
    const size_t n_px = coords.count();
    const int nf = static_cast<int>(emb.size() / 2);
    feats.resize(n_px * 2 * nf);
    std::vector<double> args(nf);
    for (size_t p = 0; p < n_px; ++p) {
        const double x = coords.pts[2 * p], y = coords.pts[2 * p + 1];
        for (int k = 0; k < nf; ++k)
            args[k] = kTau * (emb[2 * k] * x + emb[2 * k + 1] * y);
        double* sin_out = feats.data() + p * 2 * nf;
        kernels::vsincos(args.data(), sin_out, sin_out + nf, nf);
    }
}

struct ForwardState {
    std::vector<LayerBuffers> layers;
    std::vector<double> input0;
    std::vector<double> wire_re;
    std::vector<double> outputs;
    std::vector<double> z;  // pre-activation scratch, reused across layers
};

// Fills `st` in place; a caller that keeps its state alive across calls of
// the same shape (the training loop) pays no allocations after the first.
void run_forward(const Network& net, const CoordGrid& coords, bool want_jac, bool want_pre,
                 ForwardState& st) {
    if (net.layers.empty()) throw DataError("forward: network has no layers");
    const size_t n_px = coords.count();
    if (n_px == 0) throw DataError("forward: empty coordinate grid");

    st.layers.resize(net.layers.size());
    const bool complex_body = net.layers.front().complex_data;

    if (!net.embedding.empty()) {
        embed_fourier(net.embedding, coords, st.input0);
    } else if (complex_body) {
        st.input0.assign(2 * 2 * n_px, 0.0);  // coords as complex with zero imag
        for (size_t p = 0; p < n_px; ++p) {
            st.input0[4 * p] = coords.pts[2 * p];
            st.input0[4 * p + 2] = coords.pts[2 * p + 1];
        }
    } else {
        st.input0 = coords.pts;
    }

    const std::vector<double>* in = &st.input0;
    std::vector<double>& z = st.z;
    for (size_t li = 0; li < net.layers.size(); ++li) {
        const Layer& l = net.layers[li];
        const bool is_head = li + 1 == net.layers.size();

        if (!l.complex_data && li > 0 && net.layers[li - 1].complex_data) {
            // Real head on a complex body: take the real part.
            const std::vector<double>& cin = *in;
            st.wire_re.resize(cin.size() / 2);
            for (size_t i = 0; i < st.wire_re.size(); ++i) st.wire_re[i] = cin[2 * i];
            in = &st.wire_re;
        }

        const size_t expect = (l.complex_data ? 2u : 1u) * n_px * l.fan_in;
        if (in->size() != expect)
            throw DataError("forward: layer " + std::to_string(li) + " input size mismatch");

        if (l.complex_data)
            linear_forward_complex(l, *in, n_px, z);
        else
            linear_forward(l, *in, n_px, z);

        apply_activation(l, z, n_px, want_jac && !is_head, want_pre, st.layers[li]);
        if (want_jac) check_finite(st.layers[li].post, "forward", static_cast<int>(li));
        in = &st.layers[li].post;
        z.clear();
    }
    st.outputs = st.layers.back().post;
}

// Per-thread scratch so the training loop reuses its buffers step to step.
ForwardState& tl_forward_state() {
    thread_local ForwardState st;
    return st;
}

struct BackwardScratch {
    std::vector<double> delta, delta_prev, gpre, gt, at, wt;
};

BackwardScratch& tl_backward_scratch() {
    thread_local BackwardScratch s;
    return s;
}

}  // namespace

std::vector<double> forward(const Network& net, const CoordGrid& coords, ForwardTrace* trace) {
    ForwardState st;
    run_forward(net, coords, trace != nullptr, false, st);
    if (trace) {
        trace->input0 = std::move(st.input0);
        trace->wire_re = std::move(st.wire_re);
        trace->post.clear();
        trace->jac.clear();
        for (auto& lb : st.layers) {
            trace->post.push_back(std::move(lb.post));
            trace->jac.push_back(std::move(lb.jac));
        }
        return trace->post.back();
    }
    return std::move(st.outputs);
}

std::vector<double> render_raw(const Network& net, const CoordGrid& coords) {
    return forward(net, coords, nullptr);
}

Image render(const Network& net, int height, int width) {
    if (height < 2 || width < 2) throw DataError("render: dimensions must be at least 2x2");
    const CoordGrid grid = pixel_center_grid(height, width);
    const std::vector<double> out = forward(net, grid, nullptr);
    const int c = net.config.out_channels;
    Image img = Image::zeros(c, height, width);
    for (size_t p = 0; p < grid.count(); ++p)
        for (int ch = 0; ch < c; ++ch) {
            double v = out[p * c + ch];
            if (!std::isfinite(v))
                throw NumericalError("render: non-finite network output");
            img.data[static_cast<size_t>(ch) * grid.count() + p] = std::min(1.0, std::max(0.0, v));
        }
    return img;
}

// ---------------------------------------------------------------------------
// backward

LossGrad loss_gradient(const Network& net, const CoordGrid& coords, const Image& target) {
    const size_t n_px = coords.count();
    const int c = net.config.out_channels;
    if (target.height != coords.height || target.width != coords.width ||
        target.channels != c)
        throw DataError("loss_gradient: target dimensions do not match network/grid");

    ForwardState& st = tl_forward_state();
    run_forward(net, coords, true, false, st);
    const std::vector<double>& out = st.outputs;

    BackwardScratch& ws = tl_backward_scratch();
    std::vector<double>& delta = ws.delta;
    std::vector<double>& delta_prev = ws.delta_prev;

    // MSE and the output-side delta, d(loss)/d(out) = 2*(out-target)/(n_px*C).
    const double inv = 1.0 / (static_cast<double>(n_px) * c);
    double loss = 0.0;
    delta.resize(n_px * c);
    for (size_t p = 0; p < n_px; ++p)
        for (int ch = 0; ch < c; ++ch) {
            const double r = out[p * c + ch] - target.data[static_cast<size_t>(ch) * n_px + p];
            loss += r * r;
            delta[p * c + ch] = 2.0 * r * inv;
        }
    loss *= inv;
    if (!std::isfinite(loss)) throw NumericalError("loss_gradient: non-finite loss");

    LossGrad result;
    result.loss = loss;
    result.grad.assign(net.parameter_count(), 0.0);

    // Per-layer gradient slices in flatten order.
    std::vector<size_t> offsets(net.layers.size() + 1, 0);
    for (size_t li = 0; li < net.layers.size(); ++li)
        offsets[li + 1] = offsets[li] + net.layers[li].param_count();

    for (size_t li = net.layers.size(); li-- > 0;) {
        const Layer& l = net.layers[li];
        const bool is_head = li + 1 == net.layers.size();
        const int fi = l.fan_in, fo = l.fan_out;
        double* dw = result.grad.data() + offsets[li];
        double* db = dw + l.w.size();

        // Pre-activation delta: multiply by the activation Jacobian.
        const std::vector<double>* gsrc;
        if (is_head || l.activation == Activation::linear) {
            gsrc = &delta;
        } else if (!l.complex_data) {
            const std::vector<double>& jac = st.layers[li].jac;
            ws.gpre.resize(n_px * fo);
            for (size_t i = 0; i < ws.gpre.size(); ++i) ws.gpre[i] = delta[i] * jac[i];
            gsrc = &ws.gpre;
        } else {
            const std::vector<double>& jac = st.layers[li].jac;
            ws.gpre.resize(2 * n_px * fo);
            for (size_t i = 0; i < n_px * static_cast<size_t>(fo); ++i) {
                const double gr = delta[2 * i], gi = delta[2 * i + 1];
                ws.gpre[2 * i] = gr * jac[4 * i + 0] + gi * jac[4 * i + 2];
                ws.gpre[2 * i + 1] = gr * jac[4 * i + 1] + gi * jac[4 * i + 3];
            }
            gsrc = &ws.gpre;
        }
        const std::vector<double>& gpre = *gsrc;

        // Input to this layer, as produced by forward.
        const std::vector<double>* a_prev;
        if (li == 0)
            a_prev = &st.input0;
        else if (!l.complex_data && net.layers[li - 1].complex_data)
            a_prev = &st.wire_re;
        else
            a_prev = &st.layers[li - 1].post;

        if (!l.complex_data) {
            // Transpose both operands so the pixel sum is a contiguous dot:
            // dW[j][i] = dot(GT[j], AT[i]), db[j] = sum(GT[j]).
            ws.gt.resize(n_px * fo);
            transpose(gpre.data(), n_px, fo, ws.gt.data());
            ws.at.resize(n_px * fi);
            transpose(a_prev->data(), n_px, fi, ws.at.data());
            gemm_rows(ws.at.data(), fi, n_px, ws.gt.data(), fo, nullptr, dw);
            for (int j = 0; j < fo; ++j) db[j] = kernels::sum(ws.gt.data() + j * n_px, n_px);

            if (li > 0) {
                // delta_prev[px][i] = dot(gpre[px], WT[i]).
                ws.wt.resize(l.w.size());
                transpose(l.w.data(), fo, fi, ws.wt.data());
                delta_prev.resize(n_px * fi);
                gemm_rows(ws.wt.data(), fi, fo, gpre.data(), n_px, nullptr, delta_prev.data());
            }
        } else {
            for (size_t px = 0; px < n_px; ++px) {
                const double* a = a_prev->data() + 2 * px * fi;
                for (int j = 0; j < fo; ++j) {
                    const double gr = gpre[2 * (px * fo + j)];
                    const double gi = gpre[2 * (px * fo + j) + 1];
                    // dW[j][i] += g * conj(a[i]) ; db[j] += g
                    kernels::caxpy_conj(dw + 2 * static_cast<size_t>(j) * fi, gr, gi, a, fi);
                    db[2 * j] += gr;
                    db[2 * j + 1] += gi;
                }
            }
            if (li > 0) {
                delta_prev.assign(2 * n_px * fi, 0.0);
                for (size_t px = 0; px < n_px; ++px) {
                    double* dp = delta_prev.data() + 2 * px * fi;
                    for (int j = 0; j < fo; ++j)
                        kernels::caxpy_conj(dp, gpre[2 * (px * fo + j)],
                                            gpre[2 * (px * fo + j) + 1],
                                            l.w.data() + 2 * static_cast<size_t>(j) * fi, fi);
                }
            }
        }

        if (li == 0) break;

        // Hand the delta across a complex->real boundary: the imaginary part
        // of the last gabor output never reaches the head, so its delta is 0.
        if (!l.complex_data && net.layers[li - 1].complex_data) {
            delta.resize(2 * delta_prev.size());
            for (size_t i = 0; i < delta_prev.size(); ++i) {
                delta[2 * i] = delta_prev[i];
                delta[2 * i + 1] = 0.0;
            }
        } else {
            std::swap(delta, delta_prev);
        }
        check_finite(delta, "backward", static_cast<int>(li));
    }

    check_finite(result.grad, "gradient", -1);
    return result;
}

// ---------------------------------------------------------------------------
// derived measurements

ModelSecResult model_sec(const ModelConfig& config, int n_seeds, int render_height,
                         int render_width, const SecVariant& variant) {
    if (n_seeds < 1) throw DataError("model_sec: n_seeds must be >= 1");
    ModelSecResult res;
    res.per_seed.reserve(n_seeds);
    for (int i = 0; i < n_seeds; ++i) {
        ModelConfig cfg = config;
        cfg.seed = config.seed + static_cast<uint64_t>(i);
        const Image img = render(init_network(cfg), render_height, render_width);
        res.per_seed.push_back(image_sec(img, variant));
    }
    double total = 0.0;
    for (double v : res.per_seed) total += v;
    res.mean_sec = total / n_seeds;
    return res;
}

namespace {

LayerStats stats_of(const std::vector<double>& pre, const std::vector<double>& post) {
    auto describe = [](const std::vector<double>& v, double& var, double& mn, double& mx,
                       std::vector<double>& hist) {
        const size_t n = v.size();
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= n;
        var = 0.0;
        mn = v[0];
        mx = v[0];
        for (double x : v) {
            var += (x - mean) * (x - mean);
            mn = std::min(mn, x);
            mx = std::max(mx, x);
        }
        var /= n;
        hist.assign(64, 0.0);
        const double span = mx - mn;
        for (double x : v) {
            int bin = span > 0.0 ? static_cast<int>(64.0 * (x - mn) / span) : 0;
            hist[std::min(bin, 63)] += 1.0;
        }
    };
    LayerStats s;
    describe(pre, s.pre_variance, s.pre_min, s.pre_max, s.pre_hist);
    describe(post, s.post_variance, s.post_min, s.post_max, s.post_hist);
    return s;
}

}  // namespace

std::vector<LayerStats> activation_stats(const Network& net, const CoordGrid& coords) {
    ForwardState st;
    run_forward(net, coords, false, true, st);
    std::vector<LayerStats> out;
    for (size_t li = 0; li + 1 < net.layers.size(); ++li)
        out.push_back(stats_of(st.layers[li].pre, st.layers[li].post));
    return out;
}

}  // namespace sec
