#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "carotidqa/errors.hpp"
#include "carotidqa/rng.hpp"

namespace cqa {

enum class Nonlinearity { relu, linear };

/// Architecture of the per-angle radius/width regressor. The angle axis is
/// convolved circularly so the network is exactly rotation equivariant;
/// the slice axis is convolved without padding (context collapses toward
/// the centre slice); the radius axis is zero-padded and may be strided
/// for desk-scale runtimes.
struct NetConfig {
    int n_layers = 8;
    int channels = 16;
    int kernel_angle = 3;  // circular
    int kernel_radius = 5; // zero padded, optionally strided
    int kernel_slice = 3;  // valid (no padding)
    std::vector<int> radius_strides; // empty: stride 2 while radius > 8
    double dropout_rate = 0.2;
    Nonlinearity nonlinearity = Nonlinearity::relu;
};

/// Dense 4D array, shape (channels, angles, slices, radii), radius fastest.
struct Tensor {
    int c = 1, a = 1, s = 1, r = 1;
    std::vector<double> v;

    static Tensor zeros(int c, int a, int s, int r) {
        Tensor t;
        t.c = c;
        t.a = a;
        t.s = s;
        t.r = r;
        t.v.assign(static_cast<std::size_t>(c) * a * s * r, 0.0);
        return t;
    }
    std::size_t index(int ci, int ai, int si, int ri) const {
        return ((static_cast<std::size_t>(ci) * a + ai) * s + si) * r + ri;
    }
    double at(int ci, int ai, int si, int ri) const { return v[index(ci, ai, si, ri)]; }
    double& at(int ci, int ai, int si, int ri) { return v[index(ci, ai, si, ri)]; }
    std::size_t size() const { return v.size(); }
};

struct TrainConfig {
    int epochs = 50;
    double lr = 0.05;
    double momentum = 0.9;
    int batch_size = 8;
    double val_fraction = 0.2;
    std::uint64_t seed = 0;
};

struct TrainLogEntry {
    int epoch = 0; // 1-based
    double train_mse = 0.0;
    double val_mse = 0.0;
};

struct TrainSummary {
    std::vector<TrainLogEntry> log;
    int best_epoch = 0;
    double best_val_mse = 0.0;
};

/// Stack of 3D convolutions with ReLU and inter-layer dropout, a mean pool
/// over the radius and slice axes, and a per-angle linear head. In relu mode
/// the head applies softplus so radii and widths stay strictly positive; in
/// linear mode both the activations and the head are identity, which makes
/// the loss exactly quadratic in each individual parameter (finite
/// differences then agree with backprop to rounding error).
class ConvNet {
  public:
    struct LayerShape {
        int c_in, c_out, ka, ks, kr, stride;
        int a, s_in, r_in, s_out, r_out;
        std::size_t w_offset, b_offset; // into the flat parameter vector
    };

    struct Sample {
        Tensor input;               // (1, A, S, R)
        std::vector<double> target; // (2, A): radii row then widths row
    };

    /// Bind the architecture to an input shape; weights are initialised
    /// uniformly in +-1/sqrt(fan_in) from `init_seed`. Head biases start at
    /// softplus^-1 of a plausible radius/width so outputs begin on scale.
    ConvNet(const NetConfig& cfg, int a, int s, int r, std::uint64_t init_seed);

    /// Forward pass; returns (2, A) flat, radii row first. If `dropout_rng`
    /// is non-null, inter-layer dropout masks are sampled from it.
    std::vector<double> forward(const Tensor& input, Rng* dropout_rng = nullptr) const;

    /// MSE loss of one sample; when `grad` is non-null it receives
    /// d(loss)/d(params) (same length as parameters()).
    double loss(const Sample& sample, Rng* dropout_rng, std::vector<double>* grad) const;

    /// SGD with momentum; retains the parameter snapshot with the best
    /// end-of-epoch validation loss. Deterministic given cfg.seed.
    TrainSummary fit(const std::vector<Sample>& train, const std::vector<Sample>& val,
                     const TrainConfig& cfg);

    std::span<const double> parameters() const { return params_; }
    void set_parameters(std::span<const double> p);
    std::size_t parameter_count() const { return params_.size(); }
    double& parameter(std::size_t i) { return params_[i]; }

    int input_angles() const { return a_; }
    int input_slices() const { return s_; }
    int input_radii() const { return r_; }
    const NetConfig& config() const { return cfg_; }
    const std::vector<LayerShape>& layers() const { return layers_; }

    /// PQW1 weights container: magic, u32 tensor count, then per tensor a
    /// u32 rank + u32 dims header and an f32 payload.
    void save(const std::filesystem::path& path) const;
    void load(const std::filesystem::path& path);

  private:
    NetConfig cfg_;
    int a_, s_, r_;
    std::vector<LayerShape> layers_;
    std::size_t head_w_offset_ = 0, head_b_offset_ = 0;
    std::vector<double> params_;

    struct Workspace;
    double run(const Tensor& input, Rng* dropout_rng, const std::vector<double>* target,
               std::vector<double>* out, std::vector<double>* grad) const;
};

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::size_t worst_index = 0;
    std::vector<double> analytic;
    std::vector<double> numeric;
};

/// Shared comparator for analytic-vs-numeric gradients; throws
/// GradientMismatch naming the offending parameters.
void compare_gradients(std::span<const double> analytic, std::span<const double> numeric,
                       double tolerance);

/// Central-difference check of the backward pass over every parameter of a
/// small net (dropout disabled). Throws GradientMismatch above `tolerance`.
GradCheckReport grad_check(const NetConfig& cfg, int a, int s, int r, double step,
                           double tolerance, std::uint64_t seed);

} // namespace cqa
