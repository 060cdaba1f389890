#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kicl/rng.hpp"
#include "kicl/util.hpp"

namespace kicl::nn {

struct TrainingDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row-major matrix; rows are batch samples.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat from_row(std::span<const double> row) {
        Mat m(1, row.size());
        std::copy(row.begin(), row.end(), m.a.begin());
        return m;
    }
};

void matmul(const Mat& x, const Mat& w, Mat& out);      // out = x * w
void matmul_tn(const Mat& x, const Mat& dy, Mat& out);  // out = x^T * dy
void matmul_nt(const Mat& dy, const Mat& w, Mat& out);  // out = dy * w^T

enum class Head { Linear, Tanh, Relu };

const char* head_name(Head h);
Head head_from_name(const std::string& s);

// Fixed-architecture dense net: ReLU hidden layers, configurable output head.
struct MlpParams {
    std::vector<std::size_t> sizes;       // [in, h..., out]
    std::vector<Mat> w;                   // w[l]: sizes[l] x sizes[l+1]
    std::vector<std::vector<double>> b;   // b[l]: sizes[l+1]
    Head head = Head::Linear;
    std::uint64_t revision = 0;           // bumped on every in-place update

    static MlpParams init(std::vector<std::size_t> sizes, Head head, Rng& rng);

    std::size_t input_dim() const { return sizes.front(); }
    std::size_t output_dim() const { return sizes.back(); }
    std::size_t n_layers() const { return sizes.size() - 1; }
    std::size_t n_params() const;
};

struct ForwardCache {
    const MlpParams* params = nullptr;
    std::uint64_t revision = 0;
    Mat input;
    std::vector<Mat> pre;  // pre-activations per layer
    std::vector<Mat> act;  // post-activations per layer (last = output)
};

// Returns the output; fills `cache` when given (required for backward).
Mat forward(const MlpParams& p, const Mat& x, ForwardCache* cache = nullptr);

struct Gradients {
    std::vector<Mat> dw;
    std::vector<std::vector<double>> db;
    Mat dx;  // gradient w.r.t. the input batch

    void accumulate(const Gradients& other);
    void scale(double s);
    static Gradients zeros_like(const MlpParams& p);
};

// Exact reverse-mode gradients for the cached forward. Throws on stale cache.
Gradients backward(const MlpParams& p, const ForwardCache& cache, const Mat& dout);

struct AdamState {
    std::vector<Mat> m_w, v_w;
    std::vector<std::vector<double>> m_b, v_b;
    long step = 0;
    double lr = 3e-4, beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

    static AdamState like(const MlpParams& p, double lr);
};

// Bias-corrected update; throws TrainingDiverged on non-finite gradients.
void adam_step(MlpParams& p, const Gradients& g, AdamState& s);

// target <- (1 - rate) * target + rate * online
void soft_update(MlpParams& target, const MlpParams& online, double rate);

// Versioned flat binary: header + shapes + little-endian doubles. Bit-exact
// round trip.
void save_params(const MlpParams& p, std::ostream& out);
MlpParams load_params(std::istream& in);

void save_checkpoint(const std::vector<const MlpParams*>& nets, const std::string& path);
std::vector<MlpParams> load_checkpoint(const std::string& path);

}  // namespace kicl::nn
