#include "kicl/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace kicl::nn {

void matmul(const Mat& x, const Mat& w, Mat& out) {
    if (x.cols != w.rows) throw ConfigError("matmul: shape mismatch");
    out.rows = x.rows;
    out.cols = w.cols;
    out.a.assign(x.rows * w.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* xi = &x.a[i * x.cols];
        double* oi = &out.a[i * out.cols];
        for (std::size_t k = 0; k < x.cols; ++k) {
            const double xv = xi[k];
            if (xv == 0.0) continue;
            const double* wk = &w.a[k * w.cols];
            for (std::size_t j = 0; j < w.cols; ++j) oi[j] += xv * wk[j];
        }
    }
}

void matmul_tn(const Mat& x, const Mat& dy, Mat& out) {
    if (x.rows != dy.rows) throw ConfigError("matmul_tn: shape mismatch");
    out.rows = x.cols;
    out.cols = dy.cols;
    out.a.assign(x.cols * dy.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* xi = &x.a[i * x.cols];
        const double* di = &dy.a[i * dy.cols];
        for (std::size_t k = 0; k < x.cols; ++k) {
            const double xv = xi[k];
            if (xv == 0.0) continue;
            double* ok = &out.a[k * out.cols];
            for (std::size_t j = 0; j < dy.cols; ++j) ok[j] += xv * di[j];
        }
    }
}

void matmul_nt(const Mat& dy, const Mat& w, Mat& out) {
    if (dy.cols != w.cols) throw ConfigError("matmul_nt: shape mismatch");
    out.rows = dy.rows;
    out.cols = w.rows;
    out.a.assign(dy.rows * w.rows, 0.0);
    for (std::size_t i = 0; i < dy.rows; ++i) {
        const double* di = &dy.a[i * dy.cols];
        double* oi = &out.a[i * out.cols];
        for (std::size_t j = 0; j < w.rows; ++j) {
            const double* wj = &w.a[j * w.cols];
            double acc = 0;
            for (std::size_t k = 0; k < dy.cols; ++k) acc += di[k] * wj[k];
            oi[j] = acc;
        }
    }
}

const char* head_name(Head h) {
    switch (h) {
        case Head::Linear: return "linear";
        case Head::Tanh: return "tanh";
        case Head::Relu: return "relu";
    }
    return "linear";
}

Head head_from_name(const std::string& s) {
    if (s == "linear") return Head::Linear;
    if (s == "tanh") return Head::Tanh;
    if (s == "relu") return Head::Relu;
    throw ConfigError("unknown head: " + s);
}

MlpParams MlpParams::init(std::vector<std::size_t> sizes, Head head, Rng& rng) {
    if (sizes.size() < 2) throw ConfigError("mlp: need at least input and output sizes");
    MlpParams p;
    p.sizes = std::move(sizes);
    p.head = head;
    for (std::size_t l = 0; l + 1 < p.sizes.size(); ++l) {
        // Uniform fan-in scaling.
        double bound = 1.0 / std::sqrt(static_cast<double>(p.sizes[l]));
        Mat w(p.sizes[l], p.sizes[l + 1]);
        for (double& v : w.a) v = rng.uniform(-bound, bound);
        std::vector<double> b(p.sizes[l + 1]);
        for (double& v : b) v = rng.uniform(-bound, bound);
        p.w.push_back(std::move(w));
        p.b.push_back(std::move(b));
    }
    return p;
}

std::size_t MlpParams::n_params() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < w.size(); ++l) n += w[l].a.size() + b[l].size();
    return n;
}

Mat forward(const MlpParams& p, const Mat& x, ForwardCache* cache) {
    if (x.cols != p.input_dim()) throw ConfigError("forward: input dim mismatch");
    if (cache) {
        cache->params = &p;
        cache->revision = p.revision;
        cache->input = x;
        cache->pre.clear();
        cache->act.clear();
    }
    Mat cur = x;
    for (std::size_t l = 0; l < p.n_layers(); ++l) {
        Mat z;
        matmul(cur, p.w[l], z);
        for (std::size_t i = 0; i < z.rows; ++i) {
            double* zi = &z.a[i * z.cols];
            for (std::size_t j = 0; j < z.cols; ++j) zi[j] += p.b[l][j];
        }
        if (cache) cache->pre.push_back(z);
        bool last = l + 1 == p.n_layers();
        if (!last || p.head == Head::Relu) {
            for (double& v : z.a) v = v > 0.0 ? v : 0.0;
        } else if (p.head == Head::Tanh) {
            for (double& v : z.a) v = std::tanh(v);
        }
        if (cache) cache->act.push_back(z);
        cur = std::move(z);
    }
    return cur;
}

void Gradients::accumulate(const Gradients& other) {
    for (std::size_t l = 0; l < dw.size(); ++l) {
        for (std::size_t i = 0; i < dw[l].a.size(); ++i) dw[l].a[i] += other.dw[l].a[i];
        for (std::size_t i = 0; i < db[l].size(); ++i) db[l][i] += other.db[l][i];
    }
}

void Gradients::scale(double s) {
    for (auto& m : dw)
        for (double& v : m.a) v *= s;
    for (auto& b : db)
        for (double& v : b) v *= s;
    for (double& v : dx.a) v *= s;
}

Gradients Gradients::zeros_like(const MlpParams& p) {
    Gradients g;
    for (std::size_t l = 0; l < p.n_layers(); ++l) {
        g.dw.emplace_back(p.sizes[l], p.sizes[l + 1]);
        g.db.emplace_back(p.sizes[l + 1], 0.0);
    }
    return g;
}

Gradients backward(const MlpParams& p, const ForwardCache& cache, const Mat& dout) {
    if (cache.params != &p || cache.revision != p.revision)
        throw ConfigError("backward: stale forward cache");
    if (dout.rows != cache.input.rows || dout.cols != p.output_dim())
        throw ConfigError("backward: output grad shape mismatch");

    Gradients g;
    g.dw.resize(p.n_layers());
    g.db.resize(p.n_layers());

    Mat delta = dout;
    for (std::size_t li = p.n_layers(); li-- > 0;) {
        const Mat& z = cache.pre[li];
        bool last = li + 1 == p.n_layers();
        if (!last || p.head == Head::Relu) {
            for (std::size_t i = 0; i < delta.a.size(); ++i)
                if (z.a[i] <= 0.0) delta.a[i] = 0.0;
        } else if (p.head == Head::Tanh) {
            const Mat& y = cache.act[li];
            for (std::size_t i = 0; i < delta.a.size(); ++i)
                delta.a[i] *= 1.0 - y.a[i] * y.a[i];
        }
        const Mat& input = li == 0 ? cache.input : cache.act[li - 1];
        matmul_tn(input, delta, g.dw[li]);
        g.db[li].assign(p.sizes[li + 1], 0.0);
        for (std::size_t i = 0; i < delta.rows; ++i)
            for (std::size_t j = 0; j < delta.cols; ++j) g.db[li][j] += delta(i, j);
        Mat next_delta;
        matmul_nt(delta, p.w[li], next_delta);
        delta = std::move(next_delta);
    }
    g.dx = std::move(delta);
    return g;
}

AdamState AdamState::like(const MlpParams& p, double lr) {
    AdamState s;
    s.lr = lr;
    for (std::size_t l = 0; l < p.n_layers(); ++l) {
        s.m_w.emplace_back(p.sizes[l], p.sizes[l + 1]);
        s.v_w.emplace_back(p.sizes[l], p.sizes[l + 1]);
        s.m_b.emplace_back(p.sizes[l + 1], 0.0);
        s.v_b.emplace_back(p.sizes[l + 1], 0.0);
    }
    return s;
}

namespace {

void adam_update(std::span<double> param, std::span<const double> grad, std::span<double> m,
                 std::span<double> v, const AdamState& s, double c1, double c2) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        double gi = grad[i];
        if (!std::isfinite(gi))
            throw TrainingDiverged("adam_step: non-finite gradient at step " +
                                   std::to_string(s.step));
        m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * gi;
        v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * gi * gi;
        param[i] -= s.lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + s.eps);
    }
}

}  // namespace

void adam_step(MlpParams& p, const Gradients& g, AdamState& s) {
    if (g.dw.size() != p.n_layers()) throw ConfigError("adam_step: gradient shape mismatch");
    ++s.step;
    double c1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.step));
    double c2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.step));
    for (std::size_t l = 0; l < p.n_layers(); ++l) {
        if (g.dw[l].rows != p.w[l].rows || g.dw[l].cols != p.w[l].cols)
            throw ConfigError("adam_step: gradient shape mismatch at layer " + std::to_string(l));
        adam_update(p.w[l].a, g.dw[l].a, s.m_w[l].a, s.v_w[l].a, s, c1, c2);
        adam_update(p.b[l], g.db[l], s.m_b[l], s.v_b[l], s, c1, c2);
    }
    ++p.revision;
}

void soft_update(MlpParams& target, const MlpParams& online, double rate) {
    if (target.sizes != online.sizes) throw ConfigError("soft_update: shape mismatch");
    for (std::size_t l = 0; l < target.n_layers(); ++l) {
        for (std::size_t i = 0; i < target.w[l].a.size(); ++i)
            target.w[l].a[i] = (1.0 - rate) * target.w[l].a[i] + rate * online.w[l].a[i];
        for (std::size_t i = 0; i < target.b[l].size(); ++i)
            target.b[l][i] = (1.0 - rate) * target.b[l][i] + rate * online.b[l][i];
    }
    ++target.revision;
}

// ---- checkpoint format ----

namespace {

constexpr char kMagic[8] = {'K', 'C', 'K', 'P', 'T', '0', '0', '1'};

void write_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw ConfigError("checkpoint: truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void write_doubles(std::ostream& out, std::span<const double> xs) {
    for (double x : xs) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, 8);
        write_u64(out, bits);
    }
}

void read_doubles(std::istream& in, std::span<double> xs) {
    for (double& x : xs) {
        std::uint64_t bits = read_u64(in);
        std::memcpy(&x, &bits, 8);
    }
}

}  // namespace

void save_params(const MlpParams& p, std::ostream& out) {
    write_u64(out, p.sizes.size());
    for (std::size_t s : p.sizes) write_u64(out, s);
    write_u64(out, static_cast<std::uint64_t>(p.head));
    for (std::size_t l = 0; l < p.n_layers(); ++l) {
        write_doubles(out, p.w[l].a);
        write_doubles(out, p.b[l]);
    }
}

MlpParams load_params(std::istream& in) {
    MlpParams p;
    std::size_t n_sizes = read_u64(in);
    if (n_sizes < 2 || n_sizes > 64) throw ConfigError("checkpoint: bad layer count");
    p.sizes.resize(n_sizes);
    for (std::size_t& s : p.sizes) s = read_u64(in);
    p.head = static_cast<Head>(read_u64(in));
    for (std::size_t l = 0; l + 1 < n_sizes; ++l) {
        Mat w(p.sizes[l], p.sizes[l + 1]);
        read_doubles(in, w.a);
        std::vector<double> b(p.sizes[l + 1]);
        read_doubles(in, b);
        p.w.push_back(std::move(w));
        p.b.push_back(std::move(b));
    }
    return p;
}

void save_checkpoint(const std::vector<const MlpParams*>& nets, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StageError("checkpoint", "cannot write " + path);
    out.write(kMagic, 8);
    write_u64(out, nets.size());
    for (const MlpParams* p : nets) save_params(*p, out);
}

std::vector<MlpParams> load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError("checkpoint", "cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw ConfigError("checkpoint: bad magic in " + path);
    std::size_t n = read_u64(in);
    std::vector<MlpParams> nets;
    nets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) nets.push_back(load_params(in));
    return nets;
}

}  // namespace kicl::nn
