#include "steerchess/model/modules.hpp"

#include <cmath>

#include "steerchess/util/rng.hpp"

namespace steerchess::model {

void init_matrix(Mat& m, std::mt19937_64& rng, double scale) {
    util::NormalSampler normal;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            m(r, c) = normal(rng) * scale;
        }
    }
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * M_SQRT1_2)); }

double gelu_grad(double x) {
    const double cdf = 0.5 * (1.0 + std::erf(x * M_SQRT1_2));
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    return cdf + x * pdf;
}

Linear::Linear(int in_dim, int out_dim, std::mt19937_64& rng, bool zero_init) {
    w = Mat::Zero(out_dim, in_dim);
    b = Mat::Zero(out_dim, 1);
    if (!zero_init) init_matrix(w, rng, 1.0 / std::sqrt(static_cast<double>(in_dim)));
    dw = Mat::Zero(out_dim, in_dim);
    db = Mat::Zero(out_dim, 1);
}

Mat Linear::forward(const Mat& x) {
    x_cache_ = x;
    Mat y = x * w.transpose();
    y.rowwise() += b.col(0).transpose();
    return y;
}

Mat Linear::backward(const Mat& dy) {
    if (accumulate_) {
        dw.noalias() += dy.transpose() * x_cache_;
        db.col(0) += dy.colwise().sum().transpose();
    }
    return dy * w;
}

void Linear::visit(const std::string& prefix, bool trainable, const ParamVisitor& fn) {
    fn(Param{prefix + ".w", &w, &dw, trainable});
    fn(Param{prefix + ".b", &b, &db, trainable});
}

void Linear::zero_grad() {
    dw.setZero();
    db.setZero();
}

LayerNorm::LayerNorm(int dim) {
    gain = Mat::Ones(dim, 1);
    bias = Mat::Zero(dim, 1);
    dgain = Mat::Zero(dim, 1);
    dbias = Mat::Zero(dim, 1);
}

Mat LayerNorm::forward(const Mat& x) {
    const Eigen::Index rows = x.rows(), cols = x.cols();
    xhat_cache_.resize(rows, cols);
    inv_sigma_cache_.resize(rows);
    Mat y(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double mean = x.row(i).mean();
        const double var = (x.row(i).array() - mean).square().mean();
        const double inv_sigma = 1.0 / std::sqrt(var + kEps);
        inv_sigma_cache_(i) = inv_sigma;
        xhat_cache_.row(i) = (x.row(i).array() - mean) * inv_sigma;
        y.row(i) = xhat_cache_.row(i).array() * gain.col(0).transpose().array() +
                   bias.col(0).transpose().array();
    }
    return y;
}

Mat LayerNorm::backward(const Mat& dy) {
    const Eigen::Index rows = dy.rows(), cols = dy.cols();
    Mat dx(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto xhat = xhat_cache_.row(i).array();
        const auto dxhat = dy.row(i).array() * gain.col(0).transpose().array();
        const double mean_dxhat = dxhat.mean();
        const double mean_dxhat_xhat = (dxhat * xhat).mean();
        dx.row(i) =
            ((dxhat - mean_dxhat - xhat * mean_dxhat_xhat) * inv_sigma_cache_(i)).matrix();
        if (accumulate_) {
            dgain.col(0).transpose().array() += dy.row(i).array() * xhat;
            dbias.col(0).transpose().array() += dy.row(i).array();
        }
    }
    (void)cols;
    return dx;
}

void LayerNorm::visit(const std::string& prefix, bool trainable, const ParamVisitor& fn) {
    fn(Param{prefix + ".gain", &gain, &dgain, trainable});
    fn(Param{prefix + ".bias", &bias, &dbias, trainable});
}

void LayerNorm::zero_grad() {
    dgain.setZero();
    dbias.setZero();
}

MultiheadAttention::MultiheadAttention(int dim, int kv_dim, int heads,
                                       std::mt19937_64& rng, bool zero_init_output)
    : heads_(heads), dim_(dim) {
    wq = Linear(dim, dim, rng);
    wk = Linear(kv_dim, dim, rng);
    wv = Linear(kv_dim, dim, rng);
    wo = Linear(dim, dim, rng, zero_init_output);
}

Mat MultiheadAttention::forward(const Mat& x, const Mat& kv) {
    x_cache_ = x;
    kv_cache_ = kv;
    q_ = wq.forward(x);
    k_ = wk.forward(kv);
    v_ = wv.forward(kv);

    const Eigen::Index t = x.rows();
    const Eigen::Index l = kv.rows();
    const int dh = dim_ / heads_;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

    concat_.resize(t, dim_);
    attn_.assign(static_cast<std::size_t>(heads_), Mat());
    for (int h = 0; h < heads_; ++h) {
        const auto qh = q_.middleCols(h * dh, dh);
        const auto kh = k_.middleCols(h * dh, dh);
        const auto vh = v_.middleCols(h * dh, dh);
        Mat scores = qh * kh.transpose() * scale;  // t x l
        Mat& a = attn_[static_cast<std::size_t>(h)];
        a.resize(t, l);
        for (Eigen::Index i = 0; i < t; ++i) {
            const double m = scores.row(i).maxCoeff();
            a.row(i) = (scores.row(i).array() - m).exp();
            a.row(i) /= a.row(i).sum();
        }
        concat_.middleCols(h * dh, dh) = a * vh;
    }
    return wo.forward(concat_);
}

Mat MultiheadAttention::backward(const Mat& dy, Mat* dkv_out) {
    const Mat dconcat = wo.backward(dy);
    const Eigen::Index t = x_cache_.rows();
    const int dh = dim_ / heads_;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

    Mat dq = Mat::Zero(q_.rows(), q_.cols());
    Mat dk = Mat::Zero(k_.rows(), k_.cols());
    Mat dv = Mat::Zero(v_.rows(), v_.cols());
    for (int h = 0; h < heads_; ++h) {
        const auto vh = v_.middleCols(h * dh, dh);
        const auto qh = q_.middleCols(h * dh, dh);
        const auto kh = k_.middleCols(h * dh, dh);
        const Mat& a = attn_[static_cast<std::size_t>(h)];
        const auto doh = dconcat.middleCols(h * dh, dh);

        const Mat da = doh * vh.transpose();  // t x l
        Mat ds(a.rows(), a.cols());
        for (Eigen::Index i = 0; i < t; ++i) {
            const double dot = (da.row(i).array() * a.row(i).array()).sum();
            ds.row(i) = a.row(i).array() * (da.row(i).array() - dot);
        }
        dq.middleCols(h * dh, dh).noalias() += ds * kh * scale;
        dk.middleCols(h * dh, dh).noalias() += ds.transpose() * qh * scale;
        dv.middleCols(h * dh, dh).noalias() += a.transpose() * doh;
    }

    Mat dx = wq.backward(dq);
    const Mat dkv_k = wk.backward(dk);
    const Mat dkv_v = wv.backward(dv);
    if (dkv_out != nullptr) {
        *dkv_out += dkv_k + dkv_v;
    } else {
        // Self-attention: key/value input is the query input.
        dx += dkv_k + dkv_v;
    }
    return dx;
}

Mat MultiheadAttention::averaged_attention() const {
    if (attn_.empty()) return Mat();
    Mat avg = attn_[0];
    for (std::size_t h = 1; h < attn_.size(); ++h) avg += attn_[h];
    return avg / static_cast<double>(attn_.size());
}

void MultiheadAttention::visit(const std::string& prefix, bool trainable,
                               const ParamVisitor& fn) {
    wq.visit(prefix + ".wq", trainable, fn);
    wk.visit(prefix + ".wk", trainable, fn);
    wv.visit(prefix + ".wv", trainable, fn);
    wo.visit(prefix + ".wo", trainable, fn);
}

void MultiheadAttention::zero_grad() {
    wq.zero_grad();
    wk.zero_grad();
    wv.zero_grad();
    wo.zero_grad();
}

void MultiheadAttention::set_accumulate(bool accumulate) {
    wq.set_accumulate(accumulate);
    wk.set_accumulate(accumulate);
    wv.set_accumulate(accumulate);
    wo.set_accumulate(accumulate);
}

FeedForward::FeedForward(int dim, int hidden, std::mt19937_64& rng) {
    in = Linear(dim, hidden, rng);
    out = Linear(hidden, dim, rng);
}

Mat FeedForward::forward(const Mat& x) {
    pre_act_cache_ = in.forward(x);
    Mat activated = pre_act_cache_.unaryExpr([](double v) { return gelu(v); });
    return out.forward(activated);
}

Mat FeedForward::backward(const Mat& dy) {
    Mat dact = out.backward(dy);
    dact.array() *= pre_act_cache_.unaryExpr([](double v) { return gelu_grad(v); }).array();
    return in.backward(dact);
}

void FeedForward::visit(const std::string& prefix, bool trainable, const ParamVisitor& fn) {
    in.visit(prefix + ".in", trainable, fn);
    out.visit(prefix + ".out", trainable, fn);
}

void FeedForward::zero_grad() {
    in.zero_grad();
    out.zero_grad();
}

void FeedForward::set_accumulate(bool accumulate) {
    in.set_accumulate(accumulate);
    out.set_accumulate(accumulate);
}

EncoderBlock::EncoderBlock(int dim, int heads, int ffn_hidden, std::mt19937_64& rng)
    : ln1(dim), ln2(dim), attn(dim, dim, heads, rng), ffn(dim, ffn_hidden, rng) {}

Mat EncoderBlock::forward(const Mat& x) {
    const Mat normed = ln1.forward(x);
    const Mat y1 = x + attn.forward(normed, normed);
    return y1 + ffn.forward(ln2.forward(y1));
}

Mat EncoderBlock::backward(const Mat& dy) {
    const Mat dy1 = dy + ln2.backward(ffn.backward(dy));
    return dy1 + ln1.backward(attn.backward(dy1, nullptr));
}

void EncoderBlock::visit(const std::string& prefix, bool trainable, const ParamVisitor& fn) {
    ln1.visit(prefix + ".ln1", trainable, fn);
    attn.visit(prefix + ".attn", trainable, fn);
    ln2.visit(prefix + ".ln2", trainable, fn);
    ffn.visit(prefix + ".ffn", trainable, fn);
}

void EncoderBlock::zero_grad() {
    ln1.zero_grad();
    ln2.zero_grad();
    attn.zero_grad();
    ffn.zero_grad();
}

void EncoderBlock::set_accumulate(bool accumulate) {
    ln1.set_accumulate(accumulate);
    ln2.set_accumulate(accumulate);
    attn.set_accumulate(accumulate);
    ffn.set_accumulate(accumulate);
}

ControlBlock::ControlBlock(int dim, int text_dim, int heads, int ffn_hidden,
                           std::mt19937_64& rng)
    : ln1(dim),
      lnx(dim),
      ln2(dim),
      self_attn(dim, dim, heads, rng),
      cross_attn(dim, text_dim, heads, rng, /*zero_init_output=*/true),
      ffn(dim, ffn_hidden, rng) {}

Mat ControlBlock::forward(const Mat& x, const Mat& e) {
    const Mat normed = ln1.forward(x);
    const Mat y1 = x + self_attn.forward(normed, normed);
    const Mat y2 = y1 + cross_attn.forward(lnx.forward(y1), e);
    return y2 + ffn.forward(ln2.forward(y2));
}

Mat ControlBlock::backward(const Mat& dy, Mat* de_out) {
    const Mat dy2 = dy + ln2.backward(ffn.backward(dy));
    const Mat dy1 = dy2 + lnx.backward(cross_attn.backward(dy2, de_out));
    return dy1 + ln1.backward(self_attn.backward(dy1, nullptr));
}

void ControlBlock::visit(const std::string& prefix, bool trainable,
                         const ParamVisitor& fn) {
    ln1.visit(prefix + ".ln1", trainable, fn);
    self_attn.visit(prefix + ".self_attn", trainable, fn);
    lnx.visit(prefix + ".lnx", trainable, fn);
    cross_attn.visit(prefix + ".cross_attn", trainable, fn);
    ln2.visit(prefix + ".ln2", trainable, fn);
    ffn.visit(prefix + ".ffn", trainable, fn);
}

void ControlBlock::zero_grad() {
    ln1.zero_grad();
    lnx.zero_grad();
    ln2.zero_grad();
    self_attn.zero_grad();
    cross_attn.zero_grad();
    ffn.zero_grad();
}

void ControlBlock::set_accumulate(bool accumulate) {
    ln1.set_accumulate(accumulate);
    lnx.set_accumulate(accumulate);
    ln2.set_accumulate(accumulate);
    self_attn.set_accumulate(accumulate);
    cross_attn.set_accumulate(accumulate);
    ffn.set_accumulate(accumulate);
}

void ControlBlock::clone_from(const EncoderBlock& source) {
    ln1 = source.ln1;
    ln2 = source.ln2;
    self_attn = source.attn;
    ffn = source.ffn;
}

}  // namespace steerchess::model
