#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace steerchess::model {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Named parameter with its gradient buffer. Frozen parameters never
// accumulate gradients and never move during training.
struct Param {
    std::string name;
    Mat* value = nullptr;
    Mat* grad = nullptr;
    bool trainable = true;
};

using ParamVisitor = std::function<void(Param)>;

// Deterministic fan-in-scaled init.
void init_matrix(Mat& m, std::mt19937_64& rng, double scale);

double gelu(double x);
double gelu_grad(double x);

// y = x W^T + b, rows are tokens.
class Linear {
public:
    Linear() = default;
    Linear(int in_dim, int out_dim, std::mt19937_64& rng, bool zero_init = false);

    Mat forward(const Mat& x);
    // Returns dL/dx; accumulates parameter gradients unless frozen.
    Mat backward(const Mat& dy);

    void visit(const std::string& prefix, bool trainable, const ParamVisitor& fn);
    void zero_grad();

    Mat w;  // out x in
    Mat b;  // out x 1
    Mat dw;
    Mat db;

    void set_accumulate(bool accumulate) { accumulate_ = accumulate; }

private:
    Mat x_cache_;
    bool accumulate_ = true;
};

// Per-token layer norm with gain and bias.
class LayerNorm {
public:
    LayerNorm() = default;
    explicit LayerNorm(int dim);

    Mat forward(const Mat& x);
    Mat backward(const Mat& dy);

    void visit(const std::string& prefix, bool trainable, const ParamVisitor& fn);
    void zero_grad();
    void set_accumulate(bool accumulate) { accumulate_ = accumulate; }

    Mat gain;  // dim x 1
    Mat bias;  // dim x 1
    Mat dgain;
    Mat dbias;

private:
    static constexpr double kEps = 1e-5;
    Mat xhat_cache_;
    Vec inv_sigma_cache_;
    bool accumulate_ = true;
};

// Multi-head attention; self-attention when key/value input is the query
// input, cross-attention otherwise. No masking: board tokens attend fully.
class MultiheadAttention {
public:
    MultiheadAttention() = default;
    MultiheadAttention(int dim, int kv_dim, int heads, std::mt19937_64& rng,
                       bool zero_init_output = false);

    Mat forward(const Mat& x, const Mat& kv);
    // dx returned; d_kv accumulated into *dkv_out when non-null.
    Mat backward(const Mat& dy, Mat* dkv_out);

    // Attention weights of the last forward, averaged over heads: rows are
    // query tokens, cols key tokens.
    Mat averaged_attention() const;

    void visit(const std::string& prefix, bool trainable, const ParamVisitor& fn);
    void zero_grad();
    void set_accumulate(bool accumulate);

    Linear wq, wk, wv, wo;

private:
    int heads_ = 1;
    int dim_ = 0;
    Mat x_cache_, kv_cache_, q_, k_, v_, concat_;
    std::vector<Mat> attn_;  // per head, T x L
};

class FeedForward {
public:
    FeedForward() = default;
    FeedForward(int dim, int hidden, std::mt19937_64& rng);

    Mat forward(const Mat& x);
    Mat backward(const Mat& dy);

    void visit(const std::string& prefix, bool trainable, const ParamVisitor& fn);
    void zero_grad();
    void set_accumulate(bool accumulate);

    Linear in, out;

private:
    Mat pre_act_cache_;
};

// Pre-norm transformer block: x + Attn(LN1(x)), then x + FFN(LN2(x)).
class EncoderBlock {
public:
    EncoderBlock() = default;
    EncoderBlock(int dim, int heads, int ffn_hidden, std::mt19937_64& rng);

    Mat forward(const Mat& x);
    Mat backward(const Mat& dy);

    void visit(const std::string& prefix, bool trainable, const ParamVisitor& fn);
    void zero_grad();
    void set_accumulate(bool accumulate);

    LayerNorm ln1, ln2;
    MultiheadAttention attn;
    FeedForward ffn;
};

// Conditioning block: self-attention, cross-attention over the prompt
// embeddings between the self-attention and feed-forward blocks; the
// cross-attention output projection starts at zero.
class ControlBlock {
public:
    ControlBlock() = default;
    ControlBlock(int dim, int text_dim, int heads, int ffn_hidden, std::mt19937_64& rng);

    Mat forward(const Mat& x, const Mat& e);
    Mat backward(const Mat& dy, Mat* de_out);

    void visit(const std::string& prefix, bool trainable, const ParamVisitor& fn);
    void zero_grad();
    void set_accumulate(bool accumulate);

    // Clones self-attention/FFN/LN weights from a backbone block (shapes
    // always match by construction).
    void clone_from(const EncoderBlock& source);

    LayerNorm ln1, lnx, ln2;
    MultiheadAttention self_attn;
    MultiheadAttention cross_attn;
    FeedForward ffn;
};

}  // namespace steerchess::model
