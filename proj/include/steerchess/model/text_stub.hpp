#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steerchess/model/modules.hpp"

namespace steerchess::model {

// Low-rank adapter: W' = W + scale * B * A, scale = alpha/rank, or
// alpha/sqrt(rank) with rs_scaling. B starts at zero.
struct LoraAdapter {
    Mat a;  // rank x in
    Mat b;  // out x rank
    int rank = 0;
    double alpha = 1.0;
    bool rs_scaling = false;

    Mat da;
    Mat db;

    LoraAdapter() = default;
    LoraAdapter(int in_dim, int out_dim, int rank, double alpha, bool rs_scaling,
                std::mt19937_64& rng);

    double scale() const;
    void zero_grad();
    void visit(const std::string& prefix, bool trainable, const ParamVisitor& fn);
};

// W + scale * B * A. Throws std::invalid_argument on rank 0 or shape
// mismatch.
Mat lora_effective_weight(const Mat& w, const LoraAdapter& adapter);

// Whitespace tokenizer with stable hashed ids.
std::vector<std::uint32_t> tokenize(const std::string& text);

// Deterministic per-token embedding table stand-in for the text encoder:
// rows come from a hash-seeded normal table and pass through a frozen
// projection with a trainable LoRA adapter.
class TextEncoderStub {
public:
    TextEncoderStub() = default;
    TextEncoderStub(int text_dim, int lora_rank, double lora_alpha, bool rs_lora,
                    std::uint64_t seed);

    // L tokens -> L x text_dim embedding matrix. Throws on empty input.
    Mat embed(const std::vector<std::uint32_t>& token_ids);

    // Gradient of the loss wrt the embedding output; accumulates LoRA
    // gradients.
    void backward(const Mat& de);

    void visit(const ParamVisitor& fn);
    void zero_grad();
    void set_accumulate(bool accumulate) { accumulate_ = accumulate; }

    int text_dim() const { return text_dim_; }

    Mat projection;  // frozen text_dim x text_dim
    LoraAdapter adapter;

private:
    Mat token_row(std::uint32_t token_id) const;

    int text_dim_ = 0;
    std::uint64_t seed_ = 0;
    Mat raw_cache_;  // L x text_dim hash embeddings of the last call
    Mat dproj_unused_;
    bool accumulate_ = true;
};

}  // namespace steerchess::model
