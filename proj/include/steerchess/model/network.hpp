#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steerchess/core/termination.hpp"
#include "steerchess/enc/planes.hpp"
#include "steerchess/model/modules.hpp"
#include "steerchess/model/text_stub.hpp"

namespace steerchess::model {

struct ModelConfig {
    int layers = 4;
    int dim = 32;
    int heads = 4;
    int ffn_mult = 4;
    int text_dim = 16;
    int policy_dim = 1858;
    int board_tokens = 64;
    int input_planes = 112;
    bool sequential_controlnet = false;
    bool clone_control_from_backbone = true;
    int lora_rank = 4;
    double lora_alpha = 8.0;
    bool rs_lora = false;
    double huber_delta = 1.0;
    double policy_weight = 1.0;
    double outcome_weight = 1.0;
    double moves_left_weight = 1.0;
    double termination_weight = 1.0;
    double delay_weight = 1.0;
    int termination_classes = 12;
    std::uint64_t init_seed = 0;

    int ffn_hidden() const { return dim * ffn_mult; }
};

// A published preset at real scale; present for configuration completeness,
// never exercised by tests.
ModelConfig bt4_scale_config();

// Everything diagnostics need from one forward pass.
struct ForwardTrace {
    Mat input;                    // board tokens after the input block
    std::vector<Mat> hidden;      // h_n per layer
    std::vector<Mat> residuals;   // r_n per layer
    std::vector<Mat> control;     // conditioning branch states
    std::vector<Vec> cross_attention_avg;  // per layer: head+square-averaged weights
    Vec policy_cross_attention_avg;        // same for the controllable policy head
    Vec logits;                   // conditioned policy logits
    Vec policy_residual;          // r_pi
    Vec frozen_logits;
    Vec pooled;                   // mean-pooled final representation
};

struct AuxOutputs {
    Vec outcome_probs;  // (win, draw, loss)
    double value = 0.0; // P(win) - P(loss)
    double moves_left = 0.0;
    Vec termination_probs;
    double move_delay = 0.0;
};

// One training/eval example.
struct Example {
    enc::InputPlanes planes;
    std::vector<std::uint32_t> prompt_tokens;
    int target_index = 0;              // policy index
    std::vector<int> legal_indices;    // ascending
    std::optional<int> outcome;        // -1, 0, 1
    std::optional<double> moves_left;
    std::optional<int> termination_class;
    std::optional<double> move_delay;
};

struct LossBreakdown {
    double total = 0.0;
    double policy = 0.0;
    double outcome = 0.0;
    double moves_left = 0.0;
    double termination = 0.0;
    double move_delay = 0.0;
};

// Frozen backbone + conditioning branch + controllable policy head + aux
// heads, at configurable scale.
class ConditioningModel {
public:
    explicit ConditioningModel(const ModelConfig& config);

    const ModelConfig& config() const { return config_; }

    Mat embed_prompt(const std::vector<std::uint32_t>& token_ids);

    // Conditioned forward; trace captures hidden states, residuals and
    // attention maps.
    Vec forward(const enc::InputPlanes& planes, const Mat& prompt_embedding,
                ForwardTrace* trace = nullptr);

    // Backbone-only path, no conditioning.
    Vec forward_frozen(const enc::InputPlanes& planes, ForwardTrace* trace = nullptr);

    // Auxiliary heads over the last conditioned forward's representation.
    AuxOutputs aux_forward(const ForwardTrace& trace);

    // Mean loss over the batch. Leaves per-example caches in place for an
    // immediately following backward().
    LossBreakdown loss(const std::vector<Example>& batch);

    // Accumulates gradients for the conditioning parameters of the batch
    // given to the last loss() call. Frozen parameters receive none.
    void backward();

    void zero_grad();

    // SGD step over trainable parameters.
    void apply_gradients(double lr);

    void visit_params(const ParamVisitor& fn);

    // FNV hash over the frozen parameters' raw bytes.
    std::uint64_t frozen_param_hash();

    // Exposed for the steerability task and tests.
    TextEncoderStub& text_encoder() { return text_; }

private:
    struct ExampleCache;

    Vec run_policy_path(const Mat& final_repr, const Mat& prompt_embedding,
                        ForwardTrace* trace, ExampleCache* cache);
    Mat board_tokens(const enc::InputPlanes& planes) const;

    ModelConfig config_;

    // Frozen backbone.
    Linear input_block_;
    std::vector<EncoderBlock> backbone_;
    Linear policy_embedder_;       // PE
    Linear policy_head_;           // PH over flattened tokens
    Linear value_head_;            // frozen WDL head
    Linear moves_left_head_;       // frozen moves-left head

    // Conditioning branch.
    std::vector<ControlBlock> control_;
    std::vector<Linear> zero_proj_;     // Z_n

    // Controllable policy head.
    Linear policy_embedder_hat_;   // cloned PE
    LayerNorm policy_ln_;
    MultiheadAttention policy_cross_;
    Linear policy_head_hat_;       // cloned PH
    Linear zero_proj_policy_;      // Z_pi

    // Auxiliary heads (outcome and moves-left are residual updates over the
    // frozen heads; termination and delay are fresh).
    Linear outcome_resid_;
    Linear moves_left_resid_;
    Linear termination_head_;
    Linear delay_head_;

    TextEncoderStub text_;

    std::vector<ExampleCache> batch_cache_;
    const std::vector<Example>* last_batch_ = nullptr;
};

}  // namespace steerchess::model
