#include "steerchess/model/network.hpp"

#include <cmath>
#include <stdexcept>

#include "steerchess/util/rng.hpp"

namespace steerchess::model {

namespace {

Mat flatten_rowmajor(const Mat& x) {
    Mat out(1, x.rows() * x.cols());
    for (Eigen::Index t = 0; t < x.rows(); ++t) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out(0, t * x.cols() + j) = x(t, j);
        }
    }
    return out;
}

Mat unflatten_rowmajor(const Mat& flat, Eigen::Index rows, Eigen::Index cols) {
    Mat out(rows, cols);
    for (Eigen::Index t = 0; t < rows; ++t) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            out(t, j) = flat(0, t * cols + j);
        }
    }
    return out;
}

Vec softmax_vec(const Vec& logits) {
    const double m = logits.maxCoeff();
    Vec e = (logits.array() - m).exp();
    return e / e.sum();
}

// Head-and-square-averaged attention weights: average the per-head maps
// over heads, then over query rows (board squares).
Vec head_square_average(const Mat& averaged_over_heads) {
    if (averaged_over_heads.size() == 0) return Vec();
    return averaged_over_heads.colwise().mean().transpose();
}

double huber(double residual, double delta) {
    const double a = std::abs(residual);
    if (a <= delta) return 0.5 * residual * residual;
    return delta * (a - 0.5 * delta);
}

double huber_grad(double residual, double delta) {
    return std::clamp(residual, -delta, delta);
}

}  // namespace

ModelConfig bt4_scale_config() {
    ModelConfig cfg;
    cfg.layers = 15;
    cfg.dim = 1024;
    cfg.heads = 32;
    cfg.lora_rank = 16;
    cfg.lora_alpha = 16.0;
    cfg.rs_lora = true;
    return cfg;
}

struct ConditioningModel::ExampleCache {};

ConditioningModel::ConditioningModel(const ModelConfig& config) : config_(config) {
    if (config_.dim % config_.heads != 0) {
        throw std::invalid_argument("model dim must be divisible by heads");
    }
    if (config_.layers < 1) throw std::invalid_argument("need at least one layer");

    auto rng = util::make_rng(config_.init_seed, "model-init");
    const int d = config_.dim;

    input_block_ = Linear(config_.input_planes, d, rng);
    for (int n = 0; n < config_.layers; ++n) {
        backbone_.emplace_back(d, config_.heads, config_.ffn_hidden(), rng);
    }
    policy_embedder_ = Linear(d, d, rng);
    policy_head_ = Linear(config_.board_tokens * d, config_.policy_dim, rng);
    value_head_ = Linear(d, 3, rng);
    moves_left_head_ = Linear(d, 1, rng);

    for (int n = 0; n < config_.layers; ++n) {
        control_.emplace_back(d, config_.text_dim, config_.heads, config_.ffn_hidden(), rng);
        if (config_.clone_control_from_backbone) {
            control_.back().clone_from(backbone_[static_cast<std::size_t>(n)]);
        }
        zero_proj_.emplace_back(d, d, rng, /*zero_init=*/true);
    }

    policy_embedder_hat_ = policy_embedder_;  // cloned
    policy_ln_ = LayerNorm(d);
    policy_cross_ = MultiheadAttention(d, config_.text_dim, config_.heads, rng);
    policy_head_hat_ = policy_head_;  // cloned
    zero_proj_policy_ = Linear(config_.policy_dim, config_.policy_dim, rng, true);

    outcome_resid_ = Linear(d, 3, rng, /*zero_init=*/true);
    moves_left_resid_ = Linear(d, 1, rng, /*zero_init=*/true);
    termination_head_ = Linear(d, config_.termination_classes, rng);
    delay_head_ = Linear(d, 1, rng);

    text_ = TextEncoderStub(config_.text_dim, config_.lora_rank, config_.lora_alpha,
                            config_.rs_lora, config_.init_seed);

    // Frozen components never accumulate parameter gradients.
    input_block_.set_accumulate(false);
    for (auto& block : backbone_) block.set_accumulate(false);
    policy_embedder_.set_accumulate(false);
    policy_head_.set_accumulate(false);
    value_head_.set_accumulate(false);
    moves_left_head_.set_accumulate(false);
}

Mat ConditioningModel::board_tokens(const enc::InputPlanes& planes) const {
    Mat tokens(config_.board_tokens, config_.input_planes);
    for (int sq = 0; sq < config_.board_tokens; ++sq) {
        for (int p = 0; p < config_.input_planes; ++p) {
            tokens(sq, p) =
                static_cast<double>(planes.values[static_cast<std::size_t>(p * 64 + sq)]);
        }
    }
    return tokens;
}

Mat ConditioningModel::embed_prompt(const std::vector<std::uint32_t>& token_ids) {
    return text_.embed(token_ids);
}

Vec ConditioningModel::forward(const enc::InputPlanes& planes, const Mat& prompt_embedding,
                               ForwardTrace* trace) {
    const Mat input = input_block_.forward(board_tokens(planes));
    if (trace) {
        *trace = ForwardTrace{};
        trace->input = input;
    }

    Mat x = input;          // h_{n-1} + r_{n-1}
    Mat control_state = input;  // previous conditioning state (sequential mode)
    for (int n = 0; n < config_.layers; ++n) {
        const Mat h = backbone_[static_cast<std::size_t>(n)].forward(x);
        const Mat& control_in = config_.sequential_controlnet ? control_state : x;
        const Mat ht =
            control_[static_cast<std::size_t>(n)].forward(control_in, prompt_embedding);
        const Mat r = zero_proj_[static_cast<std::size_t>(n)].forward(ht);
        if (trace) {
            trace->hidden.push_back(h);
            trace->residuals.push_back(r);
            trace->control.push_back(ht);
            trace->cross_attention_avg.push_back(head_square_average(
                control_[static_cast<std::size_t>(n)].cross_attn.averaged_attention()));
        }
        x = h + r;
        control_state = ht;
    }

    const Vec logits = run_policy_path(x, prompt_embedding, trace, nullptr);
    if (trace) {
        trace->logits = logits;
        trace->pooled = x.colwise().mean().transpose();
    }
    return logits;
}

Vec ConditioningModel::run_policy_path(const Mat& final_repr, const Mat& prompt_embedding,
                                       ForwardTrace* trace, ExampleCache*) {
    const Mat pe = policy_embedder_.forward(final_repr);
    const Mat base = policy_head_.forward(flatten_rowmajor(pe));

    const Mat z = policy_embedder_hat_.forward(final_repr);
    const Mat zn = policy_ln_.forward(z);
    const Mat attended = policy_cross_.forward(zn, prompt_embedding);
    const Mat u = z + attended;
    const Mat uh = policy_head_hat_.forward(flatten_rowmajor(u));
    const Mat r_pi = zero_proj_policy_.forward(uh);

    if (trace) {
        trace->policy_cross_attention_avg =
            head_square_average(policy_cross_.averaged_attention());
        trace->policy_residual = r_pi.row(0).transpose();
    }
    return (base + r_pi).row(0).transpose();
}

Vec ConditioningModel::forward_frozen(const enc::InputPlanes& planes, ForwardTrace* trace) {
    const Mat input = input_block_.forward(board_tokens(planes));
    if (trace) {
        *trace = ForwardTrace{};
        trace->input = input;
    }
    Mat x = input;
    for (auto& block : backbone_) {
        x = block.forward(x);
        if (trace) trace->hidden.push_back(x);
    }
    const Mat pe = policy_embedder_.forward(x);
    const Mat logits = policy_head_.forward(flatten_rowmajor(pe));
    if (trace) {
        trace->frozen_logits = logits.row(0).transpose();
        trace->pooled = x.colwise().mean().transpose();
    }
    return logits.row(0).transpose();
}

AuxOutputs ConditioningModel::aux_forward(const ForwardTrace& trace) {
    if (trace.pooled.size() == 0) {
        throw std::invalid_argument("aux_forward: trace has no pooled representation");
    }
    const Mat pooled = trace.pooled.transpose();  // 1 x d
    AuxOutputs out;
    const Mat outcome_logits =
        value_head_.forward(pooled) + outcome_resid_.forward(pooled);
    out.outcome_probs = softmax_vec(outcome_logits.row(0).transpose());
    out.value = out.outcome_probs(0) - out.outcome_probs(2);
    out.moves_left =
        (moves_left_head_.forward(pooled) + moves_left_resid_.forward(pooled))(0, 0);
    const Mat term_logits = termination_head_.forward(pooled);
    out.termination_probs = softmax_vec(term_logits.row(0).transpose());
    out.move_delay = delay_head_.forward(pooled)(0, 0);
    return out;
}

LossBreakdown ConditioningModel::loss(const std::vector<Example>& batch) {
    if (batch.empty()) throw std::invalid_argument("loss: empty batch");
    LossBreakdown sum;
    for (const Example& ex : batch) {
        const Mat e = embed_prompt(ex.prompt_tokens);
        ForwardTrace trace;
        const Vec logits = forward(ex.planes, e, &trace);

        // Policy cross-entropy over the legal set.
        double max_logit = -std::numeric_limits<double>::infinity();
        for (int idx : ex.legal_indices) max_logit = std::max(max_logit, logits(idx));
        double denom = 0.0;
        for (int idx : ex.legal_indices) denom += std::exp(logits(idx) - max_logit);
        sum.policy += -(logits(ex.target_index) - max_logit - std::log(denom));

        if (ex.outcome || ex.moves_left || ex.termination_class || ex.move_delay) {
            const AuxOutputs aux = aux_forward(trace);
            if (ex.outcome) {
                const int cls = 1 - *ex.outcome;  // win=0, draw=1, loss=2
                sum.outcome += -std::log(std::max(aux.outcome_probs(cls), 1e-300));
            }
            if (ex.moves_left) {
                sum.moves_left += huber(aux.moves_left - *ex.moves_left, config_.huber_delta);
            }
            if (ex.termination_class) {
                sum.termination +=
                    -std::log(std::max(aux.termination_probs(*ex.termination_class), 1e-300));
            }
            if (ex.move_delay) {
                sum.move_delay += huber(aux.move_delay - *ex.move_delay, config_.huber_delta);
            }
        }
    }
    const double n = static_cast<double>(batch.size());
    sum.policy /= n;
    sum.outcome /= n;
    sum.moves_left /= n;
    sum.termination /= n;
    sum.move_delay /= n;
    sum.total = config_.policy_weight * sum.policy + config_.outcome_weight * sum.outcome +
                config_.moves_left_weight * sum.moves_left +
                config_.termination_weight * sum.termination +
                config_.delay_weight * sum.move_delay;
    if (!std::isfinite(sum.total)) {
        throw std::runtime_error("loss: non-finite value");
    }
    last_batch_ = &batch;
    return sum;
}

void ConditioningModel::backward() {
    if (last_batch_ == nullptr) throw std::logic_error("backward: call loss() first");
    const std::vector<Example>& batch = *last_batch_;
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    const int d = config_.dim;
    const Eigen::Index tokens = config_.board_tokens;

    for (const Example& ex : batch) {
        // Re-run the forward pass so every module cache belongs to this
        // example, then push gradients back immediately.
        const Mat e = embed_prompt(ex.prompt_tokens);

        const Mat input = input_block_.forward(board_tokens(ex.planes));
        Mat x = input;
        Mat control_state = input;
        for (int n = 0; n < config_.layers; ++n) {
            const Mat h = backbone_[static_cast<std::size_t>(n)].forward(x);
            const Mat& control_in = config_.sequential_controlnet ? control_state : x;
            const Mat ht =
                control_[static_cast<std::size_t>(n)].forward(control_in, e);
            const Mat r = zero_proj_[static_cast<std::size_t>(n)].forward(ht);
            x = h + r;
            control_state = ht;
        }
        const Mat final_repr = x;

        // Policy path forward (modules cache their inputs).
        const Mat pe = policy_embedder_.forward(final_repr);
        const Mat base = policy_head_.forward(flatten_rowmajor(pe));
        const Mat z = policy_embedder_hat_.forward(final_repr);
        const Mat zn = policy_ln_.forward(z);
        const Mat attended = policy_cross_.forward(zn, e);
        const Mat u = z + attended;
        const Mat uh = policy_head_hat_.forward(flatten_rowmajor(u));
        const Mat r_pi = zero_proj_policy_.forward(uh);
        const Vec logits = (base + r_pi).row(0).transpose();

        // Loss gradient wrt logits (legal-masked softmax CE).
        Vec probs = Vec::Zero(config_.policy_dim);
        {
            double max_logit = -std::numeric_limits<double>::infinity();
            for (int idx : ex.legal_indices) max_logit = std::max(max_logit, logits(idx));
            double denom = 0.0;
            for (int idx : ex.legal_indices) denom += std::exp(logits(idx) - max_logit);
            for (int idx : ex.legal_indices) {
                probs(idx) = std::exp(logits(idx) - max_logit) / denom;
            }
        }
        Mat dlogits = Mat::Zero(1, config_.policy_dim);
        const double policy_scale = config_.policy_weight * inv_n;
        for (int idx : ex.legal_indices) dlogits(0, idx) = policy_scale * probs(idx);
        dlogits(0, ex.target_index) -= policy_scale;

        // Policy path backward.
        const Mat duh = zero_proj_policy_.backward(dlogits);
        const Mat du = unflatten_rowmajor(policy_head_hat_.backward(duh), tokens, d);
        Mat de = Mat::Zero(e.rows(), e.cols());
        const Mat dzn = policy_cross_.backward(du, &de);
        Mat dz = du + policy_ln_.backward(dzn);
        Mat dfinal = policy_embedder_hat_.backward(dz);
        const Mat dpe = unflatten_rowmajor(policy_head_.backward(dlogits), tokens, d);
        dfinal += policy_embedder_.backward(dpe);

        // Aux heads.
        const bool want_aux =
            ex.outcome || ex.moves_left || ex.termination_class || ex.move_delay;
        if (want_aux) {
            const Mat pooled = final_repr.colwise().mean();
            Mat dpooled = Mat::Zero(1, d);
            if (ex.outcome) {
                const Mat outcome_logits =
                    value_head_.forward(pooled) + outcome_resid_.forward(pooled);
                const Vec p = softmax_vec(outcome_logits.row(0).transpose());
                Mat dout = Mat::Zero(1, 3);
                for (int c = 0; c < 3; ++c) dout(0, c) = config_.outcome_weight * inv_n * p(c);
                dout(0, 1 - *ex.outcome) -= config_.outcome_weight * inv_n;
                dpooled += value_head_.backward(dout);
                dpooled += outcome_resid_.backward(dout);
            }
            if (ex.moves_left) {
                const double pred = (moves_left_head_.forward(pooled) +
                                     moves_left_resid_.forward(pooled))(0, 0);
                Mat dml(1, 1);
                dml(0, 0) = config_.moves_left_weight * inv_n *
                            huber_grad(pred - *ex.moves_left, config_.huber_delta);
                dpooled += moves_left_head_.backward(dml);
                dpooled += moves_left_resid_.backward(dml);
            }
            if (ex.termination_class) {
                const Mat term_logits = termination_head_.forward(pooled);
                const Vec p = softmax_vec(term_logits.row(0).transpose());
                Mat dterm = Mat::Zero(1, config_.termination_classes);
                for (int c = 0; c < config_.termination_classes; ++c) {
                    dterm(0, c) = config_.termination_weight * inv_n * p(c);
                }
                dterm(0, *ex.termination_class) -= config_.termination_weight * inv_n;
                dpooled += termination_head_.backward(dterm);
            }
            if (ex.move_delay) {
                const double pred = delay_head_.forward(pooled)(0, 0);
                Mat ddl(1, 1);
                ddl(0, 0) = config_.delay_weight * inv_n *
                            huber_grad(pred - *ex.move_delay, config_.huber_delta);
                dpooled += delay_head_.backward(ddl);
            }
            // Mean pool spreads the gradient evenly over tokens.
            for (Eigen::Index t = 0; t < tokens; ++t) {
                dfinal.row(t) += dpooled.row(0) / static_cast<double>(tokens);
            }
        }

        // Reverse through the coupled layers. Each layer owns its modules,
        // so the caches from this example's forward loop are still valid.
        Mat dx = dfinal;
        Mat dc_next;  // sequential mode: gradient wrt the control state
        if (config_.sequential_controlnet) dc_next = Mat::Zero(tokens, d);
        for (int n = config_.layers - 1; n >= 0; --n) {
            Mat dht = zero_proj_[static_cast<std::size_t>(n)].backward(dx);
            if (config_.sequential_controlnet) dht += dc_next;
            const Mat dctrl_in = control_[static_cast<std::size_t>(n)].backward(dht, &de);
            const Mat dxb = backbone_[static_cast<std::size_t>(n)].backward(dx);
            if (config_.sequential_controlnet) {
                dc_next = dctrl_in;
                dx = dxb;
            } else {
                dx = dxb + dctrl_in;
            }
        }
        text_.backward(de);
    }
}

void ConditioningModel::zero_grad() {
    for (auto& block : backbone_) block.zero_grad();
    for (auto& block : control_) block.zero_grad();
    for (auto& proj : zero_proj_) proj.zero_grad();
    input_block_.zero_grad();
    policy_embedder_.zero_grad();
    policy_head_.zero_grad();
    value_head_.zero_grad();
    moves_left_head_.zero_grad();
    policy_embedder_hat_.zero_grad();
    policy_ln_.zero_grad();
    policy_cross_.zero_grad();
    policy_head_hat_.zero_grad();
    zero_proj_policy_.zero_grad();
    outcome_resid_.zero_grad();
    moves_left_resid_.zero_grad();
    termination_head_.zero_grad();
    delay_head_.zero_grad();
    text_.zero_grad();
}

void ConditioningModel::apply_gradients(double lr) {
    visit_params([lr](Param p) {
        if (!p.trainable) return;
        *p.value -= lr * *p.grad;
    });
}

void ConditioningModel::visit_params(const ParamVisitor& fn) {
    input_block_.visit("input.block", false, fn);
    for (std::size_t n = 0; n < backbone_.size(); ++n) {
        backbone_[n].visit("backbone.block" + std::to_string(n), false, fn);
    }
    policy_embedder_.visit("policy.pe", false, fn);
    policy_head_.visit("policy.ph", false, fn);
    value_head_.visit("value.frozen", false, fn);
    moves_left_head_.visit("moves_left.frozen", false, fn);
    for (std::size_t n = 0; n < control_.size(); ++n) {
        control_[n].visit("control.block" + std::to_string(n), true, fn);
        zero_proj_[n].visit("control.zero" + std::to_string(n), true, fn);
    }
    policy_embedder_hat_.visit("cph.pe_hat", true, fn);
    policy_ln_.visit("cph.ln", true, fn);
    policy_cross_.visit("cph.cross", true, fn);
    policy_head_hat_.visit("cph.ph_hat", true, fn);
    zero_proj_policy_.visit("cph.z_pi", true, fn);
    outcome_resid_.visit("aux.outcome_resid", true, fn);
    moves_left_resid_.visit("aux.moves_left_resid", true, fn);
    termination_head_.visit("aux.termination", true, fn);
    delay_head_.visit("aux.delay", true, fn);
    text_.visit(fn);
}

std::uint64_t ConditioningModel::frozen_param_hash() {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    visit_params([&h](Param p) {
        if (p.trainable) return;
        const auto* bytes = reinterpret_cast<const unsigned char*>(p.value->data());
        const std::size_t size = static_cast<std::size_t>(p.value->size()) * sizeof(double);
        for (std::size_t i = 0; i < size; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    });
    return h;
}

}  // namespace steerchess::model
