#include "steerchess/model/text_stub.hpp"

#include <stdexcept>

#include "steerchess/util/rng.hpp"
#include "steerchess/util/text.hpp"

namespace steerchess::model {

LoraAdapter::LoraAdapter(int in_dim, int out_dim, int rank_, double alpha_,
                         bool rs_scaling_, std::mt19937_64& rng)
    : rank(rank_), alpha(alpha_), rs_scaling(rs_scaling_) {
    if (rank <= 0) throw std::invalid_argument("LoRA rank must be positive");
    a = Mat::Zero(rank, in_dim);
    init_matrix(a, rng, 1.0 / std::sqrt(static_cast<double>(in_dim)));
    b = Mat::Zero(out_dim, rank);
    da = Mat::Zero(rank, in_dim);
    db = Mat::Zero(out_dim, rank);
}

double LoraAdapter::scale() const {
    return rs_scaling ? alpha / std::sqrt(static_cast<double>(rank))
                      : alpha / static_cast<double>(rank);
}

void LoraAdapter::zero_grad() {
    da.setZero();
    db.setZero();
}

void LoraAdapter::visit(const std::string& prefix, bool trainable,
                        const ParamVisitor& fn) {
    fn(Param{prefix + ".a", &a, &da, trainable});
    fn(Param{prefix + ".b", &b, &db, trainable});
}

Mat lora_effective_weight(const Mat& w, const LoraAdapter& adapter) {
    if (adapter.rank <= 0) throw std::invalid_argument("lora_effective_weight: rank 0");
    if (adapter.b.rows() != w.rows() || adapter.a.cols() != w.cols()) {
        throw std::invalid_argument("lora_effective_weight: shape mismatch");
    }
    return w + adapter.scale() * adapter.b * adapter.a;
}

std::vector<std::uint32_t> tokenize(const std::string& text) {
    std::vector<std::uint32_t> ids;
    for (const std::string& word : util::split_whitespace(text)) {
        ids.push_back(static_cast<std::uint32_t>(util::fnv1a64(word) % 65521));
    }
    return ids;
}

TextEncoderStub::TextEncoderStub(int text_dim, int lora_rank, double lora_alpha,
                                 bool rs_lora, std::uint64_t seed)
    : text_dim_(text_dim), seed_(seed) {
    auto rng = util::make_rng(seed, "text-stub");
    projection = Mat::Zero(text_dim, text_dim);
    init_matrix(projection, rng, 1.0 / std::sqrt(static_cast<double>(text_dim)));
    dproj_unused_ = Mat::Zero(text_dim, text_dim);
    adapter = LoraAdapter(text_dim, text_dim, lora_rank, lora_alpha, rs_lora, rng);
}

Mat TextEncoderStub::token_row(std::uint32_t token_id) const {
    // Fixed per-token row derived from (seed, token); regeneration keeps the
    // table implicit and the stub deterministic.
    std::uint64_t state = util::mix_seed(seed_, 0x7e11u ^ token_id);
    Mat row(1, text_dim_);
    for (int i = 0; i < text_dim_; ++i) {
        // Two splitmix draws fold into one approximately normal value.
        const double u1 =
            static_cast<double>(util::splitmix64(state) >> 11) * 0x1.0p-53;
        const double u2 =
            static_cast<double>(util::splitmix64(state) >> 11) * 0x1.0p-53;
        row(0, i) = std::sqrt(-2.0 * std::log(std::max(u1, 1e-12))) *
                    std::cos(6.283185307179586 * u2);
    }
    return row;
}

Mat TextEncoderStub::embed(const std::vector<std::uint32_t>& token_ids) {
    if (token_ids.empty()) {
        throw std::invalid_argument("TextEncoderStub::embed: empty prompt");
    }
    raw_cache_.resize(static_cast<Eigen::Index>(token_ids.size()), text_dim_);
    for (std::size_t i = 0; i < token_ids.size(); ++i) {
        raw_cache_.row(static_cast<Eigen::Index>(i)) = token_row(token_ids[i]);
    }
    const Mat effective = lora_effective_weight(projection, adapter);
    return raw_cache_ * effective.transpose();
}

void TextEncoderStub::backward(const Mat& de) {
    if (!accumulate_) return;
    // out = raw (P + s B A)^T; dM = s * de^T raw with M = B A.
    const double s = adapter.scale();
    const Mat dm = s * de.transpose() * raw_cache_;
    adapter.db.noalias() += dm * adapter.a.transpose();
    adapter.da.noalias() += adapter.b.transpose() * dm;
}

void TextEncoderStub::visit(const ParamVisitor& fn) {
    fn(Param{"text.projection", &projection, &dproj_unused_, false});
    adapter.visit("text.lora", true, fn);
}

void TextEncoderStub::zero_grad() { adapter.zero_grad(); }

}  // namespace steerchess::model
