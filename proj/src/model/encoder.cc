#include "lexcomp/model/encoder.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "lexcomp/autodiff/ops.h"
#include "lexcomp/errors.h"

namespace lexcomp::model {

std::string_view encoder_name(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::kNone: return "None";
    case EncoderKind::kBiLm: return "biLM";
    case EncoderKind::kAtt: return "Att";
  }
  return "None";
}

EncoderKind parse_encoder(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "none") return EncoderKind::kNone;
  if (lower == "bilm" || lower == "bilstm") return EncoderKind::kBiLm;
  if (lower == "att" || lower == "attention") return EncoderKind::kAtt;
  throw ConfigError("unknown encoding '" + std::string(name) + "' (none, bilm, att)");
}

std::vector<ad::Node> encode_none(std::span<const ad::Node> v) {
  return {v.begin(), v.end()};
}

std::vector<ad::Node> encode_attention(std::span<const ad::Node> v) {
  const ad::Node stacked = ad::stack_rows(v);      // [n x d]
  const ad::Node columns = ad::transpose(stacked);  // [d x n]
  std::vector<ad::Node> out;
  out.reserve(v.size());
  for (const ad::Node& vi : v) {
    const ad::Node weights = ad::softmax(ad::matvec(stacked, vi));
    const ad::Node context = ad::matvec(columns, weights);
    std::vector<ad::Node> parts{vi, context};
    out.push_back(ad::concat(parts));
  }
  return out;
}

ad::Tensor xavier_uniform(std::size_t rows, std::size_t cols, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  ad::Tensor t = ad::Tensor::zeros({rows, cols});
  for (double& v : t.data()) v = rng.uniform(-bound, bound);
  return t;
}

LstmParams LstmParams::init(const std::string& prefix, std::size_t input_dim,
                            std::size_t hidden_dim, Rng& rng) {
  return LstmParams{
      ad::Parameter(prefix + ".w", xavier_uniform(4 * hidden_dim, input_dim, rng)),
      ad::Parameter(prefix + ".u", xavier_uniform(4 * hidden_dim, hidden_dim, rng)),
      ad::Parameter(prefix + ".b", ad::Tensor::zeros({4 * hidden_dim})),
  };
}

std::vector<ad::Node> run_lstm(const LstmParams& params, std::span<const ad::Node> v) {
  const std::size_t h = params.hidden_dim();
  ad::Node hidden = ad::constant(ad::Tensor::zeros({h}));
  ad::Node cell = ad::constant(ad::Tensor::zeros({h}));
  std::vector<ad::Node> out;
  out.reserve(v.size());
  for (const ad::Node& x : v) {
    const ad::Node gates = ad::add(
        ad::add(ad::matvec(params.w.node(), x), ad::matvec(params.u.node(), hidden)),
        params.b.node());
    const ad::Node in_gate = ad::sigmoid(ad::slice(gates, 0, h));
    const ad::Node forget_gate = ad::sigmoid(ad::slice(gates, h, h));
    const ad::Node candidate = ad::tanh(ad::slice(gates, 2 * h, h));
    const ad::Node out_gate = ad::sigmoid(ad::slice(gates, 3 * h, h));
    cell = ad::add(ad::mul(forget_gate, cell), ad::mul(in_gate, candidate));
    hidden = ad::mul(out_gate, ad::tanh(cell));
    out.push_back(hidden);
  }
  return out;
}

std::vector<ad::Node> encode_bilstm(std::span<const ad::Node> v, const BiLstmParams& params) {
  const std::vector<ad::Node> fwd = run_lstm(params.forward, v);
  std::vector<ad::Node> reversed(v.rbegin(), v.rend());
  std::vector<ad::Node> bwd = run_lstm(params.backward, reversed);
  std::reverse(bwd.begin(), bwd.end());
  std::vector<ad::Node> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::vector<ad::Node> parts{fwd[i], bwd[i]};
    out.push_back(ad::concat(parts));
  }
  return out;
}

Encoder::Encoder(EncoderConfig config, Rng& rng) : config_(config) {
  if (config_.input_dim == 0) throw ConfigError("encoder input dimension must be positive");
  if (config_.kind == EncoderKind::kBiLm) {
    lstm_.forward = LstmParams::init("encoder.forward", config_.input_dim, config_.input_dim, rng);
    lstm_.backward = LstmParams::init("encoder.backward", config_.input_dim, config_.input_dim, rng);
  }
}

std::vector<ad::Node> Encoder::operator()(std::span<const ad::Node> v) const {
  switch (config_.kind) {
    case EncoderKind::kNone: return encode_none(v);
    case EncoderKind::kBiLm: return encode_bilstm(v, lstm_);
    case EncoderKind::kAtt: return encode_attention(v);
  }
  return encode_none(v);
}

std::vector<ad::Parameter*> Encoder::parameters() {
  if (config_.kind != EncoderKind::kBiLm) return {};
  return {&lstm_.forward.w, &lstm_.forward.u, &lstm_.forward.b,
          &lstm_.backward.w, &lstm_.backward.u, &lstm_.backward.b};
}

}  // namespace lexcomp::model
