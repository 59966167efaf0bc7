#ifndef LEXCOMP_MODEL_ENCODER_H_
#define LEXCOMP_MODEL_ENCODER_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexcomp/autodiff/node.h"
#include "lexcomp/rng.h"

namespace lexcomp::model {

enum class EncoderKind { kNone, kBiLm, kAtt };

std::string_view encoder_name(EncoderKind kind);    // "None", "biLM", "Att"
EncoderKind parse_encoder(std::string_view name);   // case-insensitive

struct EncoderConfig {
  EncoderKind kind = EncoderKind::kNone;
  std::size_t input_dim = 0;

  // d for None, 2d for biLM (both directions) and Att (token ; context).
  std::size_t output_dim() const { return kind == EncoderKind::kNone ? input_dim : 2 * input_dim; }
};

// u_i = v_i.
std::vector<ad::Node> encode_none(std::span<const ad::Node> v);

// u_i = [v_i ; sum_j a_ij v_j] with a_i = softmax_j(v_i . v_j), j over all
// tokens including i. No parameters.
std::vector<ad::Node> encode_attention(std::span<const ad::Node> v);

// One LSTM direction: gates = W x + U h + b split as (input, forget, cell
// candidate, output); c' = f*c + i*tanh(g); h' = o*tanh(c'). Zero initial
// state.
struct LstmParams {
  ad::Parameter w;  // [4h x d]
  ad::Parameter u;  // [4h x h]
  ad::Parameter b;  // [4h]

  static LstmParams init(const std::string& prefix, std::size_t input_dim,
                         std::size_t hidden_dim, Rng& rng);
  std::size_t hidden_dim() const { return b.value().size() / 4; }
};

// Hidden states h_1..h_n of one left-to-right pass.
std::vector<ad::Node> run_lstm(const LstmParams& params, std::span<const ad::Node> v);

struct BiLstmParams {
  LstmParams forward;
  LstmParams backward;
};

// u_i = [forward h_i ; backward h_i], the backward pass running n..1.
std::vector<ad::Node> encode_bilstm(std::span<const ad::Node> v, const BiLstmParams& params);

// Xavier-uniform initialisation for a [rows x cols] matrix.
ad::Tensor xavier_uniform(std::size_t rows, std::size_t cols, Rng& rng);

// The configured encoder with its parameters (biLM only).
class Encoder {
 public:
  Encoder(EncoderConfig config, Rng& rng);

  const EncoderConfig& config() const { return config_; }
  std::vector<ad::Node> operator()(std::span<const ad::Node> v) const;
  std::vector<ad::Parameter*> parameters();

 private:
  EncoderConfig config_;
  BiLstmParams lstm_;
};

}  // namespace lexcomp::model

#endif  // LEXCOMP_MODEL_ENCODER_H_
