#include "lexcomp/model/model.h"

#include <algorithm>
#include <bit>
#include <fstream>

#include "lexcomp/autodiff/ops.h"
#include "lexcomp/errors.h"
#include "lexcomp/io/little_endian.h"
#include "lexcomp/model/tagging.h"
#include "lexcomp/tasks/serialize.h"

namespace lexcomp::model {
namespace {

using embeddings::LayerMode;

constexpr char kMagic[4] = {'L', 'C', 'K', 'P'};
constexpr uint32_t kVersion = 1;

std::size_t argmax(const ad::Tensor& t) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] > t[best]) best = i;
  }
  return best;
}

}  // namespace

std::string_view layer_mode_name(LayerMode mode) {
  return mode == LayerMode::kTop ? "Top" : "All";
}

LayerMode parse_layer_mode(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "top") return LayerMode::kTop;
  if (lower == "all") return LayerMode::kAll;
  throw ConfigError("unknown layer mode '" + std::string(name) + "' (expected Top or All)");
}

EmbeddedExample embed_example(const tasks::Example& example, const tasks::TaskSchema& schema,
                              const embeddings::EmbeddingSource& source) {
  EmbeddedExample out;
  if (schema.tagging || schema.span_arity > 0) {
    if (example.tokens.empty()) throw ContractError("example " + example.id + " has no tokens");
    out.sentence = source.embed(example.tokens);
  }
  if (schema.extra_arity > 0) {
    if (!example.extra || example.extra->empty()) {
      throw ContractError("example " + example.id + " lacks the extra input its task needs");
    }
    out.extra = source.embed(*example.extra);
  }
  out.span = example.span;
  if (schema.tagging) {
    if (example.tags.size() != example.tokens.size()) {
      throw ContractError("example " + example.id + ": tag count differs from token count");
    }
    for (const std::string& tag : example.tags) out.gold_tags.push_back(schema.label_index(tag));
  } else {
    out.gold = schema.label_index(example.label);
  }
  return out;
}

ProbeModel::ProbeModel(tasks::TaskSchema schema, ModelConfig config, std::size_t embedding_dim,
                       std::size_t num_layers, uint64_t seed)
    : schema_(std::move(schema)),
      config_(config),
      embedding_dim_(embedding_dim),
      num_layers_(num_layers),
      seed_(seed) {
  if (embedding_dim_ == 0 || num_layers_ == 0) {
    throw ConfigError("embedding dimension and layer count must be positive");
  }
  if (config_.layer_mode == LayerMode::kAll) {
    if (num_layers_ < 2) {
      throw ConfigError("layer mode All needs a multi-layer representation; this one has " +
                        std::to_string(num_layers_) + " layer");
    }
    mix_ = std::make_unique<embeddings::ScalarMix>(num_layers_);
  }
  if (schema_.labels.size() < 2) throw ConfigError("task schema needs at least two labels");
  if (!schema_.tagging && schema_.span_arity + schema_.extra_arity == 0) {
    throw ConfigError("task schema selects no input vectors");
  }
  Rng rng(Rng::derive(seed_, "init"));
  encoder_ = std::make_unique<Encoder>(EncoderConfig{config_.encoder, embedding_dim_}, rng);
  const std::size_t width = encoder_->config().output_dim();
  ClassifierConfig head;
  head.input_dim = schema_.tagging ? width : width * (schema_.span_arity + schema_.extra_arity);
  head.num_labels = schema_.labels.size();
  head.hidden_dim = config_.hidden_dim;
  head.dropout = config_.dropout;
  head_ = std::make_unique<ClassifierHead>(head, rng);
}

std::vector<ad::Node> ProbeModel::encode(const embeddings::LayeredSequence& seq) const {
  if (seq.dim != embedding_dim_) {
    throw ContractError("embedding dimension " + std::to_string(seq.dim) +
                        " differs from the model's " + std::to_string(embedding_dim_));
  }
  if (seq.num_layers != num_layers_) {
    throw ContractError("representation has " + std::to_string(seq.num_layers) +
                        " layers, the model was built for " + std::to_string(num_layers_));
  }
  return (*encoder_)(embeddings::mix_layers(seq, config_.layer_mode, mix_.get()));
}

ad::Node ProbeModel::features(const EmbeddedExample& example) const {
  if (schema_.tagging) throw ContractError("features called on a tagging model");
  std::vector<ad::Node> u;
  if (schema_.span_arity > 0) u = encode(example.sentence);
  std::vector<ad::Node> extra;
  if (schema_.extra_arity > 0) {
    if (!example.extra) throw ContractError("example lacks the extra input its task needs");
    extra = encode(*example.extra);
  }
  return span_vector(u, example.span, extra, SpanLayout{schema_.span_arity, schema_.extra_arity});
}

ad::Node ProbeModel::classify(const EmbeddedExample& example, bool train, Rng& rng) const {
  return (*head_)(features(example), train, rng);
}

std::vector<ad::Node> ProbeModel::tag_distributions(const EmbeddedExample& example, bool train,
                                                    Rng& rng) const {
  if (!schema_.tagging) throw ContractError("tag_distributions called on a classifier");
  std::vector<ad::Node> out;
  for (const ad::Node& u : encode(example.sentence)) out.push_back((*head_)(u, train, rng));
  return out;
}

ad::Node ProbeModel::loss(const EmbeddedExample& example, bool train, Rng& rng) const {
  if (!schema_.tagging) return ad::cross_entropy(classify(example, train, rng), example.gold);
  const std::vector<ad::Node> dists = tag_distributions(example, train, rng);
  if (dists.size() != example.gold_tags.size()) {
    throw ContractError("tag count differs from token count");
  }
  std::vector<ad::Node> terms;
  terms.reserve(dists.size());
  for (std::size_t i = 0; i < dists.size(); ++i) {
    terms.push_back(ad::cross_entropy(dists[i], example.gold_tags[i]));
  }
  return ad::scale(ad::add_n(terms), 1.0 / static_cast<double>(terms.size()));
}

std::size_t ProbeModel::predict_label(const EmbeddedExample& example) const {
  Rng unused(0);
  return argmax(classify(example, false, unused).value());
}

std::vector<std::string> ProbeModel::predict_tags(const EmbeddedExample& example) const {
  Rng unused(0);
  std::vector<std::vector<double>> dists;
  for (const ad::Node& d : tag_distributions(example, false, unused)) {
    dists.push_back(d.value().values());
  }
  return decode_tags(dists, schema_.labels);
}

std::vector<ad::Parameter*> ProbeModel::parameters() {
  std::vector<ad::Parameter*> out;
  if (mix_) {
    out.push_back(&mix_->raw_weights());
    out.push_back(&mix_->gamma());
  }
  for (ad::Parameter* p : encoder_->parameters()) out.push_back(p);
  for (ad::Parameter* p : head_->parameters()) out.push_back(p);
  return out;
}

std::vector<ad::Tensor> ProbeModel::snapshot() const {
  std::vector<ad::Tensor> out;
  for (ad::Parameter* p : const_cast<ProbeModel*>(this)->parameters()) out.push_back(p->value());
  return out;
}

void ProbeModel::restore(const std::vector<ad::Tensor>& values) {
  const auto params = parameters();
  if (values.size() != params.size()) throw ContractError("snapshot has the wrong length");
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (values[i].shape() != params[i]->value().shape()) {
      throw ContractError("snapshot shape differs for " + params[i]->name());
    }
    params[i]->mutable_value() = values[i];
  }
}

const embeddings::ScalarMix& ProbeModel::mix() const {
  if (!mix_) throw ConfigError("model uses the top layer only and has no layer mix");
  return *mix_;
}

void ProbeModel::save(const std::filesystem::path& path) const {
  tasks::Json header;
  header["encoder"] = encoder_name(config_.encoder);
  header["layer_mode"] = layer_mode_name(config_.layer_mode);
  header["hidden_dim"] = config_.hidden_dim;
  header["dropout"] = config_.dropout;
  header["embedding_dim"] = embedding_dim_;
  header["num_layers"] = num_layers_;
  header["seed"] = seed_;
  header["schema"] = tasks::schema_to_json(schema_);
  tasks::Json params = tasks::Json::array();
  const auto all = const_cast<ProbeModel*>(this)->parameters();
  for (const ad::Parameter* p : all) {
    params.push_back({{"name", p->name()}, {"shape", p->value().shape()}});
  }
  header["parameters"] = params;
  const std::string text = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write checkpoint " + path.string());
  out.write(kMagic, 4);
  io::put_little<uint32_t>(out, kVersion);
  io::put_little<uint32_t>(out, static_cast<uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const ad::Parameter* p : all) {
    for (double v : p->value().values()) {
      io::put_little<uint32_t>(out, std::bit_cast<uint32_t>(static_cast<float>(v)));
    }
  }
  if (!out) throw FormatError("write failed for checkpoint " + path.string());
}

ProbeModel ProbeModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read checkpoint " + path.string());
  io::LittleEndianReader reader(in);
  char magic[4];
  uint32_t version = 0;
  uint32_t length = 0;
  if (!reader.bytes(magic, 4) || !std::equal(magic, magic + 4, kMagic)) {
    throw FormatError(path.string() + " is not a model checkpoint");
  }
  if (!reader.little(version) || version != kVersion) {
    throw FormatError(path.string() + ": unsupported checkpoint version");
  }
  if (!reader.little(length)) throw FormatError(path.string() + ": truncated header");
  std::string text(length, '\0');
  if (!reader.bytes(text.data(), length)) throw FormatError(path.string() + ": truncated header");

  try {
    const tasks::Json header = tasks::Json::parse(text);
    ModelConfig config;
    config.encoder = parse_encoder(header.at("encoder").get<std::string>());
    config.layer_mode = parse_layer_mode(header.at("layer_mode").get<std::string>());
    config.hidden_dim = header.at("hidden_dim").get<std::size_t>();
    config.dropout = header.at("dropout").get<double>();
    ProbeModel model(tasks::schema_from_json(header.at("schema")), config,
                     header.at("embedding_dim").get<std::size_t>(),
                     header.at("num_layers").get<std::size_t>(),
                     header.at("seed").get<uint64_t>());
    const auto params = model.parameters();
    const auto& listed = header.at("parameters");
    if (listed.size() != params.size()) {
      throw FormatError(path.string() + ": parameter list does not match the configuration");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (listed[i].at("name").get<std::string>() != params[i]->name() ||
          listed[i].at("shape").get<ad::Shape>() != params[i]->value().shape()) {
        throw FormatError(path.string() + ": parameter " + std::to_string(i) +
                          " does not match the configuration");
      }
      ad::Tensor& value = params[i]->mutable_value();
      for (std::size_t k = 0; k < value.size(); ++k) {
        uint32_t bits = 0;
        if (!reader.little(bits)) {
          throw FormatError(path.string() + ": truncated block for " + params[i]->name());
        }
        value[k] = static_cast<double>(std::bit_cast<float>(bits));
      }
    }
    return model;
  } catch (const nlohmann::json::exception& err) {
    throw FormatError(path.string() + ": malformed checkpoint header: " + err.what());
  }
}

}  // namespace lexcomp::model
