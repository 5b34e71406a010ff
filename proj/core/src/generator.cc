// Copyright 2026 The relpara Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relpara/generator.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "relpara/errors.h"
#include "relpara/nn/graph.h"

namespace relpara {

namespace {

using nn::Graph;
using nn::Matrix;
using nn::Parameter;
using nn::RowVector;
using nn::Var;

constexpr float kMasked = -1e9f;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Matrix SinusoidalPositions(int positions, int d) {
  Matrix pe(positions, d);
  for (int pos = 0; pos < positions; ++pos) {
    for (int i = 0; i < d; i += 2) {
      const double freq = std::pow(10000.0, -static_cast<double>(i) / d);
      pe(pos, i) = static_cast<float>(std::sin(pos * freq));
      if (i + 1 < d) pe(pos, i + 1) = static_cast<float>(std::cos(pos * freq));
    }
  }
  return pe;
}

Matrix LayerNormRows(const Matrix& x, const Matrix& gain, const Matrix& bias) {
  Matrix y(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const float mean = x.row(i).mean();
    const float var = (x.row(i).array() - mean).square().mean();
    const float inv = 1.0f / std::sqrt(var + 1e-5f);
    y.row(i) = ((x.row(i).array() - mean) * inv * gain.row(0).array() +
                bias.row(0).array())
                   .matrix();
  }
  return y;
}

Matrix Affine(const Matrix& x, const Matrix& w, const Matrix& b) {
  Matrix y = x * w;
  y.rowwise() += b.row(0);
  return y;
}

void SoftmaxRowsInPlace(Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const float mx = m.row(i).maxCoeff();
    m.row(i) = (m.row(i).array() - mx).exp().matrix();
    m.row(i) /= m.row(i).sum();
  }
}

// Multi-head attention of q over (k, v) with no mask.
Matrix Attend(const Matrix& q, const Matrix& k, const Matrix& v, int heads) {
  const int d = static_cast<int>(q.cols());
  const int dh = d / heads;
  const float scale = 1.0f / std::sqrt(static_cast<float>(dh));
  Matrix out(q.rows(), d);
  for (int h = 0; h < heads; ++h) {
    Matrix scores =
        (q.middleCols(h * dh, dh) * k.middleCols(h * dh, dh).transpose()) *
        scale;
    SoftmaxRowsInPlace(scores);
    out.middleCols(h * dh, dh) = scores * v.middleCols(h * dh, dh);
  }
  return out;
}

void AppendRow(Matrix& m, const Matrix& row) {
  const Eigen::Index r = m.rows();
  m.conservativeResize(r + 1, row.cols());
  m.row(r) = row.row(0);
}

struct AttentionParams {
  Parameter* wq;
  Parameter* bq;
  Parameter* wk;
  Parameter* bk;
  Parameter* wv;
  Parameter* bv;
  Parameter* wo;
  Parameter* bo;
};

struct NormParams {
  Parameter* gain;
  Parameter* bias;
};

struct FfnParams {
  Parameter* w1;
  Parameter* b1;
  Parameter* w2;
  Parameter* b2;
};

struct EncoderLayer {
  NormParams ln_attn;
  AttentionParams attn;
  NormParams ln_ffn;
  FfnParams ffn;
};

struct DecoderLayer {
  NormParams ln_self;
  AttentionParams self;
  NormParams ln_cross;
  AttentionParams cross;
  NormParams ln_ffn;
  FfnParams ffn;
};

}  // namespace

void DecodeConfig::Validate() const {
  if (beam_width < 1) throw std::invalid_argument("beam_width must be >= 1");
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw std::invalid_argument("top_p must lie in (0, 1]");
  }
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("temperature must be positive");
  }
  if (min_len < 0 || max_len < 1 || min_len > max_len) {
    throw std::invalid_argument("need 0 <= min_len <= max_len and max_len >= 1");
  }
}

Json DecodeConfig::ToJson() const {
  return {{"beam_width", beam_width},   {"top_p", top_p},
          {"temperature", temperature}, {"min_len", min_len},
          {"max_len", max_len},         {"length_penalty", length_penalty}};
}

DecodeConfig DecodeConfig::FromJson(const Json& j) {
  DecodeConfig c;
  c.beam_width = j.value("beam_width", c.beam_width);
  c.top_p = j.value("top_p", c.top_p);
  c.temperature = j.value("temperature", c.temperature);
  c.min_len = j.value("min_len", c.min_len);
  c.max_len = j.value("max_len", c.max_len);
  c.length_penalty = j.value("length_penalty", c.length_penalty);
  return c;
}

std::vector<int> Generator::EncodeSource(const Tokens& x,
                                         std::optional<Relation> control) const {
  std::vector<int> ids;
  ids.reserve(x.size() + 1);
  if (control.has_value()) ids.push_back(vocab().ControlId(*control));
  const std::vector<int> body = vocab().Encode(x);
  ids.insert(ids.end(), body.begin(), body.end());
  return ids;
}

GeneratorConfig GeneratorConfig::FullScale() {
  GeneratorConfig c;
  c.layers = 6;
  c.d_model = 512;
  c.heads = 8;
  c.ffn_dim = 2048;
  c.max_positions = 256;
  return c;
}

void GeneratorConfig::Validate() const {
  if (layers < 1 || d_model < 2 || heads < 1 || ffn_dim < 1 ||
      max_positions < 2) {
    throw std::invalid_argument("generator dimensions must be positive");
  }
  if (d_model % heads != 0) {
    throw std::invalid_argument("d_model must be divisible by heads");
  }
  if (dropout < 0.0f || dropout >= 1.0f) {
    throw std::invalid_argument("dropout must lie in [0, 1)");
  }
}

Json GeneratorConfig::ToJson() const {
  return {{"layers", layers},   {"d_model", d_model},
          {"heads", heads},     {"ffn_dim", ffn_dim},
          {"dropout", dropout}, {"max_positions", max_positions},
          {"seed", seed}};
}

GeneratorConfig GeneratorConfig::FromJson(const Json& j) {
  GeneratorConfig c;
  c.layers = j.value("layers", c.layers);
  c.d_model = j.value("d_model", c.d_model);
  c.heads = j.value("heads", c.heads);
  c.ffn_dim = j.value("ffn_dim", c.ffn_dim);
  c.dropout = j.value("dropout", c.dropout);
  c.max_positions = j.value("max_positions", c.max_positions);
  c.seed = j.value("seed", c.seed);
  return c;
}

struct TransformerGenerator::Impl {
  int d = 0;
  int heads = 0;
  float dropout = 0.0f;
  Parameter* embed = nullptr;
  Parameter* out_bias = nullptr;
  NormParams enc_final{};
  NormParams dec_final{};
  std::vector<EncoderLayer> encoder;
  std::vector<DecoderLayer> decoder;
  Matrix positions;
  Matrix reserved_mask;  // 1 x V, kMasked on ids never emitted
  std::vector<std::uint8_t> emittable;  // complement of the mask

  // Cross-attention keys and values per decoder layer.
  struct Memory {
    std::vector<Matrix> k;
    std::vector<Matrix> v;
  };
  struct State {
    std::vector<Matrix> k;
    std::vector<Matrix> v;
    int pos = 0;
  };

  // ---- tape path ----

  struct Tape {
    Graph g;
    std::unordered_map<const Parameter*, Var> bound;
    Var P(Parameter* p) {
      auto it = bound.find(p);
      if (it != bound.end()) return it->second;
      Var v = g.Param(*p);
      bound.emplace(p, v);
      return v;
    }
  };

  Var Norm(Tape& t, Var x, const NormParams& n) const {
    return t.g.LayerNorm(x, t.P(n.gain), t.P(n.bias));
  }

  Var Linear(Tape& t, Var x, Parameter* w, Parameter* b) const {
    return t.g.AddRow(t.g.MatMul(x, t.P(w)), t.P(b));
  }

  Var MultiHead(Tape& t, Var query, Var kv, const AttentionParams& a,
                const Matrix* mask) const {
    Var q = Linear(t, query, a.wq, a.bq);
    Var k = Linear(t, kv, a.wk, a.bk);
    Var v = Linear(t, kv, a.wv, a.bv);
    const int dh = d / heads;
    const float scale = 1.0f / std::sqrt(static_cast<float>(dh));
    std::vector<Var> parts;
    parts.reserve(heads);
    for (int h = 0; h < heads; ++h) {
      Var qh = t.g.SliceCols(q, h * dh, dh);
      Var kh = t.g.SliceCols(k, h * dh, dh);
      Var vh = t.g.SliceCols(v, h * dh, dh);
      Var scores = t.g.Scale(t.g.MatMulTransposed(qh, kh), scale);
      parts.push_back(t.g.MatMul(t.g.Softmax(scores, mask), vh));
    }
    return Linear(t, t.g.ConcatCols(parts), a.wo, a.bo);
  }

  Var Ffn(Tape& t, Var x, const FfnParams& f) const {
    return Linear(t, t.g.Relu(Linear(t, x, f.w1, f.b1)), f.w2, f.b2);
  }

  Var Embed(Tape& t, std::span<const int> ids, bool train, Rng& rng) const {
    CheckLength(static_cast<int>(ids.size()));
    Var x = t.g.Scale(t.g.GatherRows(t.P(embed), ids),
                      std::sqrt(static_cast<float>(d)));
    x = t.g.Add(x, t.g.Constant(positions.topRows(
                       static_cast<Eigen::Index>(ids.size()))));
    return train ? t.g.Dropout(x, dropout, rng) : x;
  }

  Var Residual(Tape& t, Var x, Var update, bool train, Rng& rng) const {
    return t.g.Add(x, train ? t.g.Dropout(update, dropout, rng) : update);
  }

  // Returns logits (T x V) for predicting actions given [bos] + actions[:-1].
  Var ForwardTape(Tape& t, std::span<const int> source,
                  std::span<const int> actions, bool train, Rng& rng) const {
    Var x = Embed(t, source, train, rng);
    for (const EncoderLayer& l : encoder) {
      x = Residual(t, x, MultiHead(t, Norm(t, x, l.ln_attn),
                                   Norm(t, x, l.ln_attn), l.attn, nullptr),
                   train, rng);
      x = Residual(t, x, Ffn(t, Norm(t, x, l.ln_ffn), l.ffn), train, rng);
    }
    Var memory = Norm(t, x, enc_final);

    std::vector<int> inputs;
    inputs.reserve(actions.size());
    inputs.push_back(Vocabulary::kBos);
    inputs.insert(inputs.end(), actions.begin(), actions.end() - 1);
    const auto steps = static_cast<Eigen::Index>(inputs.size());
    Matrix causal = Matrix::Zero(steps, steps);
    for (Eigen::Index i = 0; i < steps; ++i) {
      for (Eigen::Index j = i + 1; j < steps; ++j) causal(i, j) = kMasked;
    }
    Var y = Embed(t, inputs, train, rng);
    for (const DecoderLayer& l : decoder) {
      Var a = Norm(t, y, l.ln_self);
      y = Residual(t, y, MultiHead(t, a, a, l.self, &causal), train, rng);
      y = Residual(t, y,
                   MultiHead(t, Norm(t, y, l.ln_cross), memory, l.cross,
                             nullptr),
                   train, rng);
      y = Residual(t, y, Ffn(t, Norm(t, y, l.ln_ffn), l.ffn), train, rng);
    }
    Var h = Norm(t, y, dec_final);
    Var logits = t.g.AddRow(t.g.MatMulTransposed(h, t.P(embed)), t.P(out_bias));
    return t.g.AddRow(logits, t.g.Constant(reserved_mask));
  }

  void CheckLength(int n) const {
    if (n < 1 || n > positions.rows()) {
      throw std::invalid_argument("sequence length " + std::to_string(n) +
                                  " outside [1, " +
                                  std::to_string(positions.rows()) + "]");
    }
  }

  // ---- cached inference path ----

  Memory Encode(std::span<const int> source) const {
    CheckLength(static_cast<int>(source.size()));
    const auto n = static_cast<Eigen::Index>(source.size());
    Matrix x(n, d);
    const float s = std::sqrt(static_cast<float>(d));
    for (Eigen::Index i = 0; i < n; ++i) {
      x.row(i) = embed->value.row(source[i]) * s + positions.row(i);
    }
    for (const EncoderLayer& l : encoder) {
      const Matrix a = LayerNormRows(x, l.ln_attn.gain->value, l.ln_attn.bias->value);
      const Matrix q = Affine(a, l.attn.wq->value, l.attn.bq->value);
      const Matrix k = Affine(a, l.attn.wk->value, l.attn.bk->value);
      const Matrix v = Affine(a, l.attn.wv->value, l.attn.bv->value);
      x += Affine(Attend(q, k, v, heads), l.attn.wo->value, l.attn.bo->value);
      const Matrix f = LayerNormRows(x, l.ln_ffn.gain->value, l.ln_ffn.bias->value);
      x += FfnForward(f, l.ffn);
    }
    const Matrix mem = LayerNormRows(x, enc_final.gain->value, enc_final.bias->value);
    Memory m;
    for (const DecoderLayer& l : decoder) {
      m.k.push_back(Affine(mem, l.cross.wk->value, l.cross.bk->value));
      m.v.push_back(Affine(mem, l.cross.wv->value, l.cross.bv->value));
    }
    return m;
  }

  static Matrix FfnForward(const Matrix& x, const FfnParams& f) {
    Matrix h = Affine(x, f.w1->value, f.b1->value).cwiseMax(0.0f);
    return Affine(h, f.w2->value, f.b2->value);
  }

  State InitialState() const {
    State s;
    s.k.assign(decoder.size(), Matrix(0, d));
    s.v.assign(decoder.size(), Matrix(0, d));
    return s;
  }

  // Feeds `token` at the next position and returns the masked logits (1 x V)
  // for the following action.
  Matrix Step(const Memory& mem, State& s, int token) const {
    if (s.pos >= positions.rows()) {
      throw DecodeError("decoder ran past max_positions");
    }
    Matrix x = embed->value.row(token) * std::sqrt(static_cast<float>(d));
    x += positions.row(s.pos);
    for (std::size_t li = 0; li < decoder.size(); ++li) {
      const DecoderLayer& l = decoder[li];
      const Matrix a = LayerNormRows(x, l.ln_self.gain->value, l.ln_self.bias->value);
      const Matrix q = Affine(a, l.self.wq->value, l.self.bq->value);
      AppendRow(s.k[li], Affine(a, l.self.wk->value, l.self.bk->value));
      AppendRow(s.v[li], Affine(a, l.self.wv->value, l.self.bv->value));
      x += Affine(Attend(q, s.k[li], s.v[li], heads), l.self.wo->value,
                  l.self.bo->value);
      const Matrix c = LayerNormRows(x, l.ln_cross.gain->value, l.ln_cross.bias->value);
      const Matrix cq = Affine(c, l.cross.wq->value, l.cross.bq->value);
      x += Affine(Attend(cq, mem.k[li], mem.v[li], heads), l.cross.wo->value,
                  l.cross.bo->value);
      const Matrix f = LayerNormRows(x, l.ln_ffn.gain->value, l.ln_ffn.bias->value);
      x += FfnForward(f, l.ffn);
    }
    ++s.pos;
    const Matrix h = LayerNormRows(x, dec_final.gain->value, dec_final.bias->value);
    Matrix logits = h * embed->value.transpose();
    logits += out_bias->value;
    logits += reserved_mask;
    return logits;
  }
};

namespace {

AttentionParams AddAttention(nn::ParameterSet& ps, const std::string& prefix,
                             int d, Rng& rng) {
  using nn::Init;
  AttentionParams a{};
  a.wq = &ps.Add(prefix + ".wq", d, d, Init::kXavierUniform, rng);
  a.bq = &ps.Add(prefix + ".bq", 1, d, Init::kZeros, rng);
  a.wk = &ps.Add(prefix + ".wk", d, d, Init::kXavierUniform, rng);
  a.bk = &ps.Add(prefix + ".bk", 1, d, Init::kZeros, rng);
  a.wv = &ps.Add(prefix + ".wv", d, d, Init::kXavierUniform, rng);
  a.bv = &ps.Add(prefix + ".bv", 1, d, Init::kZeros, rng);
  a.wo = &ps.Add(prefix + ".wo", d, d, Init::kXavierUniform, rng);
  a.bo = &ps.Add(prefix + ".bo", 1, d, Init::kZeros, rng);
  return a;
}

NormParams AddNorm(nn::ParameterSet& ps, const std::string& prefix, int d,
                   Rng& rng) {
  return {&ps.Add(prefix + ".gain", 1, d, nn::Init::kOnes, rng),
          &ps.Add(prefix + ".bias", 1, d, nn::Init::kZeros, rng)};
}

FfnParams AddFfn(nn::ParameterSet& ps, const std::string& prefix, int d,
                 int hidden, Rng& rng) {
  using nn::Init;
  return {&ps.Add(prefix + ".w1", d, hidden, Init::kXavierUniform, rng),
          &ps.Add(prefix + ".b1", 1, hidden, Init::kZeros, rng),
          &ps.Add(prefix + ".w2", hidden, d, Init::kXavierUniform, rng),
          &ps.Add(prefix + ".b2", 1, d, Init::kZeros, rng)};
}

// Log-probabilities of the next action under decoding constraints. `length`
// counts the tokens already emitted, excluding <eos>.
std::vector<double> ConstrainedLogProbs(const Matrix& logits, int length,
                                        const DecodeConfig& config) {
  const auto vsize = static_cast<int>(logits.cols());
  std::vector<double> z(vsize);
  for (int i = 0; i < vsize; ++i) {
    z[i] = logits(0, i) <= kMasked / 2 ? kNegInf
                                       : logits(0, i) / config.temperature;
  }
  if (length < config.min_len) z[Vocabulary::kEos] = kNegInf;
  if (length >= config.max_len) {
    for (int i = 0; i < vsize; ++i) {
      if (i != Vocabulary::kEos) z[i] = kNegInf;
    }
    z[Vocabulary::kEos] = 0.0;
  }
  const double mx = *std::max_element(z.begin(), z.end());
  if (mx == kNegInf) throw DecodeError("every candidate token is masked");
  double sum = 0.0;
  for (double v : z) sum += v == kNegInf ? 0.0 : std::exp(v - mx);
  const double lse = mx + std::log(sum);
  for (double& v : z) v = v == kNegInf ? kNegInf : v - lse;
  return z;
}

int SampleNucleus(const std::vector<double>& logp, double top_p, Rng& rng) {
  std::vector<int> order(logp.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return logp[a] > logp[b]; });
  std::vector<double> kept;
  double cum = 0.0;
  for (int id : order) {
    if (logp[id] == kNegInf) break;
    const double p = std::exp(logp[id]);
    kept.push_back(p);
    cum += p;
    if (cum >= top_p) break;
  }
  std::discrete_distribution<int> pick(kept.begin(), kept.end());
  return order[pick(rng)];
}

}  // namespace

TransformerGenerator::TransformerGenerator(Vocabulary vocab,
                                           GeneratorConfig config)
    : vocab_(std::move(vocab)),
      config_(config),
      impl_(std::make_unique<Impl>()),
      dropout_rng_(config.seed ^ 0x9e3779b97f4a7c15ULL) {
  config_.Validate();
  Rng rng(config_.seed);
  const int d = config_.d_model;
  Impl& m = *impl_;
  m.d = d;
  m.heads = config_.heads;
  m.dropout = config_.dropout;
  m.embed = &params_.Add("embed", vocab_.size(), d, nn::Init::kNormal, rng,
                         1.0f / std::sqrt(static_cast<float>(d)));
  m.out_bias = &params_.Add("out.bias", 1, vocab_.size(), nn::Init::kZeros, rng);
  for (int l = 0; l < config_.layers; ++l) {
    const std::string p = "enc." + std::to_string(l);
    m.encoder.push_back({AddNorm(params_, p + ".ln_attn", d, rng),
                         AddAttention(params_, p + ".attn", d, rng),
                         AddNorm(params_, p + ".ln_ffn", d, rng),
                         AddFfn(params_, p + ".ffn", d, config_.ffn_dim, rng)});
  }
  m.enc_final = AddNorm(params_, "enc.ln_final", d, rng);
  for (int l = 0; l < config_.layers; ++l) {
    const std::string p = "dec." + std::to_string(l);
    m.decoder.push_back({AddNorm(params_, p + ".ln_self", d, rng),
                         AddAttention(params_, p + ".self", d, rng),
                         AddNorm(params_, p + ".ln_cross", d, rng),
                         AddAttention(params_, p + ".cross", d, rng),
                         AddNorm(params_, p + ".ln_ffn", d, rng),
                         AddFfn(params_, p + ".ffn", d, config_.ffn_dim, rng)});
  }
  m.dec_final = AddNorm(params_, "dec.ln_final", d, rng);
  m.positions = SinusoidalPositions(config_.max_positions, d);
  m.reserved_mask = Matrix::Zero(1, vocab_.size());
  for (int id : {Vocabulary::kPad, Vocabulary::kUnk, Vocabulary::kBos}) {
    m.reserved_mask(0, id) = kMasked;
  }
  for (Relation r : kControlRelations) {
    m.reserved_mask(0, vocab_.ControlId(r)) = kMasked;
  }
  m.emittable.resize(static_cast<std::size_t>(vocab_.size()));
  for (int id = 0; id < vocab_.size(); ++id) {
    m.emittable[static_cast<std::size_t>(id)] = m.reserved_mask(0, id) == 0.0f ? 1 : 0;
  }
}

TransformerGenerator::~TransformerGenerator() = default;

namespace {

void CheckActions(std::span<const int> actions, int vocab_size) {
  if (actions.empty()) throw std::invalid_argument("empty action sequence");
  for (int a : actions) {
    if (a < 0 || a >= vocab_size) {
      throw std::invalid_argument("action id out of range");
    }
  }
}

}  // namespace

double TransformerGenerator::WeightedLogLikelihood(
    std::span<const int> source, std::span<const int> actions,
    std::span<const double> weights, double grad_scale) {
  CheckActions(actions, vocab_.size());
  if (weights.size() != actions.size()) {
    throw std::invalid_argument("weights and actions differ in length");
  }
  Impl::Tape t;
  Var logits = impl_->ForwardTape(t, source, actions, false, dropout_rng_);
  std::vector<float> w(weights.begin(), weights.end());
  Var loss = t.g.WeightedCrossEntropy(logits, actions, w);
  const double ll = -static_cast<double>(t.g.scalar(loss));
  if (grad_scale != 0.0) t.g.Backward(loss, static_cast<float>(-grad_scale));
  return ll;
}

double TransformerGenerator::TrainingLoss(std::span<const int> source,
                                          std::span<const int> actions,
                                          float label_smoothing, bool train,
                                          double grad_scale) {
  CheckActions(actions, vocab_.size());
  Impl::Tape t;
  Var logits = impl_->ForwardTape(t, source, actions, train, dropout_rng_);
  const std::vector<float> w(actions.size(), 1.0f);
  Var loss = t.g.WeightedCrossEntropy(logits, actions, w, label_smoothing,
                                      impl_->emittable);
  const double value = t.g.scalar(loss);
  if (grad_scale != 0.0) t.g.Backward(loss, static_cast<float>(grad_scale));
  return value;
}

nn::Matrix TransformerGenerator::InferenceLogProbs(
    std::span<const int> source, std::span<const int> actions) const {
  CheckActions(actions, vocab_.size());
  const Impl::Memory mem = impl_->Encode(source);
  Impl::State state = impl_->InitialState();
  Matrix out(static_cast<Eigen::Index>(actions.size()), vocab_.size());
  int prev = Vocabulary::kBos;
  for (std::size_t t = 0; t < actions.size(); ++t) {
    out.row(static_cast<Eigen::Index>(t)) =
        nn::LogSoftmaxRows(impl_->Step(mem, state, prev)).row(0);
    prev = actions[t];
  }
  return out;
}

std::vector<int> TransformerGenerator::BeamSearch(
    std::span<const int> source, const DecodeConfig& config) const {
  config.Validate();
  if (config.max_len + 1 > config_.max_positions) {
    throw DecodeError("max_len exceeds the generator's max_positions");
  }
  struct Hyp {
    std::vector<int> tokens;
    double logp = 0.0;
    Impl::State state;
    Matrix logits;
  };
  struct Candidate {
    double logp;
    std::size_t hyp;
    int token;
  };
  const Impl::Memory mem = impl_->Encode(source);
  std::vector<Hyp> alive(1);
  alive[0].state = impl_->InitialState();
  alive[0].logits = impl_->Step(mem, alive[0].state, Vocabulary::kBos);

  std::vector<std::pair<double, std::vector<int>>> finished;
  const auto beam = static_cast<std::size_t>(config.beam_width);
  while (!alive.empty() && finished.size() < beam) {
    std::vector<Candidate> cands;
    for (std::size_t h = 0; h < alive.size(); ++h) {
      const std::vector<double> lp = ConstrainedLogProbs(
          alive[h].logits, static_cast<int>(alive[h].tokens.size()), config);
      std::vector<int> ids(lp.size());
      std::iota(ids.begin(), ids.end(), 0);
      const std::size_t k = std::min(beam, ids.size());
      std::partial_sort(ids.begin(), ids.begin() + static_cast<long>(k),
                        ids.end(), [&](int a, int b) {
                          return lp[a] > lp[b] || (lp[a] == lp[b] && a < b);
                        });
      for (std::size_t i = 0; i < k; ++i) {
        if (lp[ids[i]] == kNegInf) break;
        cands.push_back({alive[h].logp + lp[ids[i]], h, ids[i]});
      }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return a.logp > b.logp;
                     });
    std::vector<Hyp> next;
    for (std::size_t rank = 0; rank < cands.size() && next.size() < beam;
         ++rank) {
      const Candidate& c = cands[rank];
      std::vector<int> tokens = alive[c.hyp].tokens;
      tokens.push_back(c.token);
      if (c.token == Vocabulary::kEos) {
        if (rank < beam) {
          const double norm = std::pow(static_cast<double>(tokens.size()),
                                       config.length_penalty);
          finished.emplace_back(c.logp / norm, std::move(tokens));
        }
        continue;
      }
      Hyp h;
      h.tokens = std::move(tokens);
      h.logp = c.logp;
      h.state = alive[c.hyp].state;
      h.logits = impl_->Step(mem, h.state, c.token);
      next.push_back(std::move(h));
    }
    alive = std::move(next);
  }
  if (finished.empty()) throw DecodeError("beam search produced no hypothesis");
  // First of equal scores wins.
  auto best = finished.begin();
  for (auto it = finished.begin(); it != finished.end(); ++it) {
    if (it->first > best->first) best = it;
  }
  return best->second;
}

std::vector<int> TransformerGenerator::Sample(std::span<const int> source,
                                              std::span<const int> prefix,
                                              const DecodeConfig& config,
                                              Rng& rng) const {
  config.Validate();
  std::vector<int> out(prefix.begin(), prefix.end());
  if (!out.empty() && out.back() == Vocabulary::kEos) return out;
  if (static_cast<int>(out.size()) > config.max_len) {
    throw DecodeError("prefix longer than max_len");
  }
  if (config.max_len + 1 > config_.max_positions) {
    throw DecodeError("max_len exceeds the generator's max_positions");
  }
  for (int id : out) {
    if (id == Vocabulary::kEos || id < 0 || id >= vocab_.size()) {
      throw std::invalid_argument("invalid prefix token");
    }
  }
  const Impl::Memory mem = impl_->Encode(source);
  Impl::State state = impl_->InitialState();
  Matrix logits = impl_->Step(mem, state, Vocabulary::kBos);
  for (int id : out) logits = impl_->Step(mem, state, id);
  while (true) {
    const std::vector<double> lp =
        ConstrainedLogProbs(logits, static_cast<int>(out.size()), config);
    const int next = SampleNucleus(lp, config.top_p, rng);
    out.push_back(next);
    if (next == Vocabulary::kEos) return out;
    logits = impl_->Step(mem, state, next);
  }
}

void TransformerGenerator::Save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  WriteJson(dir / "generator.json", config_.ToJson());
  vocab_.Save(dir / "vocab.txt");
  params_.Save(dir / "generator.bin");
}

std::unique_ptr<TransformerGenerator> TransformerGenerator::Load(
    const std::filesystem::path& dir) {
  const GeneratorConfig config =
      GeneratorConfig::FromJson(ReadJson(dir / "generator.json"));
  auto gen = std::make_unique<TransformerGenerator>(
      Vocabulary::Load(dir / "vocab.txt"), config);
  gen->params_.Load(dir / "generator.bin");
  return gen;
}

}  // namespace relpara
