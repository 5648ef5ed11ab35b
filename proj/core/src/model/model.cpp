#include "cfafl/model/model.hpp"

#include <algorithm>
#include <cmath>

#include "cfafl/errors.hpp"
#include "cfafl/rng.hpp"

namespace cfafl::model {

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::Mlp ? "mlp" : "logreg";
}

std::string_view to_string(Activation act) { return act == Activation::Relu ? "relu" : "tanh"; }

Layout layout_for(const ModelSpec& spec) {
  if (spec.num_features == 0 || spec.num_classes == 0) {
    throw DimensionError("model needs at least one feature and one class");
  }
  if (spec.kind == ModelKind::LogisticRegression) {
    return Layout({{"W", spec.num_classes, spec.num_features}, {"b", spec.num_classes, 1}});
  }
  if (spec.hidden_width == 0) throw DimensionError("mlp hidden width must be positive");
  return Layout({{"W1", spec.hidden_width, spec.num_features},
                 {"b1", spec.hidden_width, 1},
                 {"W2", spec.num_classes, spec.hidden_width},
                 {"b2", spec.num_classes, 1}});
}

Model::Model(ModelSpec spec, ParameterVector params) : spec_(spec), params_(std::move(params)) {
  if (!(params_.layout() == layout_for(spec_))) {
    throw LayoutMismatch("parameters do not match the model layout");
  }
}

Model Model::zeros(const ModelSpec& spec) { return Model(spec, ParameterVector::zeros(layout_for(spec))); }

Model Model::initialized(const ModelSpec& spec, std::uint64_t seed) {
  Layout layout = layout_for(spec);
  ParameterVector params(layout);
  if (spec.kind == ModelKind::Mlp) {
    Rng rng(seed);
    auto values = params.mutable_values();
    for (std::size_t b = 0; b < layout.blocks().size(); ++b) {
      const Block& block = layout.blocks()[b];
      if (block.cols == 1) continue;  // biases stay zero
      const double limit = std::sqrt(6.0 / static_cast<double>(block.rows + block.cols));
      for (std::size_t i = 0; i < block.size(); ++i) {
        values[layout.offset(b) + i] = (2.0 * rng.uniform01() - 1.0) * limit;
      }
    }
  }
  return Model(spec, std::move(params));
}

namespace {

double activate(Activation act, double x) { return act == Activation::Relu ? std::max(0.0, x) : std::tanh(x); }

// Derivative expressed through the pre-activation value.
double activate_grad(Activation act, double pre, double post) {
  if (act == Activation::Relu) return pre > 0.0 ? 1.0 : 0.0;
  return 1.0 - post * post;
}

// out[r] = b[r] + sum_c W[r, c] * x[c]
void affine(const double* w, const double* b, std::size_t rows, std::size_t cols, const double* x, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = b[r];
    const double* wr = w + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * x[c];
    out[r] = acc;
  }
}

// In-place softmax; returns log-sum-exp of the original logits.
double softmax_inplace(std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return m + std::log(sum);
}

struct Activations {
  std::vector<double> hidden_pre;
  std::vector<double> hidden;
  std::vector<double> logits;
};

Activations run_forward(const Model& model, std::span<const double> x) {
  const ModelSpec& s = model.spec();
  if (x.size() != s.num_features) {
    throw DimensionError("feature row has " + std::to_string(x.size()) + " entries, model expects " +
                         std::to_string(s.num_features));
  }
  const Layout& layout = model.params().layout();
  const double* p = model.params().values().data();
  Activations a;
  a.logits.resize(s.num_classes);
  if (s.kind == ModelKind::LogisticRegression) {
    affine(p + layout.offset(0), p + layout.offset(1), s.num_classes, s.num_features, x.data(), a.logits.data());
    return a;
  }
  a.hidden_pre.resize(s.hidden_width);
  a.hidden.resize(s.hidden_width);
  affine(p + layout.offset(0), p + layout.offset(1), s.hidden_width, s.num_features, x.data(),
         a.hidden_pre.data());
  for (std::size_t j = 0; j < s.hidden_width; ++j) a.hidden[j] = activate(s.activation, a.hidden_pre[j]);
  affine(p + layout.offset(2), p + layout.offset(3), s.num_classes, s.hidden_width, a.hidden.data(),
         a.logits.data());
  return a;
}

void require_compatible(const Model& model, const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("dataset is empty");
  if (data.num_features() != model.spec().num_features) {
    throw DimensionError("dataset feature count does not match model");
  }
  if (data.num_classes() > model.spec().num_classes) {
    throw DimensionError("dataset has more classes than the model");
  }
}

}  // namespace

std::vector<double> forward(const Model& model, std::span<const double> features) {
  std::vector<double> z = run_forward(model, features).logits;
  softmax_inplace(z);
  return z;
}

double loss(const Model& model, const Dataset& data) {
  require_compatible(model, data);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::vector<double> z = run_forward(model, data.row(i)).logits;
    const double zy = z[data.label(i)];
    const double lse = softmax_inplace(z);
    total += std::max(0.0, lse - zy);
  }
  return total / static_cast<double>(data.size());
}

ParameterVector gradient(const Model& model, const Dataset& data) {
  require_compatible(model, data);
  const ModelSpec& s = model.spec();
  const Layout& layout = model.params().layout();
  const double* p = model.params().values().data();
  std::vector<double> g(layout.total(), 0.0);

  std::vector<double> dz(s.num_classes);
  std::vector<double> dh(s.hidden_width);
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto x = data.row(i);
    Activations a = run_forward(model, x);
    dz = a.logits;
    softmax_inplace(dz);
    dz[data.label(i)] -= 1.0;

    if (s.kind == ModelKind::LogisticRegression) {
      double* gw = g.data() + layout.offset(0);
      double* gb = g.data() + layout.offset(1);
      for (std::size_t k = 0; k < s.num_classes; ++k) {
        for (std::size_t c = 0; c < s.num_features; ++c) gw[k * s.num_features + c] += dz[k] * x[c];
        gb[k] += dz[k];
      }
      continue;
    }

    const double* w2 = p + layout.offset(2);
    double* gw1 = g.data() + layout.offset(0);
    double* gb1 = g.data() + layout.offset(1);
    double* gw2 = g.data() + layout.offset(2);
    double* gb2 = g.data() + layout.offset(3);
    for (std::size_t k = 0; k < s.num_classes; ++k) {
      for (std::size_t j = 0; j < s.hidden_width; ++j) gw2[k * s.hidden_width + j] += dz[k] * a.hidden[j];
      gb2[k] += dz[k];
    }
    for (std::size_t j = 0; j < s.hidden_width; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < s.num_classes; ++k) acc += w2[k * s.hidden_width + j] * dz[k];
      dh[j] = acc * activate_grad(s.activation, a.hidden_pre[j], a.hidden[j]);
    }
    for (std::size_t j = 0; j < s.hidden_width; ++j) {
      for (std::size_t c = 0; c < s.num_features; ++c) gw1[j * s.num_features + c] += dh[j] * x[c];
      gb1[j] += dh[j];
    }
  }
  const double n = static_cast<double>(data.size());
  for (double& v : g) v /= n;
  return ParameterVector(layout, std::move(g));
}

double evaluate(const Model& model, const Dataset& data) {
  require_compatible(model, data);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::vector<double> z = run_forward(model, data.row(i)).logits;
    // max_element returns the first maximum, i.e. the lowest class index on ties.
    const auto predicted = static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
    if (predicted == data.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace cfafl::model
