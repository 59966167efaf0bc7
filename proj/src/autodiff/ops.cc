#include "lexcomp/autodiff/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lexcomp/errors.h"

namespace lexcomp::ad {
namespace {

using detail::NodeData;

// Smallest probability fed to the log in cross_entropy.
constexpr double kMinProbability = std::numeric_limits<double>::min();

void require_rank(const Node& x, std::size_t rank, const char* op) {
  if (x.value().rank() != rank) {
    throw DimensionError(std::string(op) + ": expected rank " +
                         std::to_string(rank) + ", got shape " +
                         shape_string(x.shape()));
  }
}

void require_same_shape(const Node& a, const Node& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         shape_string(a.shape()) + " vs " +
                         shape_string(b.shape()));
  }
}

// Applies f elementwise with derivative df(x, y) expressed through input x
// and output y.
template <typename F, typename DF>
Node unary(const Node& x, F f, DF df) {
  Tensor out = x.value();
  for (double& v : out.data()) v = f(v);
  return make_node(std::move(out), {x}, [df](NodeData& self) {
    NodeData& in = *self.parents[0];
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      in.grad[i] += self.grad[i] * df(in.value[i], self.value[i]);
    }
  });
}

}  // namespace

Node matmul(const Node& a, const Node& b) {
  require_rank(a, 2, "matmul");
  require_rank(b, 2, "matmul");
  const std::size_t m = a.value().rows(), k = a.value().cols();
  const std::size_t n = b.value().cols();
  if (b.value().rows() != k) {
    throw DimensionError("matmul: inner dimensions differ for " +
                         shape_string(a.shape()) + " and " +
                         shape_string(b.shape()));
  }
  Tensor out = Tensor::zeros({m, n});
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = av.at(i, p);
      for (std::size_t j = 0; j < n; ++j) out.at(i, j) += aip * bv.at(p, j);
    }
  }
  return make_node(std::move(out), {a, b}, [m, k, n](NodeData& self) {
    NodeData& na = *self.parents[0];
    NodeData& nb = *self.parents[1];
    const Tensor& g = self.grad;
    if (na.requires_grad) {
      // dA = dC * B^T
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          double acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += g.at(i, j) * nb.value.at(p, j);
          na.grad.at(i, p) += acc;
        }
    }
    if (nb.requires_grad) {
      // dB = A^T * dC
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          const double aip = na.value.at(i, p);
          for (std::size_t j = 0; j < n; ++j) nb.grad.at(p, j) += aip * g.at(i, j);
        }
    }
  });
}

Node matvec(const Node& w, const Node& x) {
  require_rank(w, 2, "matvec");
  require_rank(x, 1, "matvec");
  const std::size_t m = w.value().rows(), k = w.value().cols();
  if (x.size() != k) {
    throw DimensionError("matvec: " + shape_string(w.shape()) +
                         " cannot multiply " + shape_string(x.shape()));
  }
  const Tensor& wv = w.value();
  const Tensor& xv = x.value();
  Tensor out = Tensor::zeros({m});
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    const double* wr = wv.data().data() + i * k;
    for (std::size_t p = 0; p < k; ++p) acc += wr[p] * xv[p];
    out[i] = acc;
  }
  return make_node(std::move(out), {w, x}, [m, k](NodeData& self) {
    NodeData& nw = *self.parents[0];
    NodeData& nx = *self.parents[1];
    const Tensor& g = self.grad;
    if (nw.requires_grad) {
      double* gw = nw.grad.data().data();
      for (std::size_t i = 0; i < m; ++i) {
        const double gi = g[i];
        if (gi == 0.0) continue;
        for (std::size_t p = 0; p < k; ++p) gw[i * k + p] += gi * nx.value[p];
      }
    }
    if (nx.requires_grad) {
      const double* wv = nw.value.data().data();
      for (std::size_t i = 0; i < m; ++i) {
        const double gi = g[i];
        if (gi == 0.0) continue;
        for (std::size_t p = 0; p < k; ++p) nx.grad[p] += gi * wv[i * k + p];
      }
    }
  });
}

Node transpose(const Node& a) {
  require_rank(a, 2, "transpose");
  const std::size_t m = a.value().rows(), n = a.value().cols();
  Tensor out = Tensor::zeros({n, m});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(j, i) = a.value().at(i, j);
  return make_node(std::move(out), {a}, [m, n](NodeData& self) {
    NodeData& in = *self.parents[0];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) in.grad.at(i, j) += self.grad.at(j, i);
  });
}

Node dot(const Node& a, const Node& b) {
  require_rank(a, 1, "dot");
  require_same_shape(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.value()[i] * b.value()[i];
  return make_node(Tensor::scalar(acc), {a, b}, [](NodeData& self) {
    NodeData& na = *self.parents[0];
    NodeData& nb = *self.parents[1];
    const double g = self.grad[0];
    for (std::size_t i = 0; i < na.value.size(); ++i) {
      const double av = na.value[i];
      const double bv = nb.value[i];
      if (na.requires_grad) na.grad[i] += g * bv;
      if (nb.requires_grad) nb.grad[i] += g * av;
    }
  });
}

Node add(const Node& a, const Node& b) {
  require_same_shape(a, b, "add");
  Tensor out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.value()[i];
  return make_node(std::move(out), {a, b}, [](NodeData& self) {
    for (auto& parent : self.parents) {
      if (!parent->requires_grad) continue;
      for (std::size_t i = 0; i < self.grad.size(); ++i) parent->grad[i] += self.grad[i];
    }
  });
}

Node mul(const Node& a, const Node& b) {
  require_same_shape(a, b, "mul");
  Tensor out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b.value()[i];
  return make_node(std::move(out), {a, b}, [](NodeData& self) {
    NodeData& na = *self.parents[0];
    NodeData& nb = *self.parents[1];
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      const double av = na.value[i];
      const double bv = nb.value[i];
      if (na.requires_grad) na.grad[i] += self.grad[i] * bv;
      if (nb.requires_grad) nb.grad[i] += self.grad[i] * av;
    }
  });
}

Node scale(const Node& x, double factor) {
  Tensor out = x.value();
  for (double& v : out.data()) v *= factor;
  return make_node(std::move(out), {x}, [factor](NodeData& self) {
    NodeData& in = *self.parents[0];
    for (std::size_t i = 0; i < self.grad.size(); ++i) in.grad[i] += self.grad[i] * factor;
  });
}

Node scale(const Node& x, const Node& s) {
  if (s.size() != 1) {
    throw DimensionError("scale: factor must have one element, got shape " +
                         shape_string(s.shape()));
  }
  const double factor = s.value()[0];
  Tensor out = x.value();
  for (double& v : out.data()) v *= factor;
  return make_node(std::move(out), {x, s}, [](NodeData& self) {
    NodeData& nx = *self.parents[0];
    NodeData& ns = *self.parents[1];
    const double factor = ns.value[0];
    double ds = 0.0;
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      const double xv = nx.value[i];
      if (nx.requires_grad) nx.grad[i] += self.grad[i] * factor;
      ds += self.grad[i] * xv;
    }
    if (ns.requires_grad) ns.grad[0] += ds;
  });
}

Node tanh(const Node& x) {
  return unary(
      x, [](double v) { return std::tanh(v); },
      [](double, double y) { return 1.0 - y * y; });
}

Node sigmoid(const Node& x) {
  return unary(
      x,
      [](double v) {
        // Split by sign so exp never overflows.
        if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
        const double e = std::exp(v);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Node relu(const Node& x) {
  return unary(
      x, [](double v) { return v > 0.0 ? v : 0.0; },
      [](double v, double) { return v > 0.0 ? 1.0 : 0.0; });
}

Node add_n(std::span<const Node> terms) {
  if (terms.empty()) throw DimensionError("add_n: no terms");
  Tensor out = terms[0].value();
  for (std::size_t t = 1; t < terms.size(); ++t) {
    require_same_shape(terms[0], terms[t], "add_n");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += terms[t].value()[i];
  }
  return make_node(std::move(out), std::vector<Node>(terms.begin(), terms.end()), [](NodeData& self) {
    for (auto& parent : self.parents) {
      if (!parent->requires_grad) continue;
      for (std::size_t i = 0; i < self.grad.size(); ++i) parent->grad[i] += self.grad[i];
    }
  });
}

Node sum(const Node& x) {
  double acc = 0.0;
  for (double v : x.value().data()) acc += v;
  return make_node(Tensor::scalar(acc), {x}, [](NodeData& self) {
    NodeData& in = *self.parents[0];
    for (double& g : in.grad.data()) g += self.grad[0];
  });
}

Node concat(std::span<const Node> parts) {
  if (parts.empty()) throw DimensionError("concat: no operands");
  std::vector<double> out;
  for (const Node& p : parts) {
    require_rank(p, 1, "concat");
    out.insert(out.end(), p.value().data().begin(), p.value().data().end());
  }
  return make_node(Tensor::vector(std::move(out)), std::vector<Node>(parts.begin(), parts.end()),
                   [](NodeData& self) {
                     std::size_t offset = 0;
                     for (auto& parent : self.parents) {
                       const std::size_t n = parent->value.size();
                       if (parent->requires_grad) {
                         for (std::size_t i = 0; i < n; ++i)
                           parent->grad[i] += self.grad[offset + i];
                       }
                       offset += n;
                     }
                   });
}

Node slice(const Node& x, std::size_t offset, std::size_t length) {
  require_rank(x, 1, "slice");
  if (length == 0 || offset + length > x.size()) {
    throw DimensionError("slice: [" + std::to_string(offset) + ", " +
                         std::to_string(offset + length) + ") outside " +
                         shape_string(x.shape()));
  }
  const auto& v = x.value().values();
  Tensor out = Tensor::vector(std::vector<double>(v.begin() + offset,
                                                  v.begin() + offset + length));
  return make_node(std::move(out), {x}, [offset](NodeData& self) {
    NodeData& in = *self.parents[0];
    for (std::size_t i = 0; i < self.grad.size(); ++i) in.grad[offset + i] += self.grad[i];
  });
}

Node row(const Node& m, std::size_t index) {
  require_rank(m, 2, "row");
  const std::size_t cols = m.value().cols();
  if (index >= m.value().rows()) {
    throw DimensionError("row: index " + std::to_string(index) + " outside " +
                         shape_string(m.shape()));
  }
  const auto& v = m.value().values();
  Tensor out = Tensor::vector(std::vector<double>(
      v.begin() + index * cols, v.begin() + (index + 1) * cols));
  return make_node(std::move(out), {m}, [index, cols](NodeData& self) {
    NodeData& in = *self.parents[0];
    for (std::size_t j = 0; j < cols; ++j) in.grad[index * cols + j] += self.grad[j];
  });
}

Node stack_rows(std::span<const Node> rows) {
  if (rows.empty()) throw DimensionError("stack_rows: no rows");
  const std::size_t cols = rows[0].size();
  std::vector<double> out;
  out.reserve(rows.size() * cols);
  for (const Node& r : rows) {
    require_rank(r, 1, "stack_rows");
    require_same_shape(rows[0], r, "stack_rows");
    out.insert(out.end(), r.value().data().begin(), r.value().data().end());
  }
  return make_node(Tensor::matrix(rows.size(), cols, std::move(out)),
                   std::vector<Node>(rows.begin(), rows.end()), [cols](NodeData& self) {
                     for (std::size_t r = 0; r < self.parents.size(); ++r) {
                       NodeData& in = *self.parents[r];
                       if (!in.requires_grad) continue;
                       for (std::size_t j = 0; j < cols; ++j)
                         in.grad[j] += self.grad[r * cols + j];
                     }
                   });
}

Node softmax(const Node& x) {
  require_rank(x, 1, "softmax");
  const auto& v = x.value().values();
  const double peak = *std::max_element(v.begin(), v.end());
  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - peak);
    total += out[i];
  }
  for (double& o : out) o /= total;
  return make_node(Tensor::vector(std::move(out)), {x}, [](NodeData& self) {
    NodeData& in = *self.parents[0];
    double inner = 0.0;
    for (std::size_t i = 0; i < self.grad.size(); ++i) inner += self.grad[i] * self.value[i];
    for (std::size_t i = 0; i < self.grad.size(); ++i)
      in.grad[i] += self.value[i] * (self.grad[i] - inner);
  });
}

Node cross_entropy(const Node& probs, std::size_t gold) {
  require_rank(probs, 1, "cross_entropy");
  if (gold >= probs.size()) {
    throw LabelError("cross_entropy: gold label " + std::to_string(gold) +
                     " outside " + std::to_string(probs.size()) + " classes");
  }
  const double p = std::max(probs.value()[gold], kMinProbability);
  return make_node(Tensor::scalar(-std::log(p)), {probs}, [gold](NodeData& self) {
    NodeData& in = *self.parents[0];
    const double pg = std::max(in.value[gold], kMinProbability);
    in.grad[gold] += -self.grad[0] / pg;
  });
}

Node dropout(const Node& x, double p, Rng& rng, bool train) {
  if (!train || p <= 0.0) return x;
  if (p >= 1.0) throw ContractError("dropout probability must be below 1");
  const double keep_scale = 1.0 / (1.0 - p);
  std::vector<double> mask(x.size());
  for (double& m : mask) m = rng.uniform() < p ? 0.0 : keep_scale;
  Tensor out = x.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= mask[i];
  return make_node(std::move(out), {x}, [mask = std::move(mask)](NodeData& self) {
    NodeData& in = *self.parents[0];
    for (std::size_t i = 0; i < self.grad.size(); ++i) in.grad[i] += self.grad[i] * mask[i];
  });
}

}  // namespace lexcomp::ad
