#ifndef LEXCOMP_AUTODIFF_NODE_H_
#define LEXCOMP_AUTODIFF_NODE_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lexcomp/autodiff/tensor.h"

namespace lexcomp::ad {
namespace detail {

struct NodeData {
  Tensor value;
  Tensor grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<NodeData>> parents;
  // Reads this node's grad and accumulates into the parents' grads.
  std::function<void(NodeData&)> backward_fn;
};

}  // namespace detail

// Handle to a vertex of a define-by-run computation graph. Copies share the
// same vertex. Values are fixed at construction; only grads change.
class Node {
 public:
  Node() = default;
  explicit Node(std::shared_ptr<detail::NodeData> data) : data_(std::move(data)) {}

  const Tensor& value() const { return data_->value; }
  const Tensor& grad() const { return data_->grad; }
  const Shape& shape() const { return data_->value.shape(); }
  std::size_t size() const { return data_->value.size(); }
  bool requires_grad() const { return data_->requires_grad; }
  bool is_leaf() const { return data_->parents.empty(); }
  double item() const;

  void zero_grad() { data_->grad.fill(0.0); }

  explicit operator bool() const { return data_ != nullptr; }
  const std::shared_ptr<detail::NodeData>& data() const { return data_; }

 private:
  std::shared_ptr<detail::NodeData> data_;
};

// Leaf holding a fixed input; never receives gradients.
Node constant(Tensor value);

// Leaf that receives gradients.
Node variable(Tensor value);

// Internal: builds a node from its value, inputs and backward rule. The rule
// is dropped when no input requires a gradient.
Node make_node(Tensor value, std::vector<Node> parents,
               std::function<void(detail::NodeData&)> backward_fn);

// Reverse pass from a single-element loss. Gradients of trainable leaves
// accumulate across calls; interior gradients are recomputed each call.
void backward(const Node& loss);

// Named trainable tensor owned by a model.
class Parameter {
 public:
  Parameter() = default;
  Parameter(std::string name, Tensor init)
      : name_(std::move(name)), node_(variable(std::move(init))) {}

  const std::string& name() const { return name_; }
  const Node& node() const { return node_; }
  const Tensor& value() const { return node_.value(); }
  const Tensor& grad() const { return node_.grad(); }

  // Optimizer-side access; graph operations never mutate values.
  Tensor& mutable_value() { return node_.data()->value; }
  Tensor& mutable_grad() { return node_.data()->grad; }
  void zero_grad() { node_.zero_grad(); }

 private:
  std::string name_;
  Node node_;
};

}  // namespace lexcomp::ad

#endif  // LEXCOMP_AUTODIFF_NODE_H_
