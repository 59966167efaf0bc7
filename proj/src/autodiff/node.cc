#include "lexcomp/autodiff/node.h"

#include <unordered_set>

#include "lexcomp/errors.h"

namespace lexcomp::ad {

double Node::item() const {
  if (size() != 1) {
    throw ContractError("item() on non-scalar node of shape " +
                        shape_string(shape()));
  }
  return value()[0];
}

Node constant(Tensor value) {
  auto data = std::make_shared<detail::NodeData>();
  data->grad = Tensor::zeros(value.shape());
  data->value = std::move(value);
  return Node(std::move(data));
}

Node variable(Tensor value) {
  Node node = constant(std::move(value));
  node.data()->requires_grad = true;
  return node;
}

Node make_node(Tensor value, std::vector<Node> parents,
               std::function<void(detail::NodeData&)> backward_fn) {
  auto data = std::make_shared<detail::NodeData>();
  data->grad = Tensor::zeros(value.shape());
  data->value = std::move(value);
  for (const Node& p : parents) {
    if (p.requires_grad()) data->requires_grad = true;
  }
  if (data->requires_grad) {
    data->parents.reserve(parents.size());
    for (const Node& p : parents) data->parents.push_back(p.data());
    data->backward_fn = std::move(backward_fn);
  }
  return Node(std::move(data));
}

void backward(const Node& loss) {
  if (loss.size() != 1) {
    throw ContractError("backward() needs a scalar loss, got shape " +
                        shape_string(loss.shape()));
  }
  if (!loss.requires_grad()) return;

  // Iterative post-order DFS gives a topological order (inputs first).
  std::vector<detail::NodeData*> order;
  std::unordered_set<detail::NodeData*> visited;
  std::vector<std::pair<detail::NodeData*, std::size_t>> stack;
  stack.emplace_back(loss.data().get(), 0);
  visited.insert(loss.data().get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      detail::NodeData* parent = node->parents[next++].get();
      if (parent->requires_grad && visited.insert(parent).second) {
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  for (detail::NodeData* node : order) {
    if (!node->parents.empty()) node->grad.fill(0.0);
  }
  loss.data()->grad[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    detail::NodeData* node = *it;
    if (node->backward_fn) node->backward_fn(*node);
  }
}

}  // namespace lexcomp::ad
