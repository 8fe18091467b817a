#ifndef SDC_AUTOGRAD_HPP
#define SDC_AUTOGRAD_HPP

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sdc/tensor.hpp"

namespace sdc {
namespace ag {

// Reverse-mode tape node. Parameters reference their tensor in the owning
// Params registry (no copy); intermediate nodes own their value.
template <typename T>
class Node {
 public:
  Tensor<T> owned;
  const Tensor<T>* external = nullptr;
  std::vector<std::shared_ptr<Node<T>>> parents;
  // Accumulates d(loss)/d(parent) into the per-parent grad tensors. A null
  // pointer means that parent does not require grad.
  std::function<void(const Tensor<T>& grad, const std::vector<Tensor<T>*>& pgrads)>
      backward;
  bool requires_grad = false;
  int leaf_id = -1;

  const Tensor<T>& val() const { return external ? *external : owned; }
};

template <typename T>
using NodePtr = std::shared_ptr<Node<T>>;

template <typename T>
class Var {
 public:
  Var() = default;
  explicit Var(NodePtr<T> n) : node(std::move(n)) {}

  static Var constant(Tensor<T> v) {
    auto n = std::make_shared<Node<T>>();
    n->owned = std::move(v);
    return Var(std::move(n));
  }

  // Differentiable leaf; grads are keyed by `leaf_id` in the GradStore.
  static Var leaf(const Tensor<T>& v, int leaf_id) {
    auto n = std::make_shared<Node<T>>();
    n->external = &v;
    n->requires_grad = true;
    n->leaf_id = leaf_id;
    return Var(std::move(n));
  }

  static Var leaf_frozen(const Tensor<T>& v) {
    auto n = std::make_shared<Node<T>>();
    n->external = &v;
    return Var(std::move(n));
  }

  const Tensor<T>& val() const { return node->val(); }
  bool defined() const { return node != nullptr; }
  bool requires_grad() const { return node && node->requires_grad; }

  NodePtr<T> node;
};

// Gradients keyed by leaf id.
template <typename T>
class GradStore {
 public:
  void accumulate(int id, const Tensor<T>& g) {
    auto it = grads_.find(id);
    if (it == grads_.end())
      grads_.emplace(id, g);
    else
      it->second.add_(g);
  }

  const Tensor<T>* find(int id) const {
    auto it = grads_.find(id);
    return it == grads_.end() ? nullptr : &it->second;
  }

  void add_store(const GradStore& other) {
    for (const auto& [id, g] : other.grads_) accumulate(id, g);
  }

  // Deterministic reduction: merge in ascending id order.
  void add_store_ordered(const GradStore& other) {
    std::vector<int> ids;
    ids.reserve(other.grads_.size());
    for (const auto& [id, g] : other.grads_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (int id : ids) accumulate(id, *other.find(id));
  }

  double global_norm() const {
    double s = 0.0;
    for (const auto& [id, g] : grads_) s += g.sum_sq();
    return std::sqrt(s);
  }

  void scale(T alpha) {
    for (auto& [id, g] : grads_) g.scale_(alpha);
  }

  std::unordered_map<int, Tensor<T>>& map() { return grads_; }
  const std::unordered_map<int, Tensor<T>>& map() const { return grads_; }

 private:
  std::unordered_map<int, Tensor<T>> grads_;
};

// Runs reverse-mode accumulation from a scalar root. Thread-safe across
// disjoint graphs (leaf tensors are only read).
template <typename T>
void backward(const Var<T>& root, GradStore<T>& store) {
  if (!root.defined()) throw ContractError("backward: undefined root");
  if (root.val().numel() != 1)
    throw ShapeError("backward: root must be a scalar");
  if (!root.node->requires_grad) return;

  // Iterative post-order topological sort.
  std::vector<Node<T>*> order;
  std::unordered_set<Node<T>*> done;
  std::vector<std::pair<Node<T>*, size_t>> stack;
  stack.emplace_back(root.node.get(), 0);
  while (!stack.empty()) {
    auto& [n, idx] = stack.back();
    if (!n->requires_grad || done.count(n)) {
      stack.pop_back();
      continue;
    }
    if (idx < n->parents.size()) {
      Node<T>* p = n->parents[idx].get();
      ++idx;
      if (p->requires_grad && !done.count(p)) stack.emplace_back(p, 0);
    } else {
      done.insert(n);
      order.push_back(n);
      stack.pop_back();
    }
  }

  std::unordered_map<Node<T>*, Tensor<T>> grads;
  grads.emplace(root.node.get(), Tensor<T>::full(root.val().shape, T(1)));

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node<T>* n = *it;
    auto git = grads.find(n);
    if (git == grads.end()) continue;
    Tensor<T> g = std::move(git->second);
    grads.erase(git);

    if (n->leaf_id >= 0) {
      store.accumulate(n->leaf_id, g);
      continue;
    }
    if (!n->backward) continue;

    std::vector<Tensor<T>*> pgrads(n->parents.size(), nullptr);
    for (size_t i = 0; i < n->parents.size(); ++i) {
      Node<T>* p = n->parents[i].get();
      if (!p->requires_grad) continue;
      auto pit = grads.find(p);
      if (pit == grads.end())
        pit = grads.emplace(p, Tensor<T>::zeros(p->val().shape)).first;
      pgrads[i] = &pit->second;
    }
    n->backward(g, pgrads);
  }
}

// Helper shared by all op constructors.
template <typename T>
NodePtr<T> make_node(Tensor<T> value, std::vector<NodePtr<T>> parents) {
  auto n = std::make_shared<Node<T>>();
  n->owned = std::move(value);
  n->parents = std::move(parents);
  for (const auto& p : n->parents)
    if (p->requires_grad) n->requires_grad = true;
  return n;
}

}  // namespace ag
}  // namespace sdc

#endif  // SDC_AUTOGRAD_HPP
