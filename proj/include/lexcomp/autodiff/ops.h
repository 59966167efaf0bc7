#ifndef LEXCOMP_AUTODIFF_OPS_H_
#define LEXCOMP_AUTODIFF_OPS_H_

#include <cstddef>
#include <span>

#include "lexcomp/autodiff/node.h"
#include "lexcomp/rng.h"

namespace lexcomp::ad {

// Linear algebra.
Node matmul(const Node& a, const Node& b);   // [m x k] * [k x n] -> [m x n]
Node matvec(const Node& w, const Node& x);   // [m x k] * [k] -> [m]
Node transpose(const Node& a);               // [m x n] -> [n x m]
Node dot(const Node& a, const Node& b);      // [n] . [n] -> [1]

// Elementwise, operands of identical shape.
Node add(const Node& a, const Node& b);
Node mul(const Node& a, const Node& b);
Node scale(const Node& x, double factor);
// Multiplies every entry of x by the single-element node s.
Node scale(const Node& x, const Node& s);
Node tanh(const Node& x);
Node sigmoid(const Node& x);
Node relu(const Node& x);

// Sum of same-shaped nodes.
Node add_n(std::span<const Node> terms);
// Sum of all entries -> [1].
Node sum(const Node& x);

// Structure. Vectors only for concat/slice.
Node concat(std::span<const Node> parts);
Node slice(const Node& x, std::size_t offset, std::size_t length);
Node row(const Node& m, std::size_t index);
Node stack_rows(std::span<const Node> rows);

// Max-subtracted softmax over a vector.
Node softmax(const Node& x);

// -ln(probs[gold]) for a probability vector (already softmax-normalized).
Node cross_entropy(const Node& probs, std::size_t gold);

// Inverted dropout: in training mode each entry is zeroed with probability p
// and survivors are scaled by 1/(1-p); identity otherwise.
Node dropout(const Node& x, double p, Rng& rng, bool train);

}  // namespace lexcomp::ad

#endif  // LEXCOMP_AUTODIFF_OPS_H_
