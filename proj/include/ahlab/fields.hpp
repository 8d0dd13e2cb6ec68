#pragma once

#include <span>
#include <vector>

#include "ahlab/jetlinalg.hpp"

namespace ah {

/// Vector fields on a chart, stored as per-coordinate complex jet
/// components. Helpers shared by the frame and manifold modules.

/// [X,Y]^a = sum_b X^b d_b Y^a - Y^b d_b X^a ; output order is one less
/// than the minimum input order.
std::vector<Jet> field_bracket(std::span<const Jet> X, std::span<const Jet> Y);

/// (M v)^a = sum_b M[a*dim+b] v^b, truncated to `order`.
std::vector<Jet> matrix_apply(const JetMatrix& M, std::span<const Jet> v,
                              int order);

std::vector<Jet> field_conj(std::span<const Jet> v);

std::vector<Jet> truncate_field(std::span<const Jet> v, int order);

}  // namespace ah
