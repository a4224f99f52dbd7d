// Staggered node/cell difference operators on Array2, OpenMP-parallel over rows.
//
// A node array of shape (mx, my) maps to a cell array of shape (mx-1, my-1);
// cell (i, j) has corners SW = (i, j), SE = (i+1, j), NW = (i, j+1), NE = (i+1, j+1).
// A cell array of shape (mx, my) maps to the (mx-1, my-1) nodes strictly inside
// it; output node (i, j) sits between cells SW = (i, j) and NE = (i+1, j+1).
// Both directions use the same compact 2x2 stencil,
//   d1 f = (f_NE + f_SE - f_NW - f_SW) / 2h,   d2 f = (f_NE + f_NW - f_SE - f_SW) / 2h,
// so d1 and d2 commute and the discrete curl of a discrete gradient vanishes.
#pragma once

#include "antiplane/grid.hpp"

namespace antiplane::stencil {

enum class Op { D1, D2, Average };

/// Applies op with the compact 2x2 stencil; output shape (mx-1, my-1).
Array2 apply(const Array2& in, Op op, double h);

inline Array2 d1(const Array2& in, double h) { return apply(in, Op::D1, h); }
inline Array2 d2(const Array2& in, double h) { return apply(in, Op::D2, h); }
inline Array2 average(const Array2& in) { return apply(in, Op::Average, 1.0); }

/// sqrt(h^2 * sum a^2), summed per row then across rows in fixed order.
double l2_norm(const Array2& a, double h);

/// Row-partitioned deterministic sum of all entries.
double deterministic_sum(const Array2& a);

double max_abs(const Array2& a);

/// a - b, shapes must match.
Array2 subtract(const Array2& a, const Array2& b);

}  // namespace antiplane::stencil
