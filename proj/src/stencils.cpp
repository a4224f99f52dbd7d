#include "antiplane/stencils.hpp"

#include <algorithm>
#include <cmath>

namespace antiplane::stencil {

Array2 apply(const Array2& in, Op op, double h) {
  if (in.nx < 2 || in.ny < 2) throw ContractViolation("stencil input needs at least 2x2 entries");
  Array2 out(in.nx - 1, in.ny - 1);
  const double s = (op == Op::Average) ? 0.25 : 0.5 / h;
  const int mx = out.nx;
  const int my = out.ny;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < my; ++j) {
    for (int i = 0; i < mx; ++i) {
      const double sw = in(i, j);
      const double se = in(i + 1, j);
      const double nw = in(i, j + 1);
      const double ne = in(i + 1, j + 1);
      double v = 0.0;
      switch (op) {
        case Op::D1: v = (ne + se) - (nw + sw); break;
        case Op::D2: v = (ne + nw) - (se + sw); break;
        case Op::Average: v = (ne + se) + (nw + sw); break;
      }
      out(i, j) = s * v;
    }
  }
  return out;
}

double l2_norm(const Array2& a, double h) {
  std::vector<double> rows(static_cast<std::size_t>(a.ny), 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < a.ny; ++j) {
    double acc = 0.0;
    for (int i = 0; i < a.nx; ++i) acc += a(i, j) * a(i, j);
    rows[j] = acc;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return h * std::sqrt(total);
}

double deterministic_sum(const Array2& a) {
  std::vector<double> rows(static_cast<std::size_t>(a.ny), 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < a.ny; ++j) {
    double acc = 0.0;
    for (int i = 0; i < a.nx; ++i) acc += a(i, j);
    rows[j] = acc;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

double max_abs(const Array2& a) {
  double m = 0.0;
  for (double v : a.data) m = std::max(m, std::abs(v));
  return m;
}

Array2 subtract(const Array2& a, const Array2& b) {
  if (a.nx != b.nx || a.ny != b.ny) throw ContractViolation("array shape mismatch");
  Array2 out(a.nx, a.ny);
  for (std::size_t k = 0; k < a.data.size(); ++k) out.data[k] = a.data[k] - b.data[k];
  return out;
}

}  // namespace antiplane::stencil
