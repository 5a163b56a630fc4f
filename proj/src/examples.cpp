#include "centext/examples.hpp"

namespace centext {

Cocycle carry_example_cocycle(const Int& p) { return carry_cocycle(p, p); }

Cocycle class2_example_cocycle(const Int& p) {
  if (p < 2) throw std::invalid_argument("class2_example_cocycle: p must be >= 2");
  AbelianGroup a({p, p, p}), b({p});
  const long n = to_long(a.order(), "class2_example_cocycle");
  auto elems = a.elements();
  IntMat table(Index(n) * Index(n), 1);
  for (long x = 0; x < n; ++x) {
    const auto& u = elems[static_cast<size_t>(x)].coords;
    for (long y = 0; y < n; ++y) {
      const auto& v = elems[static_cast<size_t>(y)].coords;
      table(Index(x) * n + y, 0) = mod(-v[0] * u[1] + floor_div(u[2] + v[2], p), p);
    }
  }
  return Cocycle(a, b, std::move(table));
}

}  // namespace centext
