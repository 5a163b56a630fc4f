#pragma once

#include "centext/cocycle.hpp"

// Built-in example extensions: the carry extension of Z/p by Z/p (the cyclic
// group of order p^2) and the class-2 group of order p^4 presented by
// < x, y, z | x^p = y^p = [x,y]^p = e, [x,y] central, [x,z] = [y,z] = e,
//   z^p = [x,y] >, realized as a cocycle on (Z/p)^3 with values in Z/p via
// the transversal (a, b, c) |-> x^a y^b z^c.

namespace centext {

/// carry_cocycle(p, p); the extension group is cyclic of order p^2.
Cocycle carry_example_cocycle(const Int& p);

/// gamma((a,b,c), (a',b',c')) = (-a'b + floor((c+c')/p)) mod p on (Z/p)^3
/// with values in Z/p.
Cocycle class2_example_cocycle(const Int& p);

}  // namespace centext
